#pragma once

#include <string>

#include "json.hpp"

#include "filicoh/algebra.hpp"
#include "filicoh/cohomology.hpp"
#include "filicoh/extdef.hpp"
#include "filicoh/fundamental.hpp"
#include "filicoh/killing.hpp"

namespace filicoh {

using Json = nlohmann::json;

// JSON indices are 1-based; ideals are inclusive [lo, hi] ranges.

/// Writes "num" and "den" into obj; values beyond 64 bits are decimal strings.
void put_rational(Json& obj, const Rational& q);
Rational get_rational(const Json& obj);
Json rational_json(const Rational& q);

Json to_json(const Algebra& a);
Algebra algebra_from_json(const Json& j);

Json to_json(const NLeibnizAlgebra& l);
NLeibnizAlgebra leibniz_from_json(const Json& j);

Json to_json(const Cochain& c);
/// Reads a cochain on the given algebra; the complex is built from its action.
Cochain cochain_from_json(const Json& j, const Algebra& a);

/// Algebra format with "coeffs": [c0, c1, ...] per entry and an "order" field.
Json to_json(const Deformation& d);
Deformation deformation_from_json(const Json& j);

Json to_json(const FIReport& r);
Json to_json(const GramReport& r);
Json to_json(const KasymovReport& r);
Json to_json(const CohomologyDims& d);
Json to_json(const QVector& v);
Json to_json(const QMatrix& m);

/// Parses text, reporting malformed JSON as InputError.
Json parse_json(const std::string& text);
/// Canonical compact serialization (sorted keys).
std::string dump(const Json& j);

}  // namespace filicoh
