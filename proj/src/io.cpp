#include "filicoh/io.hpp"

#include <limits>
#include <set>

namespace filicoh {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

long long as_int(const Json& v, const char* what) {
  if (!v.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return v.get<long long>();
}

int as_small(const Json& v, const char* what) {
  const long long x = as_int(v, what);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw InputError(std::string(what) + " is out of range");
  return static_cast<int>(x);
}

mpz_class as_mpz(const Json& v, const char* what) {
  if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    mpz_class z;
    if (z.set_str(v.get<std::string>(), 10) != 0) throw InputError(std::string(what) + " is not a decimal integer");
    return z;
  }
  throw InputError(std::string(what) + " must be an integer or a decimal string");
}

Json mpz_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(static_cast<long long>(z.get_si()));
  return Json(z.get_str());
}

/// 1-based index list to 0-based, checking the range.
MultiIndex indices(const Json& v, int d, const char* what) {
  if (!v.is_array()) throw InputError(std::string(what) + " must be an array");
  MultiIndex out;
  for (const auto& x : v) {
    const int i = as_small(x, what);
    if (i < 1 || i > d) throw InputError(std::string(what) + " entry out of range");
    out.push_back(i - 1);
  }
  return out;
}

Json one_based(const MultiIndex& idx) {
  Json out = Json::array();
  for (int i : idx) out.push_back(i + 1);
  return out;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

void put_header(Json& j, const Algebra& a) {
  j["n"] = a.n();
  j["dim"] = a.dim();
  j["basis"] = a.basis_names();
  if (a.signature()) j["signature"] = *a.signature();
  if (a.ideals()) {
    Json ideals = Json::array();
    for (const auto& r : *a.ideals()) ideals.push_back(Json::array({r.lo + 1, r.hi}));
    j["ideals"] = ideals;
  }
}

/// Empty algebra with n, dim, basis, signature and ideals from the header.
Algebra read_header(const Json& j) {
  const int n = as_small(field(j, "n"), "n");
  const int d = as_small(field(j, "dim"), "dim");
  if (n < 2 || d < 1) throw InputError("invalid arity or dimension");
  if (d > 64 || binomial(d, n) > 1000000) throw InputError("algebra too large");
  Algebra a(n, d);
  if (j.contains("basis")) {
    std::vector<std::string> names;
    for (const auto& s : j.at("basis")) {
      if (!s.is_string()) throw InputError("basis names must be strings");
      names.push_back(s.get<std::string>());
    }
    a.set_basis_names(std::move(names));
  }
  if (j.contains("signature") && !j.at("signature").is_null()) {
    std::vector<int> sig;
    for (const auto& s : j.at("signature")) {
      const int v = as_small(s, "signature entry");
      if (v != 1 && v != -1) throw InputError("signature entries must be +1 or -1");
      sig.push_back(v);
    }
    if (static_cast<int>(sig.size()) != d) throw InputError("signature length differs from dimension");
    a.set_signature(std::move(sig));
  }
  if (j.contains("ideals") && !j.at("ideals").is_null()) {
    std::vector<IndexRange> blocks;
    for (const auto& r : j.at("ideals")) {
      if (!r.is_array() || r.size() != 2) throw InputError("ideal must be a [lo, hi] pair");
      const int lo = as_small(r[0], "ideal bound");
      const int hi = as_small(r[1], "ideal bound");
      blocks.push_back({lo - 1, hi});
    }
    a.set_ideals(std::move(blocks));
  }
  return a;
}

MultiIndex strict_idx(const Json& e, int n, int d) {
  MultiIndex idx = indices(field(e, "idx"), d, "idx");
  if (static_cast<int>(idx.size()) != n) throw InputError("idx must have n entries");
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] <= idx[i - 1]) throw InputError("idx must be strictly increasing");
  return idx;
}

int target_of(const Json& e, int d) {
  const int t = as_small(field(e, "target"), "target");
  if (t < 1 || t > d) throw InputError("target out of range");
  return t - 1;
}

}  // namespace

void put_rational(Json& obj, const Rational& q) {
  obj["num"] = mpz_json(q.numerator());
  obj["den"] = mpz_json(q.denominator());
}

Rational get_rational(const Json& obj) {
  const mpz_class num = as_mpz(field(obj, "num"), "num");
  const mpz_class den = obj.contains("den") ? as_mpz(obj.at("den"), "den") : mpz_class(1);
  if (den == 0) throw InputError("zero denominator");
  return Rational(num, den);
}

Json rational_json(const Rational& q) {
  Json j = Json::object();
  put_rational(j, q);
  return j;
}

Json to_json(const Algebra& a) {
  Json j;
  put_header(j, a);
  Json f = Json::array();
  for (std::size_t k = 0; k < a.wedge().size(); ++k)
    for (const auto& [b, v] : a.constants(k)) {
      Json e;
      e["idx"] = one_based(a.wedge()[k]);
      e["target"] = b + 1;
      put_rational(e, v);
      f.push_back(e);
    }
  j["f"] = f;
  return j;
}

Algebra algebra_from_json(const Json& j) {
  return guarded([&] {
    if (j.contains("antisymmetric") && j.at("antisymmetric") == false)
      throw InputError("expected an n-Lie algebra, got a Leibniz tensor");
    Algebra a = read_header(j);
    const Json& f = field(j, "f");
    if (!f.is_array()) throw InputError("f must be an array");
    std::set<std::pair<MultiIndex, int>> seen;
    for (const auto& e : f) {
      MultiIndex idx = strict_idx(e, a.n(), a.dim());
      const int t = target_of(e, a.dim());
      if (!seen.emplace(idx, t).second) throw InputError("duplicate structure constant");
      a.set_constant(idx, t, get_rational(e));
    }
    return a;
  });
}

Json to_json(const NLeibnizAlgebra& l) {
  Json j;
  j["n"] = l.n();
  j["dim"] = l.dim();
  j["basis"] = l.basis_names();
  j["antisymmetric"] = false;
  Json f = Json::array();
  for (std::size_t k = 0; k < l.tuples().size(); ++k)
    for (const auto& [b, v] : l.constants(k)) {
      Json e;
      e["idx"] = one_based(l.tuples()[k]);
      e["target"] = b + 1;
      put_rational(e, v);
      f.push_back(e);
    }
  j["f"] = f;
  return j;
}

NLeibnizAlgebra leibniz_from_json(const Json& j) {
  return guarded([&] {
    const int n = as_small(field(j, "n"), "n");
    const int d = as_small(field(j, "dim"), "dim");
    if (n < 2 || d < 1) throw InputError("invalid arity or dimension");
    double tuples = 1;
    for (int i = 0; i < n; ++i) tuples *= d;
    if (tuples > 1e6) throw InputError("algebra too large");
    NLeibnizAlgebra l(n, d);
    if (j.contains("basis")) {
      std::vector<std::string> names;
      for (const auto& s : j.at("basis")) names.push_back(s.get<std::string>());
      l.set_basis_names(std::move(names));
    }
    for (const auto& e : field(j, "f")) {
      const MultiIndex idx = indices(field(e, "idx"), d, "idx");
      if (static_cast<int>(idx.size()) != n) throw InputError("idx must have n entries");
      l.set_constant(idx, target_of(e, d), get_rational(e));
    }
    return l;
  });
}

Json to_json(const Cochain& c) {
  const CochainComplex& cx = *c.complex;
  const int vd = cx.value_dim();
  const auto d = static_cast<std::size_t>(cx.dim());
  const std::size_t nw = cx.blocks().size();
  Json j;
  j["action"] = to_string(c.action());
  j["p"] = c.p;
  if (c.layout == Layout::Raw) j["layout"] = "raw";
  Json entries = Json::array();
  for (Eigen::Index k = 0; k < c.coeffs.size(); ++k) {
    const Rational& v = c.coeffs(k);
    if (v.is_zero()) continue;
    CochainComplex::Decoded dec;
    if (c.layout == Layout::Packed) {
      dec = cx.decode(c.p, static_cast<std::size_t>(k));
    } else {
      std::size_t base = static_cast<std::size_t>(k) / static_cast<std::size_t>(vd);
      dec.value = static_cast<int>(static_cast<std::size_t>(k) % static_cast<std::size_t>(vd));
      dec.z = static_cast<int>(base % d);
      base /= d;
      dec.blocks.resize(static_cast<std::size_t>(c.p));
      for (int i = c.p - 1; i >= 0; --i) {
        dec.blocks[static_cast<std::size_t>(i)] = cx.blocks()[base % nw];
        base /= nw;
      }
    }
    Json e;
    Json blocks = Json::array();
    for (const auto& b : dec.blocks) blocks.push_back(one_based(b));
    e["blocks"] = blocks;
    e["z"] = dec.z + 1;
    if (c.action() == Action::Adjoint) e["value_index"] = dec.value + 1;
    put_rational(e, v);
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j;
}

Cochain cochain_from_json(const Json& j, const Algebra& a) {
  return guarded([&] {
    const Json& act = field(j, "action");
    if (!act.is_string()) throw InputError("action must be a string");
    const Action action = parse_action(act.get<std::string>());
    const int p = as_small(field(j, "p"), "p");
    Layout layout = Layout::Packed;
    if (j.contains("layout")) {
      if (j.at("layout") == "raw")
        layout = Layout::Raw;
      else if (j.at("layout") != "packed")
        throw InputError("layout must be 'packed' or 'raw'");
    }
    if (p < 0 || p > 2 || (layout == Layout::Raw && p == 0)) throw InputError("unsupported cochain degree");
    const auto cx = make_complex(a, action);
    Cochain c = Cochain::zero(cx, p, layout);
    const Json& entries = field(j, "entries");
    if (!entries.is_array()) throw InputError("entries must be an array");
    for (const auto& e : entries) {
      const Json& bl = field(e, "blocks");
      if (!bl.is_array() || static_cast<int>(bl.size()) != p) throw InputError("entry must have p blocks");
      std::vector<MultiIndex> blocks;
      for (const auto& b : bl) {
        MultiIndex idx = indices(b, a.dim(), "block");
        if (static_cast<int>(idx.size()) != a.n() - 1) throw InputError("blocks must have n-1 entries");
        blocks.push_back(std::move(idx));
      }
      const int z = as_small(field(e, "z"), "z");
      if (z < 1 || z > a.dim()) throw InputError("z out of range");
      int value = 0;
      if (action == Action::Adjoint) {
        value = as_small(field(e, "value_index"), "value_index") - 1;
        if (value < 0 || value >= a.dim()) throw InputError("value_index out of range");
      } else if (e.contains("value_index") && as_small(e.at("value_index"), "value_index") != 1) {
        throw InputError("trivial cochains are scalar valued");
      }
      const Rational v = get_rational(e);
      const Rational before = c.value(blocks, z - 1)(value);
      if (!before.is_zero() && before != v) throw InputError("conflicting cochain entries");
      c.set(blocks, z - 1, value, v);
    }
    return c;
  });
}

Json to_json(const Deformation& def) {
  Json j;
  put_header(j, def.base);
  j["order"] = def.order;
  Json f = Json::array();
  const auto& s = def.bracket;
  for (std::size_t k = 0; k < s.wedge().size(); ++k)
    for (const auto& [b, v] : s.constants(k)) {
      Json e;
      e["idx"] = one_based(s.wedge()[k]);
      e["target"] = b + 1;
      Json coeffs = Json::array();
      for (int o = 0; o <= def.order; ++o) coeffs.push_back(rational_json(v[static_cast<std::size_t>(o)]));
      e["coeffs"] = coeffs;
      f.push_back(e);
    }
  j["f"] = f;
  return j;
}

Deformation deformation_from_json(const Json& j) {
  return guarded([&] {
    Algebra base = read_header(j);
    const int order = as_small(field(j, "order"), "order");
    if (order < 1 || order > 2) throw InputError("deformation order must be 1 or 2");
    const int n = base.n();
    const int d = base.dim();
    std::vector<std::tuple<MultiIndex, int, Rational, Rational>> higher;
    std::set<std::pair<MultiIndex, int>> seen;
    for (const auto& e : field(j, "f")) {
      MultiIndex idx = strict_idx(e, n, d);
      const int t = target_of(e, d);
      const Json& coeffs = field(e, "coeffs");
      if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != order + 1)
        throw InputError("coeffs must list order+1 coefficients");
      const Rational c0 = get_rational(coeffs[0]);
      if (!seen.emplace(idx, t).second) throw InputError("duplicate structure constant");
      base.set_constant(idx, t, c0);
      higher.emplace_back(idx, t, get_rational(coeffs[1]), order == 2 ? get_rational(coeffs[2]) : Rational(0));
    }
    const auto cx = make_complex(base, Action::Adjoint);
    Cochain a1 = Cochain::zero(cx, 1);
    Cochain a2 = Cochain::zero(cx, 1);
    bool has_second = false;
    for (const auto& [idx, t, c1, c2] : higher) {
      const std::vector<MultiIndex> blocks{MultiIndex(idx.begin(), idx.end() - 1)};
      a1.set(blocks, idx.back(), t, c1);
      a2.set(blocks, idx.back(), t, c2);
      if (!c2.is_zero()) has_second = true;
    }
    return deform(base, a1, order, has_second ? std::optional<Cochain>(a2) : std::nullopt);
  });
}

Json to_json(const QVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(rational_json(v(i)));
  return out;
}

Json to_json(const QMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(QVector(m.row(i).transpose())));
  return out;
}

Json to_json(const FIReport& r) {
  Json j;
  j["passed"] = r.passed;
  j["checked"] = r.checked;
  j["failures"] = r.failures;
  if (r.witness) {
    Json w;
    w["x"] = one_based(r.witness->x);
    w["y"] = one_based(r.witness->y);
    w["residual"] = to_json(r.witness->residual);
    j["witness"] = w;
  }
  return j;
}

Json to_json(const GramReport& r) {
  Json j;
  j["matrix"] = to_json(r.matrix);
  j["rank"] = r.rank;
  j["nullity"] = r.nullity;
  j["is_diagonal"] = r.is_diagonal;
  Json nulls = Json::array();
  for (const auto& v : r.null_basis) nulls.push_back(to_json(v.coords));
  j["null_basis"] = nulls;
  return j;
}

Json to_json(const KasymovReport& r) {
  Json j;
  j["nondegenerate"] = r.nondegenerate;
  j["fillers"] = r.fillers;
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

Json to_json(const CohomologyDims& d) {
  return Json{{"dimZ", d.dim_z}, {"dimB", d.dim_b}, {"dimH", d.dim_h}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace filicoh
