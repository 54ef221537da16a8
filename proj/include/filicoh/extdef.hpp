#pragma once

#include <optional>
#include <vector>

#include "filicoh/cohomology.hpp"
#include "filicoh/truncated.hpp"

namespace filicoh {

/// Extension by one central generator Ξ (basis index d of the extended algebra).
struct CentralExtension {
  Algebra base;
  Cochain cocycle;
  Algebra extended;
  FIReport fi;
};

CentralExtension central_extend(const Algebra& a, const Cochain& c);

struct ExtensionTrivialization {
  bool success = false;
  /// Brackets in the basis e'_k = e_k − β_k Ξ, Ξ' = Ξ.
  Algebra transformed;
  /// Ξ' component of [e'_S] on each canonical n-subset, as a trivial 1-cochain.
  Cochain residual;
};

ExtensionTrivialization trivialize_extension(const CentralExtension& ext, const Cochain& beta);

using SeriesAlgebra = NLieAlgebra<Series2>;

/// Structure constants f + t α¹ (+ t² α²) over Q[t]/(t^{order+1}).
struct Deformation {
  Algebra base;
  int order = 1;
  Cochain alpha1;
  std::optional<Cochain> alpha2;
  SeriesAlgebra bracket;
};

Deformation deform(const Algebra& a, const Cochain& alpha1, int order = 1, std::optional<Cochain> alpha2 = std::nullopt);

/// FI residual split by powers of t: entry k reports the t^k coefficient for
/// k = 0..order.
std::vector<FIReport> fi_residual_orders(const Deformation& def);

struct DeformationTrivialization {
  bool success = false;
  /// Brackets in the basis e'_k = e_k − t β(e_k), reduced mod t².
  SeriesAlgebra transformed;
  /// t-coefficient of the transformed constants minus the base ones.
  Cochain residual;
};

DeformationTrivialization trivialize_deformation(const Deformation& def, const Cochain& beta);

struct ObstructionReport {
  Cochain gamma;
  bool gamma_closed = false;
  /// Set when requested: whether some α² cancels γ, and one such α².
  std::optional<bool> extends;
  std::optional<Cochain> alpha2;
};

/// γ is the t² coefficient of the FI residual of f + t c, stored as a packed
/// adjoint 2-cochain at (x, y minus its last entry, last entry of y).
ObstructionReport obstruction_cocycle(const Algebra& a, const Cochain& c, bool solve_extension = false);

/// Obstructions for several cocycles at once, with δγ checked together.
std::vector<ObstructionReport> obstruction_cocycles(const Algebra& a, const std::vector<Cochain>& cs);

}  // namespace filicoh
