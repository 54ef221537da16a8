#pragma once

#include <vector>

#include "filicoh/cohomology.hpp"

namespace filicoh {

/// Dual coordinates (α)^{jk} of an adjoint 1-cochain on a simple algebra:
/// A^{jk} = ε_{S k} α^j(S) where S is the increasing complement of k.
QMatrix dual_coordinates(const Cochain& c);

/// Inverse of dual_coordinates.
Cochain from_dual_coordinates(const ComplexPtr& cx, const QMatrix& dual);

struct CocycleSymmetry {
  bool is_cocycle = false;
  bool is_symmetric = false;
};

CocycleSymmetry cocycle_symmetry_test(const Cochain& c);

/// Global sign of the simple trivializers, calibrated once per (action, n,
/// signature) against δ on a spanning set of cocycles.
int trivializer_sign(Action action, const std::vector<int>& signature);

/// β with δβ = c for a trivial-action 1-cocycle on a simple algebra.
Cochain trivialize_trivial_simple(const Cochain& c);

/// β with δβ = c for an adjoint 1-cocycle on a simple algebra.
Cochain trivialize_adjoint_simple(const Cochain& c);

/// β with δβ = c for a 1-cocycle on a direct sum of simple algebras.
Cochain trivialize_semisimple(const Cochain& c);

}  // namespace filicoh
