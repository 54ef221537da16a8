#pragma once

#include <optional>
#include <vector>

#include "filicoh/fundamental.hpp"

namespace filicoh {

/// Tr(ad_X ad_Y) for wedge-mode fundamental objects.
Rational kasymov_form(const Algebra& a, const FundamentalVector& x, const FundamentalVector& y);

struct KasymovReport {
  bool nondegenerate = false;
  std::optional<QVector> witness;  ///< nonzero Z with k(Z, ...) = 0 for every filler
  std::size_t fillers = 0;         ///< number of (x_2..x_{n-1}, y) filler combinations
};

/// Nondegeneracy of k(Z, x_2..x_{n-1}, y_1..y_{n-1}) in the first slot.
KasymovReport kasymov_nondegenerate(const Algebra& a);

struct GramReport {
  QMatrix matrix;
  std::size_t rank = 0;
  std::size_t nullity = 0;
  std::vector<FundamentalVector> null_basis;
  bool is_diagonal = false;
};

/// The form k on the canonical basis of the (n-1)-fold wedge power.
GramReport wedge_gram_matrix(const Algebra& a);

}  // namespace filicoh
