#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace filicoh {

using MultiIndex = std::vector<int>;

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
std::size_t binomial(int n, int k);

/// Levi-Civita symbol: 0 on a repeated index, otherwise the sign of the
/// permutation that sorts the tuple. Works with any index base.
int epsilon(std::span<const int> indices);

struct WedgeTerm {
  std::optional<MultiIndex> canonical;  ///< empty when the wedge is degenerate
  int sign = 0;
};

/// Sorts a tuple of basis indices and returns the sign of the sort (0 on repeats).
WedgeTerm wedge_expand(std::span<const int> indices);

enum class BasisMode { Wedge, Tensor };

/// Ordered basis of k-blocks over a d-dimensional space.
///
/// Wedge mode lists strictly increasing multi-indices in lexicographic order
/// (C(d,k) elements); tensor mode lists all d^k tuples in row-major order.
/// Indices are 0-based.
class MultiIndexBasis {
 public:
  MultiIndexBasis() = default;
  MultiIndexBasis(int d, int k, BasisMode mode);

  int dim() const { return d_; }
  int block() const { return k_; }
  BasisMode mode() const { return mode_; }
  std::size_t size() const { return elements_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<MultiIndex>& elements() const { return elements_; }

  /// Index of a canonical multi-index (sorted and repeat-free in wedge mode).
  std::optional<std::size_t> index_of(std::span<const int> canonical) const;

 private:
  std::size_t key(std::span<const int> idx) const;

  int d_ = 0;
  int k_ = 0;
  BasisMode mode_ = BasisMode::Wedge;
  std::vector<MultiIndex> elements_;
  std::unordered_map<std::size_t, std::size_t> lookup_;
};

}  // namespace filicoh
