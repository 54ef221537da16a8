#include "filicoh/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace filicoh {

std::size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

int epsilon(std::span<const int> indices) {
  int sign = 1;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = i + 1; j < indices.size(); ++j) {
      if (indices[i] == indices[j]) return 0;
      if (indices[i] > indices[j]) sign = -sign;
    }
  }
  return sign;
}

WedgeTerm wedge_expand(std::span<const int> indices) {
  const int s = epsilon(indices);
  if (s == 0) return {};
  MultiIndex sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  return {std::move(sorted), s};
}

MultiIndexBasis::MultiIndexBasis(int d, int k, BasisMode mode) : d_(d), k_(k), mode_(mode) {
  if (d < 0 || k < 0) throw std::invalid_argument("MultiIndexBasis: negative size");
  MultiIndex cur(static_cast<std::size_t>(k));
  if (mode == BasisMode::Wedge) {
    if (k > d) return;
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
      elements_.push_back(cur);
      int pos = k - 1;
      while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == d - k + pos) --pos;
      if (pos < 0) break;
      ++cur[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < k; ++i) cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)] + 1;
    }
  } else {
    if (d == 0 && k > 0) return;
    while (true) {
      elements_.push_back(cur);
      int pos = k - 1;
      while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == d - 1) cur[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
      ++cur[static_cast<std::size_t>(pos)];
    }
  }
  lookup_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) lookup_.emplace(key(elements_[i]), i);
}

std::size_t MultiIndexBasis::key(std::span<const int> idx) const {
  std::size_t h = 0;
  for (int v : idx) h = h * static_cast<std::size_t>(d_ + 1) + static_cast<std::size_t>(v);
  return h;
}

std::optional<std::size_t> MultiIndexBasis::index_of(std::span<const int> canonical) const {
  if (static_cast<int>(canonical.size()) != k_) return std::nullopt;
  for (int v : canonical)
    if (v < 0 || v >= d_) return std::nullopt;
  if (mode_ == BasisMode::Wedge) {
    for (std::size_t i = 1; i < canonical.size(); ++i)
      if (canonical[i - 1] >= canonical[i]) return std::nullopt;
  }
  const auto it = lookup_.find(key(canonical));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

}  // namespace filicoh
