#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "filicoh/combinatorics.hpp"
#include "filicoh/errors.hpp"
#include "filicoh/rational.hpp"

namespace filicoh {

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Sparse vector as (index, value) pairs; kept sorted by index where noted.
template <class S>
using SparseVec = std::vector<std::pair<int, S>>;

/// Half-open range [lo, hi) of 0-based basis indices.
struct IndexRange {
  int lo = 0;
  int hi = 0;
  int size() const { return hi - lo; }
  bool contains(int i) const { return i >= lo && i < hi; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// n-Lie (Filippov) algebra given by structure constants over the scalar S.
///
/// Constants live on strictly increasing n-subsets of the 0-based basis and are
/// expanded by antisymmetry on read.
template <class S>
class NLieAlgebra {
 public:
  using Scalar = S;

  NLieAlgebra(int n, int d) : n_(n), d_(d) {
    if (n < 2) throw InputError("arity must be at least 2");
    if (d < 1) throw InputError("dimension must be at least 1");
    wedge_ = std::make_shared<const MultiIndexBasis>(d, n, BasisMode::Wedge);
    f_.assign(wedge_->size(), {});
  }

  int n() const { return n_; }
  int dim() const { return d_; }
  const MultiIndexBasis& wedge() const { return *wedge_; }

  /// Nonzero constants of the canonical n-subset with the given index, sorted by target.
  const SparseVec<S>& constants(std::size_t subset) const { return f_[subset]; }

  S constant(std::size_t subset, int target) const {
    for (const auto& [b, v] : f_[subset])
      if (b == target) return v;
    return S(0);
  }

  /// Sets f_{idx}^target; idx may be in any order and is antisymmetrized.
  void set_constant(std::span<const int> idx, int target, const S& value) {
    if (target < 0 || target >= d_) throw InputError("structure constant target out of range");
    if (static_cast<int>(idx.size()) != n_) throw InputError("structure constant index has wrong arity");
    for (int i : idx)
      if (i < 0 || i >= d_) throw InputError("structure constant index out of range");
    const WedgeTerm w = wedge_expand(idx);
    if (w.sign == 0) {
      if (!is_zero(value)) throw InputError("structure constant on a repeated index must vanish");
      return;
    }
    const std::size_t k = *wedge_->index_of(*w.canonical);
    S v = w.sign > 0 ? value : S(-value);
    auto& row = f_[k];
    auto it = std::lower_bound(row.begin(), row.end(), target, [](const auto& e, int t) { return e.first < t; });
    if (it != row.end() && it->first == target) {
      if (is_zero(v))
        row.erase(it);
      else
        it->second = std::move(v);
    } else if (!is_zero(v)) {
      row.insert(it, {target, std::move(v)});
    }
  }

  /// Bracket of basis vectors e_{args[0]} .. e_{args[n-1]}.
  SparseVec<S> bracket_basis(std::span<const int> args) const {
    const WedgeTerm w = wedge_expand(args);
    if (w.sign == 0) return {};
    const auto k = wedge_->index_of(*w.canonical);
    if (!k) throw InputError("bracket argument out of range");
    SparseVec<S> out = f_[*k];
    if (w.sign < 0)
      for (auto& e : out) e.second = -e.second;
    return out;
  }

  /// Multilinear bracket of arbitrary coordinate vectors.
  Vec<S> bracket(const std::vector<Vec<S>>& args) const {
    if (static_cast<int>(args.size()) != n_) throw InputError("bracket needs exactly n arguments");
    for (const auto& a : args)
      if (a.size() != d_) throw InputError("bracket argument has wrong dimension");
    Vec<S> out = Vec<S>::Constant(d_, S(0));
    std::vector<int> pick(static_cast<std::size_t>(n_));
    expand(args, 0, S(1), pick, out);
    return out;
  }

  const std::optional<std::vector<int>>& signature() const { return signature_; }
  void set_signature(std::optional<std::vector<int>> s) { signature_ = std::move(s); }

  const std::optional<std::vector<IndexRange>>& ideals() const { return ideals_; }
  void set_ideals(std::optional<std::vector<IndexRange>> blocks) {
    if (blocks) {
      int next = 0;
      for (const auto& r : *blocks) {
        if (r.lo != next || r.hi <= r.lo) throw InputError("ideal blocks must partition the basis in order");
        next = r.hi;
      }
      if (next != d_) throw InputError("ideal blocks must cover the whole basis");
    }
    ideals_ = std::move(blocks);
  }

  const std::vector<std::string>& basis_names() const {
    if (names_.empty()) {
      names_.reserve(static_cast<std::size_t>(d_));
      for (int i = 1; i <= d_; ++i) names_.push_back("e" + std::to_string(i));
    }
    return names_;
  }
  void set_basis_names(std::vector<std::string> names) {
    if (!names.empty() && static_cast<int>(names.size()) != d_) throw InputError("basis name count differs from dimension");
    names_ = std::move(names);
  }

  template <class T>
  NLieAlgebra<T> cast() const {
    NLieAlgebra<T> out(n_, d_);
    for (std::size_t k = 0; k < f_.size(); ++k)
      for (const auto& [b, v] : f_[k]) out.set_constant((*wedge_)[k], b, T(v));
    out.set_signature(signature_);
    out.set_ideals(ideals_);
    out.set_basis_names(names_);
    return out;
  }

  friend bool operator==(const NLieAlgebra& a, const NLieAlgebra& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.f_ == b.f_ && a.signature_ == b.signature_ && a.ideals_ == b.ideals_ &&
           a.basis_names() == b.basis_names();
  }

 private:
  void expand(const std::vector<Vec<S>>& args, std::size_t slot, const S& coef, std::vector<int>& pick,
              Vec<S>& out) const {
    if (slot == args.size()) {
      for (const auto& [b, v] : bracket_basis(pick)) out(b) += coef * v;
      return;
    }
    for (int i = 0; i < d_; ++i) {
      if (is_zero(args[slot](i))) continue;
      if (std::find(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(slot), i) !=
          pick.begin() + static_cast<std::ptrdiff_t>(slot))
        continue;
      pick[slot] = i;
      expand(args, slot + 1, coef * args[slot](i), pick, out);
    }
  }

  int n_;
  int d_;
  std::shared_ptr<const MultiIndexBasis> wedge_;
  std::vector<SparseVec<S>> f_;
  std::optional<std::vector<int>> signature_;
  std::optional<std::vector<IndexRange>> ideals_;
  mutable std::vector<std::string> names_;
};

using Algebra = NLieAlgebra<Rational>;

/// Left side minus right side of the derivation identity
/// [x, [y_1..y_n]] = sum_i [y_1..[x, y_i]..y_n] on basis vectors, where x holds
/// n-1 indices. Works for any algebra exposing n(), dim() and bracket_basis().
template <class A>
auto derivation_residual(const A& alg, std::span<const int> x, std::span<const int> y) {
  using S = typename A::Scalar;
  const int d = alg.dim();
  Vec<S> r = Vec<S>::Constant(d, S(0));
  std::vector<int> args(x.begin(), x.end());
  args.push_back(0);
  for (const auto& [b, v] : alg.bracket_basis(y)) {
    args.back() = b;
    for (const auto& [c, w] : alg.bracket_basis(args)) r(c) += v * w;
  }
  std::vector<int> ys(y.begin(), y.end());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    args.back() = ys[i];
    const auto inner = alg.bracket_basis(args);
    const int keep = ys[i];
    for (const auto& [m, v] : inner) {
      ys[i] = m;
      for (const auto& [c, w] : alg.bracket_basis(ys)) r(c) -= v * w;
    }
    ys[i] = keep;
  }
  return r;
}

template <class S>
struct FIWitness {
  MultiIndex x;  ///< the n-1 fixed arguments
  MultiIndex y;  ///< the n arguments of the inner bracket
  Vec<S> residual;
};

template <class S>
struct IdentityReport {
  bool passed = true;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::optional<FIWitness<S>> witness;  ///< first violation found
};

using FIReport = IdentityReport<Rational>;

/// Visits the derivation-identity residual on every canonical basis tuple:
/// (n-1)-subsets for x and n-subsets for y.
template <class S, class F>
void for_each_fi_residual(const NLieAlgebra<S>& a, F&& visit) {
  const MultiIndexBasis xs(a.dim(), a.n() - 1, BasisMode::Wedge);
  for (const auto& x : xs.elements())
    for (const auto& y : a.wedge().elements()) visit(x, y, derivation_residual(a, x, y));
}

template <class S>
IdentityReport<S> check_fi(const NLieAlgebra<S>& a) {
  IdentityReport<S> rep;
  for_each_fi_residual(a, [&](const MultiIndex& x, const MultiIndex& y, const Vec<S>& r) {
    ++rep.checked;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      if (!is_zero(r(i))) {
        rep.passed = false;
        ++rep.failures;
        if (!rep.witness) rep.witness = FIWitness<S>{x, y, r};
        return;
      }
    }
  });
  return rep;
}

/// The simple algebra A_{n+1}: [e_1..ê_i..e_{n+1}] = (−1)^{i+1} ε_i e_i.
Algebra simple_algebra(int n, const std::vector<int>& signature);

/// Parses a signature string such as "+++-".
std::vector<int> parse_signature(const std::string& text);

Algebra abelian_algebra(int n, int d);

Algebra direct_sum(const std::vector<Algebra>& parts);

/// Subalgebra spanned by the basis vectors of a block, with indices shifted to 0.
Algebra restrict_to_block(const Algebra& a, IndexRange block);

/// Signature of a block whose constants coincide with simple_algebra(n, ε), if any.
std::optional<std::vector<int>> recognize_simple(const Algebra& a, IndexRange block);

/// Declared blocks, or the whole basis as a single block.
std::vector<IndexRange> blocks_of(const Algebra& a);

bool is_ideal(const Algebra& a, const std::vector<QVector>& subspace);

/// Dimensions of I^(0), I^(1), ... where I^(m) is spanned by brackets with k
/// arguments from I^(m-1) followed by n-k arguments from the algebra. Stops
/// when a term repeats or reaches 0.
std::vector<std::size_t> derived_series(const Algebra& a, const std::vector<QVector>& subspace, int k);

}  // namespace filicoh
