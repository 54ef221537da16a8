#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "filicoh/algebra.hpp"
#include "filicoh/linalg.hpp"

namespace filicoh {

/// Element of the (n-1)-fold wedge (FA) or tensor (Leibniz) power.
struct FundamentalVector {
  BasisMode mode = BasisMode::Wedge;
  QVector coords;

  friend bool operator==(const FundamentalVector&, const FundamentalVector&) = default;
};

/// n-Leibniz algebra: structure constants on all index tuples, no antisymmetry.
class NLeibnizAlgebra {
 public:
  using Scalar = Rational;

  NLeibnizAlgebra(int n, int d);

  int n() const { return n_; }
  int dim() const { return d_; }
  const MultiIndexBasis& tuples() const { return *tuples_; }

  void set_constant(std::span<const int> idx, int target, const Rational& value);
  Rational constant(std::size_t tuple, int target) const;
  const SparseVec<Rational>& constants(std::size_t tuple) const { return g_[tuple]; }

  SparseVec<Rational> bracket_basis(std::span<const int> args) const;
  QVector bracket(const std::vector<QVector>& args) const;

  /// True when every constant is antisymmetric under swapping two arguments.
  bool is_antisymmetric() const;

  const std::vector<std::string>& basis_names() const { return names_; }
  void set_basis_names(std::vector<std::string> names);

  friend bool operator==(const NLeibnizAlgebra& a, const NLeibnizAlgebra& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.g_ == b.g_ && a.names_ == b.names_;
  }

 private:
  int n_;
  int d_;
  std::shared_ptr<const MultiIndexBasis> tuples_;
  std::vector<SparseVec<Rational>> g_;
  std::vector<std::string> names_;
};

/// The FA viewed as an n-Leibniz algebra (constants expanded on every tuple).
NLeibnizAlgebra as_leibniz(const Algebra& a);

/// Cached composition and adjoint data on the canonical basis of fundamental objects.
class FundamentalOps {
 public:
  explicit FundamentalOps(const Algebra& a);
  explicit FundamentalOps(const NLeibnizAlgebra& l);

  BasisMode mode() const { return mode_; }
  int dim() const { return d_; }
  const MultiIndexBasis& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }

  /// e_i · e_j on basis fundamental objects.
  const SparseVec<Rational>& compose_basis(std::size_t i, std::size_t j) const { return comp_[i][j]; }
  /// ad of a basis fundamental object (d x d).
  const QMatrix& ad_basis(std::size_t i) const { return ad_[i]; }

  FundamentalVector compose(const FundamentalVector& x, const FundamentalVector& y) const;
  QMatrix ad(const FundamentalVector& x) const;
  FundamentalVector basis_vector(std::size_t i) const;

 private:
  template <class A>
  void build(const A& alg);
  void check(const FundamentalVector& x) const;

  BasisMode mode_;
  int d_ = 0;
  MultiIndexBasis basis_;
  std::vector<std::vector<SparseVec<Rational>>> comp_;
  std::vector<QMatrix> ad_;
};

QMatrix ad_matrix(const Algebra& a, const FundamentalVector& x);
QMatrix ad_matrix(const NLeibnizAlgebra& l, const FundamentalVector& x);
FundamentalVector compose(const Algebra& a, const FundamentalVector& x, const FundamentalVector& y);
FundamentalVector compose(const NLeibnizAlgebra& l, const FundamentalVector& x, const FundamentalVector& y);

/// Fundamental object from a list of algebra basis indices (0-based), e.g. (e1,e2) = {0,1}.
FundamentalVector fundamental(const Algebra& a, std::span<const int> indices);
FundamentalVector fundamental(const NLeibnizAlgebra& l, std::span<const int> indices);

struct FundamentalIdentityReport {
  bool passed = true;
  std::size_t checked = 0;
  std::size_t composition_failures = 0;  ///< X·(Y·Z) − Y·(X·Z) = (X·Y)·Z
  std::size_t ad_failures = 0;           ///< ad_{X·Y} = [ad_X, ad_Y]
  std::size_t skew_failures = 0;         ///< ad_{X·Y} = −ad_{Y·X}
  std::optional<std::string> first_failure;
};

/// Checks the three identities on all basis triples (samples empty) or on the
/// given number of seeded random triples.
FundamentalIdentityReport check_fundamental_identities(const Algebra& a, std::optional<std::size_t> samples = {},
                                                       std::uint64_t seed = 0);

struct AssociatedLie {
  std::size_t dim = 0;
  std::vector<std::size_t> generators;  ///< wedge indices whose ad matrices form the basis
  std::vector<QMatrix> matrices;
  /// constants[a][b] holds the coordinates of [B_a, B_b] in the chosen basis.
  std::vector<std::vector<QVector>> constants;
  bool antisymmetric = false;
  bool jacobi = false;
  QMatrix killing;  ///< Tr(ad_a ad_b) of the Lie algebra itself
  bool killing_negative_definite = false;
};

AssociatedLie associated_lie_algebra(const Algebra& a);

/// Arity-2 Leibniz algebra on fundamental objects with bracket X·Y.
NLeibnizAlgebra associated_leibniz_algebra(const Algebra& a);
NLeibnizAlgebra associated_leibniz_algebra(const NLeibnizAlgebra& l);

/// Left n-Leibniz identity on every basis tuple.
IdentityReport<Rational> check_leibniz_identity(const NLeibnizAlgebra& l);

}  // namespace filicoh
