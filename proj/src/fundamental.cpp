#include "filicoh/fundamental.hpp"

#include <map>
#include <random>
#include <sstream>

namespace filicoh {

NLeibnizAlgebra::NLeibnizAlgebra(int n, int d) : n_(n), d_(d) {
  if (n < 2) throw InputError("arity must be at least 2");
  if (d < 1) throw InputError("dimension must be at least 1");
  tuples_ = std::make_shared<const MultiIndexBasis>(d, n, BasisMode::Tensor);
  g_.assign(tuples_->size(), {});
  for (int i = 1; i <= d; ++i) names_.push_back("e" + std::to_string(i));
}

void NLeibnizAlgebra::set_constant(std::span<const int> idx, int target, const Rational& value) {
  if (target < 0 || target >= d_) throw InputError("structure constant target out of range");
  const auto k = tuples_->index_of(idx);
  if (!k) throw InputError("structure constant index out of range");
  auto& row = g_[*k];
  auto it = std::lower_bound(row.begin(), row.end(), target, [](const auto& e, int t) { return e.first < t; });
  if (it != row.end() && it->first == target) {
    if (value.is_zero())
      row.erase(it);
    else
      it->second = value;
  } else if (!value.is_zero()) {
    row.insert(it, {target, value});
  }
}

Rational NLeibnizAlgebra::constant(std::size_t tuple, int target) const {
  for (const auto& [b, v] : g_[tuple])
    if (b == target) return v;
  return Rational(0);
}

SparseVec<Rational> NLeibnizAlgebra::bracket_basis(std::span<const int> args) const {
  const auto k = tuples_->index_of(args);
  if (!k) throw InputError("bracket argument out of range");
  return g_[*k];
}

QVector NLeibnizAlgebra::bracket(const std::vector<QVector>& args) const {
  if (static_cast<int>(args.size()) != n_) throw InputError("bracket needs exactly n arguments");
  for (const auto& a : args)
    if (a.size() != d_) throw InputError("bracket argument has wrong dimension");
  QVector out = zero_vector(d_);
  for (std::size_t k = 0; k < tuples_->size(); ++k) {
    if (g_[k].empty()) continue;
    Rational c(1);
    for (int s = 0; s < n_ && !c.is_zero(); ++s) c *= args[static_cast<std::size_t>(s)]((*tuples_)[k][static_cast<std::size_t>(s)]);
    if (c.is_zero()) continue;
    for (const auto& [b, v] : g_[k]) out(b) += c * v;
  }
  return out;
}

bool NLeibnizAlgebra::is_antisymmetric() const {
  for (std::size_t k = 0; k < tuples_->size(); ++k) {
    const MultiIndex& t = (*tuples_)[k];
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        MultiIndex s = t;
        std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
        const auto& other = g_[*tuples_->index_of(s)];
        SparseVec<Rational> neg = g_[k];
        for (auto& e : neg) e.second = -e.second;
        if (neg != other) return false;
      }
    }
  }
  return true;
}

void NLeibnizAlgebra::set_basis_names(std::vector<std::string> names) {
  if (static_cast<int>(names.size()) != d_) throw InputError("basis name count differs from dimension");
  names_ = std::move(names);
}

NLeibnizAlgebra as_leibniz(const Algebra& a) {
  NLeibnizAlgebra l(a.n(), a.dim());
  for (const auto& t : l.tuples().elements())
    for (const auto& [b, v] : a.bracket_basis(t)) l.set_constant(t, b, v);
  l.set_basis_names(a.basis_names());
  return l;
}

template <class A>
void FundamentalOps::build(const A& alg) {
  d_ = alg.dim();
  const int n = alg.n();
  basis_ = MultiIndexBasis(d_, n - 1, mode_);
  const std::size_t m = basis_.size();
  ad_.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    QMatrix ad = zero_matrix(d_, d_);
    std::vector<int> args = basis_[i];
    args.push_back(0);
    for (int z = 0; z < d_; ++z) {
      args.back() = z;
      for (const auto& [b, v] : alg.bracket_basis(args)) ad(b, z) = v;
    }
    ad_.push_back(std::move(ad));
  }
  comp_.assign(m, std::vector<SparseVec<Rational>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      SparseRow acc;
      const MultiIndex& y = basis_[j];
      for (std::size_t p = 0; p < y.size(); ++p) {
        const QMatrix& ad = ad_[i];
        for (int r = 0; r < d_; ++r) {
          const Rational& c = ad(r, y[p]);
          if (c.is_zero()) continue;
          MultiIndex t = y;
          t[p] = r;
          if (mode_ == BasisMode::Wedge) {
            const WedgeTerm w = wedge_expand(t);
            if (w.sign == 0) continue;
            acc.emplace_back(static_cast<int>(*basis_.index_of(*w.canonical)), w.sign > 0 ? c : -c);
          } else {
            acc.emplace_back(static_cast<int>(*basis_.index_of(t)), c);
          }
        }
      }
      normalize(acc);
      comp_[i][j] = std::move(acc);
    }
  }
}

FundamentalOps::FundamentalOps(const Algebra& a) : mode_(BasisMode::Wedge) { build(a); }
FundamentalOps::FundamentalOps(const NLeibnizAlgebra& l) : mode_(BasisMode::Tensor) { build(l); }

void FundamentalOps::check(const FundamentalVector& x) const {
  if (x.mode != mode_) throw InputError("fundamental object mode does not match the algebra");
  if (x.coords.size() != static_cast<Eigen::Index>(basis_.size()))
    throw InputError("fundamental object has wrong number of coordinates");
}

FundamentalVector FundamentalOps::compose(const FundamentalVector& x, const FundamentalVector& y) const {
  check(x);
  check(y);
  FundamentalVector out{mode_, zero_vector(static_cast<Eigen::Index>(basis_.size()))};
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Rational& xi = x.coords(static_cast<Eigen::Index>(i));
    if (xi.is_zero()) continue;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      const Rational& yj = y.coords(static_cast<Eigen::Index>(j));
      if (yj.is_zero()) continue;
      const Rational c = xi * yj;
      for (const auto& [k, v] : comp_[i][j]) out.coords(k) += c * v;
    }
  }
  return out;
}

QMatrix FundamentalOps::ad(const FundamentalVector& x) const {
  check(x);
  QMatrix out = zero_matrix(d_, d_);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Rational& xi = x.coords(static_cast<Eigen::Index>(i));
    if (xi.is_zero()) continue;
    for (Eigen::Index c = 0; c < d_; ++c)
      for (Eigen::Index r = 0; r < d_; ++r)
        if (!ad_[i](r, c).is_zero()) out(r, c) += xi * ad_[i](r, c);
  }
  return out;
}

FundamentalVector FundamentalOps::basis_vector(std::size_t i) const {
  return {mode_, unit_vector(static_cast<Eigen::Index>(basis_.size()), static_cast<Eigen::Index>(i))};
}

QMatrix ad_matrix(const Algebra& a, const FundamentalVector& x) { return FundamentalOps(a).ad(x); }
QMatrix ad_matrix(const NLeibnizAlgebra& l, const FundamentalVector& x) { return FundamentalOps(l).ad(x); }

FundamentalVector compose(const Algebra& a, const FundamentalVector& x, const FundamentalVector& y) {
  return FundamentalOps(a).compose(x, y);
}
FundamentalVector compose(const NLeibnizAlgebra& l, const FundamentalVector& x, const FundamentalVector& y) {
  return FundamentalOps(l).compose(x, y);
}

namespace {

template <class A>
FundamentalVector fundamental_impl(const A& alg, BasisMode mode, std::span<const int> indices) {
  const MultiIndexBasis basis(alg.dim(), alg.n() - 1, mode);
  if (static_cast<int>(indices.size()) != alg.n() - 1) throw InputError("fundamental object needs n-1 entries");
  FundamentalVector out{mode, zero_vector(static_cast<Eigen::Index>(basis.size()))};
  if (mode == BasisMode::Wedge) {
    const WedgeTerm w = wedge_expand(indices);
    if (w.sign == 0) return out;
    const auto k = basis.index_of(*w.canonical);
    if (!k) throw InputError("fundamental object index out of range");
    out.coords(static_cast<Eigen::Index>(*k)) = Rational(w.sign);
  } else {
    const auto k = basis.index_of(indices);
    if (!k) throw InputError("fundamental object index out of range");
    out.coords(static_cast<Eigen::Index>(*k)) = Rational(1);
  }
  return out;
}

QMatrix commutator(const QMatrix& x, const QMatrix& y) { return QMatrix(x * y - y * x); }

std::string describe(const char* what, const std::vector<std::size_t>& idx) {
  std::ostringstream os;
  os << what << " fails at basis objects";
  for (auto i : idx) os << ' ' << i + 1;
  return os.str();
}

QVector flatten(const QMatrix& m) {
  QVector v(m.size());
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) v(k++) = m(r, c);
  return v;
}

}  // namespace

FundamentalVector fundamental(const Algebra& a, std::span<const int> indices) {
  return fundamental_impl(a, BasisMode::Wedge, indices);
}
FundamentalVector fundamental(const NLeibnizAlgebra& l, std::span<const int> indices) {
  return fundamental_impl(l, BasisMode::Tensor, indices);
}

FundamentalIdentityReport check_fundamental_identities(const Algebra& a, std::optional<std::size_t> samples,
                                                       std::uint64_t seed) {
  const FundamentalOps ops(a);
  FundamentalIdentityReport rep;
  const auto note = [&](std::size_t& counter, const char* what, const std::vector<std::size_t>& where) {
    ++counter;
    rep.passed = false;
    if (!rep.first_failure) rep.first_failure = describe(what, where);
  };
  const auto check_pair = [&](const FundamentalVector& x, const FundamentalVector& y, const std::vector<std::size_t>& at) {
    const QMatrix adxy = ops.ad(ops.compose(x, y));
    if (!is_zero(QMatrix(adxy - commutator(ops.ad(x), ops.ad(y))))) note(rep.ad_failures, "ad homomorphism", at);
    if (!is_zero(QMatrix(adxy + ops.ad(ops.compose(y, x))))) note(rep.skew_failures, "ad skew symmetry", at);
  };
  const auto check_triple = [&](const FundamentalVector& x, const FundamentalVector& y, const FundamentalVector& z,
                                const std::vector<std::size_t>& at) {
    const QVector lhs = ops.compose(x, ops.compose(y, z)).coords - ops.compose(y, ops.compose(x, z)).coords;
    const QVector rhs = ops.compose(ops.compose(x, y), z).coords;
    if (lhs != rhs) note(rep.composition_failures, "composition identity", at);
  };

  const std::size_t m = ops.size();
  if (!samples) {
    std::vector<FundamentalVector> basis;
    for (std::size_t i = 0; i < m; ++i) basis.push_back(ops.basis_vector(i));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        check_pair(basis[i], basis[j], {i, j});
        for (std::size_t k = 0; k < m; ++k) {
          check_triple(basis[i], basis[j], basis[k], {i, j, k});
          ++rep.checked;
        }
      }
    }
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  const auto random_object = [&] {
    FundamentalVector v{BasisMode::Wedge, QVector(static_cast<Eigen::Index>(m))};
    for (Eigen::Index i = 0; i < v.coords.size(); ++i) v.coords(i) = Rational(num(rng), den(rng));
    return v;
  };
  for (std::size_t s = 0; s < *samples; ++s) {
    const FundamentalVector x = random_object(), y = random_object(), z = random_object();
    check_pair(x, y, {s});
    check_triple(x, y, z, {s});
    ++rep.checked;
  }
  return rep;
}

AssociatedLie associated_lie_algebra(const Algebra& a) {
  const FundamentalOps ops(a);
  const int d = a.dim();
  AssociatedLie out;
  SpanBasis span(static_cast<Eigen::Index>(d) * d);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (span.insert(flatten(ops.ad_basis(i)))) {
      out.generators.push_back(i);
      out.matrices.push_back(ops.ad_basis(i));
    }
  }
  out.dim = out.matrices.size();
  const auto dim = static_cast<Eigen::Index>(out.dim);
  QMatrix columns(static_cast<Eigen::Index>(d) * d, dim);
  for (Eigen::Index k = 0; k < dim; ++k) columns.col(k) = flatten(out.matrices[static_cast<std::size_t>(k)]);
  out.constants.assign(out.dim, std::vector<QVector>(out.dim));
  for (std::size_t i = 0; i < out.dim; ++i) {
    for (std::size_t j = 0; j < out.dim; ++j) {
      const auto c = solve(columns, flatten(commutator(out.matrices[i], out.matrices[j])));
      if (!c) throw VerificationFailure("commutator of inner derivations left their span");
      out.constants[i][j] = *c;
    }
  }
  out.antisymmetric = true;
  for (std::size_t i = 0; i < out.dim; ++i)
    for (std::size_t j = 0; j < out.dim; ++j)
      if (out.constants[i][j] != QVector(-out.constants[j][i])) out.antisymmetric = false;
  // Jacobi: sum over cyclic (i,j,k) of [[B_i,B_j],B_k] = 0 in coordinates.
  const auto bracket_of = [&](const QVector& u, std::size_t k) {
    QVector r = zero_vector(dim);
    for (Eigen::Index l = 0; l < dim; ++l)
      if (!u(l).is_zero()) r += u(l) * out.constants[static_cast<std::size_t>(l)][k];
    return r;
  };
  out.jacobi = true;
  for (std::size_t i = 0; i < out.dim && out.jacobi; ++i)
    for (std::size_t j = 0; j < out.dim && out.jacobi; ++j)
      for (std::size_t k = 0; k < out.dim && out.jacobi; ++k) {
        const QVector s = bracket_of(out.constants[i][j], k) + bracket_of(out.constants[j][k], i) +
                          bracket_of(out.constants[k][i], j);
        if (!is_zero(QMatrix(s))) out.jacobi = false;
      }
  // (ad_i)_{c,e} = constants[i][e](c)
  out.killing = zero_matrix(dim, dim);
  for (std::size_t i = 0; i < out.dim; ++i)
    for (std::size_t j = 0; j < out.dim; ++j) {
      Rational t(0);
      for (std::size_t c = 0; c < out.dim; ++c)
        for (std::size_t e = 0; e < out.dim; ++e)
          t += out.constants[i][e](static_cast<Eigen::Index>(c)) * out.constants[j][c](static_cast<Eigen::Index>(e));
      out.killing(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t;
    }
  out.killing_negative_definite = out.dim > 0 && is_negative_definite(out.killing);
  return out;
}

namespace {

std::string object_name(const std::vector<std::string>& names, const MultiIndex& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ',';
    s += names[static_cast<std::size_t>(idx[i])];
  }
  return s + ")";
}

NLeibnizAlgebra leibniz_from_ops(const FundamentalOps& ops, const std::vector<std::string>& names) {
  const int m = static_cast<int>(ops.size());
  NLeibnizAlgebra out(2, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (const auto& [k, v] : ops.compose_basis(static_cast<std::size_t>(i), static_cast<std::size_t>(j)))
        out.set_constant(std::vector<int>{i, j}, k, v);
  std::vector<std::string> carrier;
  for (const auto& idx : ops.basis().elements()) carrier.push_back(object_name(names, idx));
  out.set_basis_names(std::move(carrier));
  return out;
}

}  // namespace

NLeibnizAlgebra associated_leibniz_algebra(const Algebra& a) { return leibniz_from_ops(FundamentalOps(a), a.basis_names()); }

NLeibnizAlgebra associated_leibniz_algebra(const NLeibnizAlgebra& l) {
  return leibniz_from_ops(FundamentalOps(l), l.basis_names());
}

IdentityReport<Rational> check_leibniz_identity(const NLeibnizAlgebra& l) {
  IdentityReport<Rational> rep;
  const MultiIndexBasis xs(l.dim(), l.n() - 1, BasisMode::Tensor);
  for (const auto& x : xs.elements()) {
    for (const auto& y : l.tuples().elements()) {
      ++rep.checked;
      QVector r = derivation_residual(l, x, y);
      if (!is_zero(QMatrix(r))) {
        rep.passed = false;
        ++rep.failures;
        if (!rep.witness) rep.witness = FIWitness<Rational>{x, y, std::move(r)};
      }
    }
  }
  return rep;
}

}  // namespace filicoh
