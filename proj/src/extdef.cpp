#include "filicoh/extdef.hpp"

namespace filicoh {

namespace {

void require_cochain(const Algebra& a, const Cochain& c, Action action, int p) {
  if (!c.complex) throw InputError("cochain has no complex");
  if (c.action() != action) throw InputError("expected a " + to_string(action) + " cochain");
  if (c.p != p) throw InputError("expected a cochain of degree " + std::to_string(p));
  if (c.layout != Layout::Packed) throw InputError("expected a packed cochain");
  if (c.complex->n() != a.n() || c.complex->dim() != a.dim()) throw InputError("cochain belongs to a different algebra");
}

QVector value_on_subset(const Cochain& c, const MultiIndex& s) {
  return c.value({MultiIndex(s.begin(), s.end() - 1)}, s.back());
}

}  // namespace

CentralExtension central_extend(const Algebra& a, const Cochain& c) {
  require_cochain(a, c, Action::Trivial, 1);
  const int d = a.dim();
  Algebra ext(a.n(), d + 1);
  for (std::size_t k = 0; k < a.wedge().size(); ++k) {
    const MultiIndex& s = a.wedge()[k];
    for (const auto& [b, v] : a.constants(k)) ext.set_constant(s, b, v);
    ext.set_constant(s, d, value_on_subset(c, s)(0));
  }
  std::vector<std::string> names = a.basis_names();
  names.push_back("Xi");
  ext.set_basis_names(names);
  FIReport fi = check_fi(ext);
  return {a, c, std::move(ext), std::move(fi)};
}

ExtensionTrivialization trivialize_extension(const CentralExtension& ext, const Cochain& beta) {
  require_cochain(ext.base, beta, Action::Trivial, 0);
  const int d = ext.base.dim();
  const int n = ext.base.n();
  std::vector<QVector> basis;
  for (int k = 0; k < d; ++k) {
    QVector v = unit_vector(d + 1, k);
    v(d) = -beta.coeffs(k);
    basis.push_back(v);
  }
  basis.push_back(unit_vector(d + 1, d));

  Algebra out(n, d + 1);
  out.set_basis_names(ext.extended.basis_names());
  Cochain residual = Cochain::zero(make_complex(ext.base, Action::Trivial), 1);
  for (const auto& s : out.wedge().elements()) {
    std::vector<QVector> args;
    for (int i : s) args.push_back(basis[static_cast<std::size_t>(i)]);
    const QVector v = ext.extended.bracket(args);
    Rational xi = v(d);
    for (int b = 0; b < d; ++b) {
      xi += v(b) * beta.coeffs(b);
      if (!v(b).is_zero()) out.set_constant(s, b, v(b));
    }
    if (!xi.is_zero()) out.set_constant(s, d, xi);
    if (s.back() < d) residual.set({MultiIndex(s.begin(), s.end() - 1)}, s.back(), 0, xi);
  }
  bool success = true;
  for (std::size_t k = 0; k < out.wedge().size(); ++k)
    for (const auto& [b, v] : out.constants(k))
      if (b == d) success = false;
  return {success, std::move(out), std::move(residual)};
}

Deformation deform(const Algebra& a, const Cochain& alpha1, int order, std::optional<Cochain> alpha2) {
  if (order < 1 || order > 2) throw InputError("deformation order must be 1 or 2");
  require_cochain(a, alpha1, Action::Adjoint, 1);
  if (alpha2) {
    if (order < 2) throw InputError("a second-order cochain needs order 2");
    require_cochain(a, *alpha2, Action::Adjoint, 1);
  }
  SeriesAlgebra s(a.n(), a.dim());
  for (std::size_t k = 0; k < a.wedge().size(); ++k) {
    const MultiIndex& idx = a.wedge()[k];
    const QVector v1 = value_on_subset(alpha1, idx);
    const QVector v2 = alpha2 ? value_on_subset(*alpha2, idx) : zero_vector(a.dim());
    for (int b = 0; b < a.dim(); ++b) {
      Series2 c(a.constant(k, b));
      c[1] = v1(b);
      c[2] = v2(b);
      if (!c.is_zero()) s.set_constant(idx, b, c);
    }
  }
  s.set_basis_names(a.basis_names());
  return {a, order, alpha1, std::move(alpha2), std::move(s)};
}

std::vector<FIReport> fi_residual_orders(const Deformation& def) {
  std::vector<FIReport> out(static_cast<std::size_t>(def.order) + 1);
  const int d = def.base.dim();
  for_each_fi_residual(def.bracket, [&](const MultiIndex& x, const MultiIndex& y, const Vec<Series2>& r) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      FIReport& rep = out[k];
      ++rep.checked;
      QVector coef(d);
      bool zero = true;
      for (int i = 0; i < d; ++i) {
        coef(i) = r(i)[k];
        if (!coef(i).is_zero()) zero = false;
      }
      if (zero) continue;
      rep.passed = false;
      ++rep.failures;
      if (!rep.witness) rep.witness = FIWitness<Rational>{x, y, coef};
    }
  });
  return out;
}

DeformationTrivialization trivialize_deformation(const Deformation& def, const Cochain& beta) {
  require_cochain(def.base, beta, Action::Adjoint, 0);
  const int d = def.base.dim();
  using SMat = Eigen::Matrix<Series2, Eigen::Dynamic, Eigen::Dynamic>;
  SMat p(d, d);
  SMat p_inv(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      const Rational bjk = beta.coeffs(k * d + j);
      Rational b2(0);
      for (int m = 0; m < d; ++m) b2 += beta.coeffs(m * d + j) * beta.coeffs(k * d + m);
      Series2 pv(j == k ? Rational(1) : Rational(0));
      pv[1] = -bjk;
      p(j, k) = pv;
      Series2 iv(j == k ? Rational(1) : Rational(0));
      iv[1] = bjk;
      iv[2] = b2;
      p_inv(j, k) = iv;
    }

  SeriesAlgebra out(def.base.n(), d);
  out.set_basis_names(def.base.basis_names());
  Cochain residual = Cochain::zero(def.alpha1.complex, 1);
  bool success = true;
  for (std::size_t k = 0; k < def.base.wedge().size(); ++k) {
    const MultiIndex& s = def.base.wedge()[k];
    std::vector<Vec<Series2>> args;
    for (int i : s) args.push_back(p.col(i));
    const Vec<Series2> w = p_inv * def.bracket.bracket(args);
    for (int b = 0; b < d; ++b) {
      Series2 c = w(b);
      c[2] = Rational(0);
      if (!c.is_zero()) out.set_constant(s, b, c);
      if (c[0] != def.base.constant(k, b)) success = false;
      if (!c[1].is_zero()) {
        success = false;
        residual.set({MultiIndex(s.begin(), s.end() - 1)}, s.back(), b, c[1]);
      }
    }
  }
  return {success, std::move(out), std::move(residual)};
}

namespace {

Cochain extract_gamma(const Algebra& a, const Cochain& c) {
  require_cochain(a, c, Action::Adjoint, 1);
  const Deformation def = deform(a, c, 2);
  const int d = a.dim();
  Cochain gamma = Cochain::zero(c.complex, 2);
  bool first_order = true;
  for_each_fi_residual(def.bracket, [&](const MultiIndex& x, const MultiIndex& y, const Vec<Series2>& r) {
    const std::vector<MultiIndex> blocks{x, MultiIndex(y.begin(), y.end() - 1)};
    for (int v = 0; v < d; ++v) {
      if (!r(v)[1].is_zero()) first_order = false;
      if (!r(v)[2].is_zero()) gamma.set(blocks, y.back(), v, r(v)[2]);
    }
  });
  if (!first_order) throw NotACocycle("first-order FI residual does not vanish");
  return gamma;
}

void solve_extension(const Algebra& a, const Cochain& c, ObstructionReport& rep) {
  const CochainComplex& cx = *c.complex;
  const int cols = static_cast<int>(cx.cochain_dim(1));
  const RankKernel rk = sparse_rank_kernel(coboundary_rows(cx, 1, &rep.gamma), cols + 1);
  rep.extends = false;
  for (const auto& v : rk.kernel) {
    if (v(cols).is_zero()) continue;
    Cochain alpha2 = Cochain::zero(c.complex, 1);
    alpha2.coeffs = v.head(cols) / v(cols);
    const auto orders = fi_residual_orders(deform(a, c, 2, alpha2));
    if (!orders[2].passed) throw VerificationFailure("second-order cochain solving δα² = −γ leaves an FI residual");
    rep.extends = true;
    rep.alpha2 = std::move(alpha2);
    return;
  }
}

}  // namespace

ObstructionReport obstruction_cocycle(const Algebra& a, const Cochain& c, bool solve) {
  ObstructionReport rep;
  rep.gamma = extract_gamma(a, c);
  rep.gamma_closed = coboundaries_vanish({rep.gamma}).front();
  if (solve) solve_extension(a, c, rep);
  return rep;
}

std::vector<ObstructionReport> obstruction_cocycles(const Algebra& a, const std::vector<Cochain>& cs) {
  std::vector<ObstructionReport> out(cs.size());
  std::vector<Cochain> gammas;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    out[i].gamma = extract_gamma(a, cs[i]);
    gammas.push_back(out[i].gamma);
  }
  const auto closed = coboundaries_vanish(gammas);
  for (std::size_t i = 0; i < cs.size(); ++i) out[i].gamma_closed = closed[i];
  return out;
}

}  // namespace filicoh
