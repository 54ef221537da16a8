#include "filicoh/suite.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "filicoh/extdef.hpp"
#include "filicoh/killing.hpp"
#include "filicoh/trivialize.hpp"

namespace filicoh {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream out;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      out << (out.tellp() > 0 ? "; " : "") << "failed: " << what;
    }
  }
  void note(const std::string& what) { out << (out.tellp() > 0 ? "; " : "") << what; }
};

std::vector<int> euclidean(int n) { return std::vector<int>(static_cast<std::size_t>(n) + 1, 1); }
Algebra simple(int n) { return simple_algebra(n, euclidean(n)); }
Algebra a4a4() { return direct_sum({simple(3), simple(3)}); }

std::mt19937_64 rng_for(const SuiteOptions& o, int salt) { return std::mt19937_64(o.seed * 1000003ULL + static_cast<std::uint64_t>(salt)); }

std::string dims_text(const CohomologyDims& d) {
  return "(" + std::to_string(d.dim_z) + "," + std::to_string(d.dim_b) + "," + std::to_string(d.dim_h) + ")";
}

bool dims_equal(const CohomologyDims& d, std::size_t z, std::size_t b, std::size_t h) {
  return d.dim_z == z && d.dim_b == b && d.dim_h == h;
}

Cochain constants_as_cochain(const ComplexPtr& cx, const Algebra& source) {
  Cochain c = Cochain::zero(cx, 1);
  for (std::size_t k = 0; k < source.wedge().size(); ++k) {
    const MultiIndex& s = source.wedge()[k];
    for (const auto& [b, v] : source.constants(k)) c.set({MultiIndex(s.begin(), s.end() - 1)}, s.back(), b, v);
  }
  return c;
}

Cochain unit_cochain(const ComplexPtr& cx, int p, Eigen::Index at) {
  Cochain c = Cochain::zero(cx, p);
  c.coeffs(at) = Rational(1);
  return c;
}

QMatrix random_symmetric(std::mt19937_64& g, int d) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  QMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) m(i, j) = m(j, i) = Rational(num(g), den(g));
  return m;
}

bool solvable(const CochainComplex& cx, int p, const Cochain& rhs) {
  const int cols = static_cast<int>(cx.cochain_dim(p));
  for (const auto& v : sparse_rank_kernel(coboundary_rows(cx, p, &rhs), cols + 1).kernel)
    if (!v(cols).is_zero()) return true;
  return false;
}

void fi_exhaustive(Check& c, const SuiteOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  int count = 0;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> sig;
    for (int i = 0; i < 4; ++i) sig.push_back(mask >> i & 1 ? -1 : 1);
    const FIReport r = check_fi(simple_algebra(3, sig));
    c.expect(r.passed, "FI on n=3 signature " + std::to_string(mask));
    ++count;
  }
  for (int n = 4; n <= std::min(o.max_n, 5); ++n) {
    c.expect(check_fi(simple(n)).passed, "FI on A" + std::to_string(n + 1));
    ++count;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 5.0, "FI checks within 5 s");
  c.note(std::to_string(count) + " simple algebras satisfy FI");
}

void fundamental_identities(Check& c, const SuiteOptions& o) {
  const auto ex = check_fundamental_identities(simple(3));
  c.expect(ex.passed, "A4 exhaustive: " + ex.first_failure.value_or(""));
  const auto rnd = check_fundamental_identities(a4a4(), 200, o.seed);
  c.expect(rnd.passed && rnd.checked == 200, "A4+A4 random: " + rnd.first_failure.value_or(""));
  c.note(std::to_string(ex.checked) + " basis triples on A4, " + std::to_string(rnd.checked) + " random triples on A4+A4");
}

void delta_squared(Check& c, const SuiteOptions& o) {
  const std::vector<std::pair<std::string, Algebra>> algs{{"A4", simple(3)}, {"A4+A4", a4a4()}};
  int salt = 0;
  std::size_t trials = 0;
  for (const auto& [name, a] : algs)
    for (Action act : {Action::Trivial, Action::Adjoint}) {
      const auto cx = make_complex(a, act);
      for (int p = 0; p <= 1; ++p) {
        const auto r = check_nilpotency(cx, p, 100, o.seed * 1000003ULL + static_cast<std::uint64_t>(++salt));
        c.expect(r.passed && r.failures == 0, name + " " + to_string(act) + " p=" + std::to_string(p));
        trials += r.trials;
      }
    }
  c.note(std::to_string(trials) + " random cochains with vanishing second coboundary");
}

void whitehead_trivial(Check& c, const SuiteOptions& o) {
  for (int n = 3; n <= std::min(o.max_n, 5); ++n) {
    const auto d = cohomology_dims(*make_complex(simple(n), Action::Trivial), 1);
    const auto k = static_cast<std::size_t>(n + 1);
    c.expect(dims_equal(d, k, k, 0), "A" + std::to_string(n + 1) + " dims " + dims_text(d));
    c.note("A" + std::to_string(n + 1) + " " + dims_text(d));
  }
  const auto s = cohomology_dims(*make_complex(a4a4(), Action::Trivial), 1);
  c.expect(s.dim_h == 0, "A4+A4 H^1 " + dims_text(s));
  c.note("A4+A4 " + dims_text(s));
}

void whitehead_adjoint(Check& c, const SuiteOptions& o) {
  for (int n = 3; n <= std::min(o.max_n, 4); ++n) {
    const Algebra a = simple(n);
    const auto cx = make_complex(a, Action::Adjoint);
    const auto d = cohomology_dims(*cx, 1);
    const auto z = static_cast<std::size_t>((n + 1) * (n + 2) / 2);
    c.expect(dims_equal(d, z, z, 0), "A" + std::to_string(n + 1) + " dims " + dims_text(d));
    SpanBasis span(static_cast<Eigen::Index>(cx->cochain_dim(1)));
    bool all_cocycles = true;
    for (int j = 0; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        QMatrix m = QMatrix::Constant(n + 1, n + 1, Rational(0));
        m(j, k) = m(k, j) = Rational(1);
        const Cochain sym = from_dual_coordinates(cx, m);
        all_cocycles = all_cocycles && is_cocycle(sym);
        span.insert(sym.coeffs);
      }
    c.expect(all_cocycles && span.dim() == d.dim_z, "symmetric dual coordinates span Z^1 on A" + std::to_string(n + 1));
    c.note("A" + std::to_string(n + 1) + " " + dims_text(d) + ", symmetric dual count " + std::to_string(span.dim()));
  }
  const auto s = cohomology_dims(*make_complex(a4a4(), Action::Adjoint), 1);
  c.expect(s.dim_h == 0, "A4+A4 H^1 " + dims_text(s));
  c.note("A4+A4 " + dims_text(s));
}

void cocycle_symmetry(Check& c, const SuiteOptions&) {
  for (const auto& sig : {std::vector<int>{1, 1, 1, 1}, std::vector<int>{1, 1, 1, -1}}) {
    const auto cx = make_complex(simple_algebra(3, sig), Action::Adjoint);
    std::size_t disagreements = 0;
    std::size_t cocycles = 0;
    const auto dim = static_cast<Eigen::Index>(cx->cochain_dim(1));
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto t = cocycle_symmetry_test(unit_cochain(cx, 1, i));
      if (t.is_cocycle != t.is_symmetric) ++disagreements;
      if (t.is_cocycle) ++cocycles;
    }
    const std::string name = sig.back() < 0 ? "A4 Lorentz" : "A4";
    c.expect(disagreements == 0, name + " disagreements " + std::to_string(disagreements));
    c.note(name + ": " + std::to_string(dim) + " basis cochains, " + std::to_string(cocycles) + " cocycles, " +
           std::to_string(disagreements) + " disagreements");
  }
}

void killing_contrast(Check& c, const SuiteOptions&) {
  const auto g = wedge_gram_matrix(simple(3));
  QMatrix expected = QMatrix::Identity(6, 6) * Rational(-2);
  c.expect(g.matrix == expected, "A4 Gram matrix is -2 I");
  const Algebra s = a4a4();
  const auto gs = wedge_gram_matrix(s);
  c.expect(gs.rank == 12 && gs.nullity == 16, "A4+A4 rank " + std::to_string(gs.rank));
  const MultiIndexBasis wedges(8, 2, BasisMode::Wedge);
  bool cross = true;
  for (const auto& v : gs.null_basis)
    for (Eigen::Index i = 0; i < v.coords.size(); ++i)
      if (!v.coords(i).is_zero()) {
        const auto& w = wedges[static_cast<std::size_t>(i)];
        cross = cross && w[0] < 4 && w[1] >= 4;
      }
  c.expect(cross, "null vectors are cross-ideal wedges");
  const auto k = kasymov_nondegenerate(s);
  c.expect(k.nondegenerate, "Kasymov form on A4+A4 nondegenerate");
  c.note("A4 Gram -2 I6; A4+A4 rank " + std::to_string(gs.rank) + " nullity " + std::to_string(gs.nullity) +
         ", Kasymov nondegenerate over " + std::to_string(k.fillers) + " fillers");
}

void associated_lie(Check& c, const SuiteOptions&) {
  for (const auto& sig : {std::vector<int>{1, 1, 1, 1}, std::vector<int>{1, 1, 1, -1}}) {
    const auto l = associated_lie_algebra(simple_algebra(3, sig));
    const bool euclid = sig.back() > 0;
    const std::string name = euclid ? "A4" : "A4 Lorentz";
    c.expect(l.dim == 6 && l.antisymmetric && l.jacobi, name + " associated Lie algebra");
    if (euclid) c.expect(l.killing_negative_definite, "A4 Killing form negative definite");
    c.note(name + " dim " + std::to_string(l.dim));
  }
}

void trivializers(Check& c, const SuiteOptions& o) {
  auto g = rng_for(o, 9);
  const auto run = [&](const std::string& name, std::size_t count, const std::function<Cochain()>& make,
                       const std::function<Cochain(const Cochain&)>& solve) {
    std::size_t good = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const Cochain cc = make();
      try {
        if (coboundary(solve(cc)) == cc) ++good;
      } catch (const VerificationFailure&) {
      }
    }
    c.expect(good == count, name);
    c.note(name + " " + std::to_string(good) + "/" + std::to_string(count));
  };
  for (int n = 3; n <= std::min(o.max_n, 4); ++n) {
    const auto cx = make_complex(simple(n), Action::Trivial);
    const auto basis = cocycle_basis(cx, 1);
    run("trivial A" + std::to_string(n + 1), 100, [&] { return random_combination(basis, cx, 1, g); },
        trivialize_trivial_simple);
  }
  const auto ad = make_complex(simple(3), Action::Adjoint);
  run("adjoint A4", 100, [&] { return from_dual_coordinates(ad, random_symmetric(g, 4)); }, trivialize_adjoint_simple);
  for (Action act : {Action::Trivial, Action::Adjoint}) {
    const auto cx = make_complex(a4a4(), act);
    const auto basis = cocycle_basis(cx, 1);
    run(to_string(act) + " A4+A4", 50, [&] { return random_combination(basis, cx, 1, g); }, trivialize_semisimple);
  }
}

void extensions(Check& c, const SuiteOptions&) {
  const Algebra a = simple(3);
  const auto cx = make_complex(a, Action::Trivial);
  std::size_t fi = 0;
  std::size_t removed = 0;
  const auto dim = static_cast<Eigen::Index>(cx->cochain_dim(1));
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Cochain cc = unit_cochain(cx, 1, i);
    const auto ext = central_extend(a, cc);
    if (ext.fi.passed) ++fi;
    if (trivialize_extension(ext, trivialize_trivial_simple(cc)).success) ++removed;
  }
  c.expect(fi == static_cast<std::size_t>(dim) && removed == fi, "A4 extensions");
  Algebra nil(3, 5);
  nil.set_constant(std::vector<int>{0, 1, 2}, 4, Rational(1));
  const auto ncx = make_complex(nil, Action::Trivial);
  Cochain bad = Cochain::zero(ncx, 1);
  bad.set({{0, 3}}, 4, 0, Rational(1));
  const auto ext = central_extend(nil, bad);
  c.expect(!is_cocycle(bad) && !ext.fi.passed && ext.fi.witness.has_value(), "non-cocycle extension fails FI");
  c.note(std::to_string(fi) + "/" + std::to_string(dim) + " basis extensions satisfy FI, " + std::to_string(removed) +
         " trivialized; nilpotent non-cocycle: " + std::to_string(ext.fi.failures) + " FI failures");
}

void deformations(Check& c, const SuiteOptions& o) {
  const Algebra a = simple(3);
  const auto cx = make_complex(a, Action::Adjoint);
  const auto basis = cocycle_basis(cx, 1);
  std::size_t first = 0;
  std::size_t recovered = 0;
  for (const auto& z : basis) {
    const Deformation def = deform(a, z);
    if (fi_residual_orders(def)[1].passed) ++first;
    if (trivialize_deformation(def, trivialize_adjoint_simple(z)).success) ++recovered;
  }
  c.expect(first == basis.size() && recovered == basis.size(), "Z^1 basis deformations");
  bool detected = false;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(cx->cochain_dim(1)) && !detected; ++i) {
    const Cochain u = unit_cochain(cx, 1, i);
    if (!is_cocycle(u)) detected = !fi_residual_orders(deform(a, u))[1].passed;
  }
  c.expect(detected, "non-cocycle has a first-order FI residual");
  auto g = rng_for(o, 11);
  std::vector<Cochain> cs;
  for (int i = 0; i < 100; ++i) cs.push_back(random_combination(basis, cx, 1, g));
  std::size_t closed = 0;
  for (const auto& r : obstruction_cocycles(a, cs))
    if (r.gamma_closed) ++closed;
  c.expect(closed == cs.size(), "obstruction cocycles closed");
  c.note(std::to_string(first) + "/" + std::to_string(basis.size()) + " Z^1 deformations pass at order 1, " +
         std::to_string(recovered) + " trivialized; " + std::to_string(closed) + "/100 obstructions closed");
}

void non_rigid(Check& c, const SuiteOptions&) {
  const Algebra ab = abelian_algebra(3, 4);
  const auto cx = make_complex(ab, Action::Adjoint);
  const auto d = cohomology_dims(*cx, 1);
  c.expect(d.dim_h == 16, "abelian H^1 " + dims_text(d));
  const Cochain alpha = constants_as_cochain(cx, simple(3));
  const Deformation def = deform(ab, alpha);
  c.expect(is_cocycle(alpha) && fi_residual_orders(def)[1].passed, "A4 constants are a first-order deformation");
  c.expect(!solvable(*cx, 0, alpha), "A4 constants are not a coboundary");
  c.expect(!trivialize_deformation(def, Cochain::zero(cx, 0)).success, "deformation is not trivial");
  c.note("abelian d=4 n=3 adjoint " + dims_text(d) + "; the A4 bracket is a non-trivial deformation");
}

void leibniz(Check& c, const SuiteOptions&) {
  const Algebra s = a4a4();
  const NLeibnizAlgebra l = associated_leibniz_algebra(s);
  const auto r = check_leibniz_identity(l);
  c.expect(l.dim() == 28 && r.passed, "left Leibniz identity");
  const auto x = fundamental(s, std::vector<int>{0, 4});
  const auto y = fundamental(s, std::vector<int>{1, 2});
  const auto xy = compose(s, x, y).coords;
  const auto yx = compose(s, y, x).coords;
  const bool witness = is_zero(QMatrix(xy)) && !is_zero(QMatrix(yx));
  c.expect(witness && !l.is_antisymmetric(), "non-antisymmetry witness");
  c.note("dim " + std::to_string(l.dim()) + ", " + std::to_string(r.checked) +
         " tuples checked; (e1,f1).(e2,e3) = 0, (e2,e3).(e1,f1) != 0");
}

struct Entry {
  const char* name;
  void (*run)(Check&, const SuiteOptions&);
};

const Entry entries[suite_criteria] = {
    {"FI exhaustive", fi_exhaustive},
    {"fundamental identities", fundamental_identities},
    {"coboundary squares to zero", delta_squared},
    {"Whitehead, trivial action", whitehead_trivial},
    {"Whitehead, adjoint action", whitehead_adjoint},
    {"cocycle iff symmetric dual coordinates", cocycle_symmetry},
    {"Killing contrast", killing_contrast},
    {"associated Lie algebra", associated_lie},
    {"constructive trivializers", trivializers},
    {"central extensions", extensions},
    {"deformations", deformations},
    {"non-rigid contrast", non_rigid},
    {"Leibniz layer", leibniz},
};

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& opts) {
  if (id < 1 || id > suite_criteria) throw InputError("no criterion " + std::to_string(id));
  if (opts.max_n < 3) throw InputError("max-n must be at least 3");
  const Entry& e = entries[id - 1];
  CriterionResult r{id, e.name, false, "", 0};
  const auto start = std::chrono::steady_clock::now();
  Check c;
  try {
    e.run(c, opts);
  } catch (const std::exception& ex) {
    c.expect(false, std::string("exception: ") + ex.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = c.ok;
  r.detail = c.out.str();
  return r;
}

std::vector<CriterionResult> run_whitehead_suite(const SuiteOptions& opts) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= suite_criteria; ++id) out.push_back(run_criterion(id, opts));
  return out;
}

}  // namespace filicoh
