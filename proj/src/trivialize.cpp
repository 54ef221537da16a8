#include "filicoh/trivialize.hpp"

#include <functional>
#include <map>
#include <mutex>

namespace filicoh {

namespace {

std::vector<int> simple_signature(const Algebra& a) {
  const auto sig = recognize_simple(a, {0, a.dim()});
  if (!sig) throw InputError("algebra is not a simple algebra A_{n+1}");
  return *sig;
}

/// Increasing complement of k in 0..n.
MultiIndex complement(int n, int k) {
  MultiIndex s;
  for (int i = 0; i <= n; ++i)
    if (i != k) s.push_back(i);
  return s;
}

int complement_sign(int n, int k) { return (n - k) % 2 == 0 ? 1 : -1; }

QVector value_at(const Cochain& c, const MultiIndex& s) {
  return c.value({MultiIndex(s.begin(), s.end() - 1)}, s.back());
}

void require_degree_one(const Cochain& c, Action action) {
  if (c.p != 1) throw InputError("expected a 1-cochain");
  if (c.action() != action) throw InputError("expected a " + to_string(action) + " cochain");
  if (c.layout != Layout::Packed) throw InputError("expected a packed cochain");
}

Cochain trivial_candidate(const Cochain& c, const std::vector<int>& sig, int s) {
  const int n = c.complex->n();
  Cochain beta = Cochain::zero(c.complex, 0);
  for (int k = 0; k <= n; ++k) {
    const Rational a = value_at(c, complement(n, k))(0);
    beta.coeffs(k) = Rational(s * sig[static_cast<std::size_t>(k)] * complement_sign(n, k)) * a;
  }
  return beta;
}

Cochain adjoint_candidate(const Cochain& c, const std::vector<int>& sig, int s) {
  const int n = c.complex->n();
  const int d = n + 1;
  const QMatrix dual = dual_coordinates(c);
  Rational trace(0);
  for (int i = 0; i < d; ++i) trace += Rational(sig[static_cast<std::size_t>(i)]) * dual(i, i);
  const Rational scale = Rational(-s * (n % 2 == 0 ? 1 : -1), 2);
  Cochain beta = Cochain::zero(c.complex, 0);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) {
      Rational v = Rational(sig[static_cast<std::size_t>(k)]) * dual(j, k);
      if (j == k) v -= trace / Rational(n - 1);
      beta.coeffs(k * d + j) = scale * v;
    }
  return beta;
}

Cochain candidate(const Cochain& c, const std::vector<int>& sig, int s) {
  return c.action() == Action::Trivial ? trivial_candidate(c, sig, s) : adjoint_candidate(c, sig, s);
}

bool trivializes(const Cochain& beta, const Cochain& c) {
  const Cochain db = coboundary(beta);
  return db.layout == c.layout && db.coeffs == c.coeffs;
}

}  // namespace

QMatrix dual_coordinates(const Cochain& c) {
  require_degree_one(c, Action::Adjoint);
  simple_signature(c.complex->algebra());
  const int n = c.complex->n();
  const int d = n + 1;
  QMatrix out = zero_matrix(d, d);
  for (int k = 0; k < d; ++k) {
    const QVector v = value_at(c, complement(n, k));
    for (int j = 0; j < d; ++j) out(j, k) = Rational(complement_sign(n, k)) * v(j);
  }
  return out;
}

Cochain from_dual_coordinates(const ComplexPtr& cx, const QMatrix& dual) {
  if (cx->action() != Action::Adjoint) throw InputError("dual coordinates describe adjoint cochains");
  simple_signature(cx->algebra());
  const int n = cx->n();
  const int d = n + 1;
  if (dual.rows() != d || dual.cols() != d) throw InputError("dual coordinate matrix has the wrong size");
  Cochain c = Cochain::zero(cx, 1);
  for (int k = 0; k < d; ++k) {
    const MultiIndex s = complement(n, k);
    for (int j = 0; j < d; ++j)
      c.set({MultiIndex(s.begin(), s.end() - 1)}, s.back(), j, Rational(complement_sign(n, k)) * dual(j, k));
  }
  return c;
}

CocycleSymmetry cocycle_symmetry_test(const Cochain& c) {
  const QMatrix dual = dual_coordinates(c);
  CocycleSymmetry out;
  out.is_symmetric = dual == dual.transpose();
  out.is_cocycle = is_cocycle(c);
  return out;
}

int trivializer_sign(Action action, const std::vector<int>& signature) {
  static std::mutex mu;
  static std::map<std::pair<Action, std::vector<int>>, int> cache;
  const std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(action, signature);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const int n = static_cast<int>(signature.size()) - 1;
  const auto cx = make_complex(simple_algebra(n, signature), action);
  const auto basis = cocycle_basis(cx, 1);
  const int expected = action == Action::Trivial ? (n % 2 == 0 ? -1 : 1) : 1;
  for (int s : {expected, -expected}) {
    bool ok = true;
    for (const auto& b : basis)
      if (!trivializes(candidate(b, signature, s), b)) {
        ok = false;
        break;
      }
    if (ok) {
      cache.emplace(key, s);
      return s;
    }
  }
  throw VerificationFailure("simple trivializer fails for both global signs");
}

Cochain trivialize_trivial_simple(const Cochain& c) {
  require_degree_one(c, Action::Trivial);
  const auto sig = simple_signature(c.complex->algebra());
  if (!is_cocycle(c)) throw NotACocycle("cochain is not a cocycle");
  Cochain beta = trivial_candidate(c, sig, trivializer_sign(Action::Trivial, sig));
  if (!trivializes(beta, c)) throw VerificationFailure("trivializer check failed");
  return beta;
}

Cochain trivialize_adjoint_simple(const Cochain& c) {
  require_degree_one(c, Action::Adjoint);
  const auto sig = simple_signature(c.complex->algebra());
  if (!is_cocycle(c)) throw NotACocycle("cochain is not a cocycle");
  Cochain beta = adjoint_candidate(c, sig, trivializer_sign(Action::Adjoint, sig));
  if (!trivializes(beta, c)) throw VerificationFailure("trivializer check failed");
  return beta;
}

namespace {

/// Cochain on a block-local complex read from c; `component` maps a local value
/// index to the global value index.
Cochain restrict_cochain(const Cochain& c, const ComplexPtr& local, int lo, const std::function<int(int)>& component) {
  Cochain out = Cochain::zero(local, 1);
  for (std::size_t k = 0; k < local->cochain_dim(1); ++k) {
    auto dec = local->decode(1, k);
    for (auto& b : dec.blocks)
      for (int& i : b) i += lo;
    out.coeffs(static_cast<Eigen::Index>(k)) = c.value(dec.blocks, dec.z + lo)(component(dec.value));
  }
  return out;
}

}  // namespace

Cochain trivialize_semisimple(const Cochain& c) {
  const Action action = c.action();
  require_degree_one(c, action);
  const Algebra& a = c.complex->algebra();
  const int d = a.dim();
  struct Block {
    IndexRange range;
    ComplexPtr trivial;
    ComplexPtr adjoint;
  };
  std::vector<Block> blocks;
  for (const auto& r : blocks_of(a)) {
    const auto sig = recognize_simple(a, r);
    if (!sig) throw InputError("block is not a simple algebra A_{n+1}");
    const Algebra local = simple_algebra(a.n(), *sig);
    blocks.push_back({r, make_complex(local, Action::Trivial), make_complex(local, Action::Adjoint)});
  }
  if (!is_cocycle(c)) throw NotACocycle("cochain is not a cocycle");

  Cochain beta = Cochain::zero(c.complex, 0);
  for (const auto& b : blocks) {
    const int lo = b.range.lo;
    if (action == Action::Trivial) {
      const Cochain local = restrict_cochain(c, b.trivial, lo, [](int) { return 0; });
      const Cochain lb = trivialize_trivial_simple(local);
      for (int k = 0; k < b.range.size(); ++k) beta.coeffs(lo + k) += lb.coeffs(k);
      continue;
    }
    const int ld = b.range.size();
    const Cochain diag = restrict_cochain(c, b.adjoint, lo, [lo](int v) { return lo + v; });
    const Cochain lb = trivialize_adjoint_simple(diag);
    for (int k = 0; k < ld; ++k)
      for (int j = 0; j < ld; ++j) beta.coeffs((lo + k) * d + lo + j) += lb.coeffs(k * ld + j);
    for (const auto& other : blocks) {
      if (other.range == b.range) continue;
      for (int m = other.range.lo; m < other.range.hi; ++m) {
        const Cochain cross = restrict_cochain(c, b.trivial, lo, [m](int) { return m; });
        const Cochain g = trivialize_trivial_simple(cross);
        for (int k = 0; k < ld; ++k) beta.coeffs((lo + k) * d + m) += g.coeffs(k);
      }
    }
  }
  if (!trivializes(beta, c)) throw VerificationFailure("assembled trivializer check failed");
  return beta;
}

}  // namespace filicoh
