#include "filicoh/algebra.hpp"

#include "filicoh/linalg.hpp"

namespace filicoh {

Algebra simple_algebra(int n, const std::vector<int>& signature) {
  if (n < 2) throw InputError("arity must be at least 2");
  if (static_cast<int>(signature.size()) != n + 1) throw InputError("signature must have n+1 entries");
  for (int s : signature)
    if (s != 1 && s != -1) throw InputError("signature entries must be +1 or -1");
  Algebra a(n, n + 1);
  for (int i = 0; i <= n; ++i) {
    MultiIndex idx;
    for (int j = 0; j <= n; ++j)
      if (j != i) idx.push_back(j);
    // 0-based i corresponds to the sign (−1)^{(i+1)+1}.
    const int sign = (i % 2 == 0) ? 1 : -1;
    a.set_constant(idx, i, Rational(sign * signature[static_cast<std::size_t>(i)]));
  }
  a.set_signature(signature);
  a.set_ideals(std::vector<IndexRange>{{0, n + 1}});
  return a;
}

std::vector<int> parse_signature(const std::string& text) {
  std::vector<int> out;
  for (char c : text) {
    if (c == '+')
      out.push_back(1);
    else if (c == '-')
      out.push_back(-1);
    else
      throw InputError("signature may only contain '+' and '-'");
  }
  return out;
}

Algebra abelian_algebra(int n, int d) { return Algebra(n, d); }

Algebra direct_sum(const std::vector<Algebra>& parts) {
  if (parts.empty()) throw InputError("direct sum of no algebras");
  if (parts.size() == 1) return parts.front();
  const int n = parts.front().n();
  int d = 0;
  for (const auto& p : parts) {
    if (p.n() != n) throw InputError("direct sum summands must share the arity");
    d += p.dim();
  }
  Algebra out(n, d);
  std::vector<IndexRange> blocks;
  int offset = 0;
  for (const auto& p : parts) {
    for (std::size_t k = 0; k < p.wedge().size(); ++k) {
      MultiIndex idx = p.wedge()[k];
      for (int& i : idx) i += offset;
      for (const auto& [b, v] : p.constants(k)) out.set_constant(idx, b + offset, v);
    }
    // Nested declared blocks are kept; otherwise the summand is one block.
    if (p.ideals() && p.ideals()->size() > 1) {
      for (const auto& r : *p.ideals()) blocks.push_back({r.lo + offset, r.hi + offset});
    } else {
      blocks.push_back({offset, offset + p.dim()});
    }
    offset += p.dim();
  }
  out.set_ideals(blocks);
  return out;
}

Algebra restrict_to_block(const Algebra& a, IndexRange block) {
  if (block.lo < 0 || block.hi > a.dim() || block.size() < 1) throw InputError("block out of range");
  Algebra out(a.n(), block.size());
  for (std::size_t k = 0; k < a.wedge().size(); ++k) {
    const MultiIndex& idx = a.wedge()[k];
    if (!std::all_of(idx.begin(), idx.end(), [&](int i) { return block.contains(i); })) continue;
    MultiIndex local = idx;
    for (int& i : local) i -= block.lo;
    for (const auto& [b, v] : a.constants(k)) {
      if (!block.contains(b)) throw InputError("block is not closed under the bracket");
      out.set_constant(local, b - block.lo, v);
    }
  }
  return out;
}

std::optional<std::vector<int>> recognize_simple(const Algebra& a, IndexRange block) {
  const int n = a.n();
  if (block.size() != n + 1) return std::nullopt;
  const Algebra local = restrict_to_block(a, block);
  std::vector<int> sig;
  for (int i = 0; i <= n; ++i) {
    MultiIndex idx;
    for (int j = 0; j <= n; ++j)
      if (j != i) idx.push_back(j);
    const Rational c = local.constant(*local.wedge().index_of(idx), i);
    const int sign = (i % 2 == 0) ? 1 : -1;
    if (c == Rational(sign))
      sig.push_back(1);
    else if (c == Rational(-sign))
      sig.push_back(-1);
    else
      return std::nullopt;
  }
  Algebra reference = simple_algebra(n, sig);
  reference.set_signature(std::nullopt);
  reference.set_ideals(std::nullopt);
  if (!(reference == local)) return std::nullopt;
  return sig;
}

std::vector<IndexRange> blocks_of(const Algebra& a) {
  if (a.ideals()) return *a.ideals();
  return {{0, a.dim()}};
}

namespace {

std::vector<QVector> span_basis(const std::vector<QVector>& vectors, int d) {
  SpanBasis sb(d);
  std::vector<QVector> out;
  for (const auto& v : vectors)
    if (sb.insert(v)) out.push_back(v);
  return out;
}

/// Brackets with k slots filled by distinct elements of `first` and the rest by
/// increasing basis vectors.
std::vector<QVector> mixed_brackets(const Algebra& a, const std::vector<QVector>& first, int k) {
  const int d = a.dim();
  const int n = a.n();
  std::vector<QVector> basis_vectors;
  for (int i = 0; i < d; ++i) basis_vectors.push_back(unit_vector(d, i));
  std::vector<QVector> out;
  const MultiIndexBasis picks(static_cast<int>(first.size()), k, BasisMode::Wedge);
  const MultiIndexBasis rest(d, n - k, BasisMode::Wedge);
  for (const auto& p : picks.elements()) {
    for (const auto& r : rest.elements()) {
      std::vector<QVector> args;
      for (int i : p) args.push_back(first[static_cast<std::size_t>(i)]);
      for (int i : r) args.push_back(basis_vectors[static_cast<std::size_t>(i)]);
      QVector v = a.bracket(args);
      if (!is_zero(QMatrix(v))) out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

bool is_ideal(const Algebra& a, const std::vector<QVector>& subspace) {
  const int d = a.dim();
  SpanBasis sb(d);
  std::vector<QVector> gens;
  for (const auto& v : subspace) {
    if (v.size() != d) throw InputError("subspace vector has wrong dimension");
    if (sb.insert(v)) gens.push_back(v);
  }
  const MultiIndexBasis xs(d, a.n() - 1, BasisMode::Wedge);
  for (const auto& x : xs.elements()) {
    for (const auto& z : gens) {
      std::vector<QVector> args;
      for (int i : x) args.push_back(unit_vector(d, i));
      args.push_back(z);
      if (!sb.contains(a.bracket(args))) return false;
    }
  }
  return true;
}

std::vector<std::size_t> derived_series(const Algebra& a, const std::vector<QVector>& subspace, int k) {
  if (k < 2 || k > a.n()) throw InputError("solvability order must lie in 2..n");
  if (!is_ideal(a, subspace)) throw InputError("derived series needs an ideal");
  const int d = a.dim();
  std::vector<QVector> cur = span_basis(subspace, d);
  std::vector<std::size_t> dims{cur.size()};
  for (int step = 0; step <= d + 1 && !cur.empty(); ++step) {
    std::vector<QVector> next = span_basis(mixed_brackets(a, cur, k), d);
    dims.push_back(next.size());
    bool same = next.size() == cur.size();
    if (same) {
      SpanBasis sb(d);
      for (const auto& v : cur) sb.insert(v);
      for (const auto& v : next)
        if (!sb.contains(v)) same = false;
    }
    if (same) break;
    cur = std::move(next);
  }
  return dims;
}

}  // namespace filicoh
