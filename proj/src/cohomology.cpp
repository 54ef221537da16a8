#include "filicoh/cohomology.hpp"

#include <array>
#include <iostream>
#include <type_traits>

#include "filicoh/fundamental.hpp"

namespace filicoh {

std::string to_string(Action a) { return a == Action::Trivial ? "trivial" : "adjoint"; }

Action parse_action(const std::string& s) {
  if (s == "trivial") return Action::Trivial;
  if (s == "adjoint") return Action::Adjoint;
  throw InputError("action must be 'trivial' or 'adjoint', got '" + s + "'");
}

namespace {

constexpr int kMaxDegree = 3;

template <class T>
T convert(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else {
    return static_cast<T>(q.small_num());
  }
}

template <class T>
bool value_is_zero(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return v.is_zero();
  } else {
    return v == 0;
  }
}

template <class T>
T abs_value(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return abs(v);
  } else {
    return v < 0 ? -v : v;
  }
}

template <class T>
SparseVec<T> converted(const SparseVec<Rational>& v) {
  SparseVec<T> out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, convert<T>(x));
  return out;
}

template <class T>
DeltaTables<T> build_tables(const Algebra& a, Action action, const FundamentalOps& ops) {
  DeltaTables<T> t;
  t.d = a.dim();
  t.n = a.n();
  t.adjoint = action == Action::Adjoint;
  t.vd = t.adjoint ? t.d : 1;
  t.nw = ops.size();
  t.nn = a.wedge().size();
  t.wedge_sets = ops.basis().elements();
  const auto track = [&](const SparseVec<T>& v) {
    for (const auto& [i, x] : v)
      if (abs_value(x) > t.max_abs_coef) t.max_abs_coef = abs_value(x);
  };
  t.comp.resize(t.nw * t.nw);
  for (std::size_t i = 0; i < t.nw; ++i)
    for (std::size_t j = 0; j < t.nw; ++j) {
      t.comp[i * t.nw + j] = converted<T>(ops.compose_basis(i, j));
      track(t.comp[i * t.nw + j]);
    }
  const auto d = static_cast<std::size_t>(t.d);
  t.act.resize(t.nw * d);
  t.last.resize(t.nw * d);
  for (std::size_t w = 0; w < t.nw; ++w) {
    MultiIndex args = t.wedge_sets[w];
    args.push_back(0);
    for (int z = 0; z < t.d; ++z) {
      args.back() = z;
      t.act[w * d + static_cast<std::size_t>(z)] = converted<T>(a.bracket_basis(args));
      track(t.act[w * d + static_cast<std::size_t>(z)]);
      const WedgeTerm wt = wedge_expand(args);
      if (wt.sign == 0) {
        t.last[w * d + static_cast<std::size_t>(z)] = {-1, 0};
      } else {
        t.last[w * d + static_cast<std::size_t>(z)] = {static_cast<int>(*a.wedge().index_of(*wt.canonical)), wt.sign};
      }
    }
  }
  if (t.adjoint) {
    const auto slots = static_cast<std::size_t>(t.n - 1);
    t.repl.resize(t.nw * slots * d * d);
    for (std::size_t w = 0; w < t.nw; ++w)
      for (std::size_t i = 0; i < slots; ++i)
        for (int v = 0; v < t.d; ++v) {
          MultiIndex args = t.wedge_sets[w];
          args[i] = v;
          args.push_back(0);
          for (int z = 0; z < t.d; ++z) {
            args.back() = z;
            auto& slot = t.repl[((w * slots + i) * d + static_cast<std::size_t>(v)) * d + static_cast<std::size_t>(z)];
            slot = converted<T>(a.bracket_basis(args));
            track(slot);
          }
        }
  }
  return t;
}

template <class T>
std::size_t max_terms(const DeltaTables<T>& t) {
  std::size_t m = 1;
  for (const auto* table : {&t.comp, &t.act, &t.repl})
    for (const auto& v : *table) m = std::max(m, v.size());
  return m;
}

/// Base index and sign of the source coordinate at blocks (p entries) and z.
template <class T>
struct Locator {
  const DeltaTables<T>& t;
  int p;
  Layout layout;

  bool operator()(const int* blocks, int z, std::size_t& base, int& sign) const {
    if (p == 0) {
      base = static_cast<std::size_t>(z);
      sign = 1;
      return true;
    }
    std::size_t b = 0;
    if (layout == Layout::Packed) {
      const auto [nidx, s] = t.last[static_cast<std::size_t>(blocks[p - 1]) * static_cast<std::size_t>(t.d) + static_cast<std::size_t>(z)];
      if (s == 0) return false;
      for (int i = 0; i < p - 1; ++i) b = b * t.nw + static_cast<std::size_t>(blocks[i]);
      base = b * t.nn + static_cast<std::size_t>(nidx);
      sign = s;
      return true;
    }
    for (int i = 0; i < p; ++i) b = b * t.nw + static_cast<std::size_t>(blocks[i]);
    base = b * static_cast<std::size_t>(t.d) + static_cast<std::size_t>(z);
    sign = 1;
    return true;
  }
};

/// Evaluates δα at the degree p+1 argument tuple (ws[0..p], z) for a source α of
/// degree p. The source receives add(m, coef, coord): value component m of the
/// result gains coef times source coordinate coord.
template <class T, class Src>
void eval_delta(const DeltaTables<T>& t, int p, Layout layout, const int* ws, int z, Src& src) {
  const Locator<T> loc{t, p, layout};
  const int vd = t.vd;
  const auto d = static_cast<std::size_t>(t.d);
  std::array<int, kMaxDegree + 1> buf{};
  std::size_t base = 0;
  int sg = 0;
  const auto drop = [&](int skip) {
    int k = 0;
    for (int r = 0; r <= p; ++r)
      if (r != skip) buf[static_cast<std::size_t>(k++)] = ws[r];
  };
  const auto add_all = [&](const T& coef) {
    for (int v = 0; v < vd; ++v) src.add(v, coef, base * static_cast<std::size_t>(vd) + static_cast<std::size_t>(v));
  };

  for (int i = 0; i <= p; ++i) {
    const T si = (i % 2 == 0) ? T(-1) : T(1);
    for (int j = i + 1; j <= p; ++j) {
      drop(i);
      for (const auto& [w, c] : t.comp[static_cast<std::size_t>(ws[i]) * t.nw + static_cast<std::size_t>(ws[j])]) {
        buf[static_cast<std::size_t>(j - 1)] = w;
        if (loc(buf.data(), z, base, sg)) add_all(si * c * T(sg));
      }
    }
    drop(i);
    for (const auto& [zz, c] : t.act[static_cast<std::size_t>(ws[i]) * d + static_cast<std::size_t>(z)])
      if (loc(buf.data(), zz, base, sg)) add_all(si * c * T(sg));
  }
  if (!t.adjoint) return;

  for (int j = 0; j <= p; ++j) {
    const T sj = (j % 2 == 0) ? T(1) : T(-1);
    drop(j);
    if (!loc(buf.data(), z, base, sg)) continue;
    for (int v = 0; v < vd; ++v)
      for (const auto& [m, c] : t.act[static_cast<std::size_t>(ws[j]) * d + static_cast<std::size_t>(v)])
        src.add(m, sj * c * T(sg), base * static_cast<std::size_t>(vd) + static_cast<std::size_t>(v));
  }
  const T s4 = (p % 2 == 0) ? T(1) : T(-1);
  const auto w = static_cast<std::size_t>(ws[p]);
  const MultiIndex& y = t.wedge_sets[w];
  const auto slots = static_cast<std::size_t>(t.n - 1);
  for (std::size_t i = 0; i < slots; ++i) {
    if (!loc(ws, y[i], base, sg)) continue;
    for (int v = 0; v < vd; ++v)
      for (const auto& [m, c] : t.repl[((w * slots + i) * d + static_cast<std::size_t>(v)) * d + static_cast<std::size_t>(z)])
        src.add(m, s4 * c * T(sg), base * static_cast<std::size_t>(vd) + static_cast<std::size_t>(v));
  }
}

/// Reads several cochains stored lane-interleaved: coordinate k of lane l at k*lanes+l.
template <class T>
struct LaneSource {
  const T* src;
  std::size_t lanes;
  T* out;

  void add(int m, const T& coef, std::size_t coord) {
    const T* s = src + coord * lanes;
    T* o = out + static_cast<std::size_t>(m) * lanes;
    if constexpr (std::is_same_v<T, Rational>) {
      for (std::size_t l = 0; l < lanes; ++l)
        if (!s[l].is_zero()) o[l] += coef * s[l];
    } else {
      for (std::size_t l = 0; l < lanes; ++l) o[l] += coef * s[l];
    }
  }
};

struct RowSource {
  std::vector<SparseRow>* rows;
  void add(int m, const Rational& coef, std::size_t coord) {
    (*rows)[static_cast<std::size_t>(m)].emplace_back(static_cast<int>(coord), coef);
  }
};

/// Calls f(ws, z, tuple_index) for every degree q argument tuple; f returns
/// false to stop early.
template <class T, class F>
void for_each_tuple(const DeltaTables<T>& t, int q, F&& f) {
  std::array<int, kMaxDegree + 1> ws{};
  std::size_t count = 1;
  for (int i = 0; i < q; ++i) count *= t.nw;
  for (std::size_t b = 0; b < count; ++b) {
    std::size_t r = b;
    for (int i = q - 1; i >= 0; --i) {
      ws[static_cast<std::size_t>(i)] = static_cast<int>(r % t.nw);
      r /= t.nw;
    }
    for (int z = 0; z < t.d; ++z)
      if (!f(ws.data(), z, b * static_cast<std::size_t>(t.d) + static_cast<std::size_t>(z))) return;
  }
}

/// Raw values of δ applied to `lanes` interleaved degree-p sources.
template <class T>
std::vector<T> raw_coboundary(const DeltaTables<T>& t, int p, Layout layout, const std::vector<T>& src, std::size_t lanes,
                              std::size_t tuples) {
  const auto width = static_cast<std::size_t>(t.vd) * lanes;
  std::vector<T> out(tuples * width, T(0));
  for_each_tuple(t, p + 1, [&](const int* ws, int z, std::size_t idx) {
    LaneSource<T> s{src.data(), lanes, out.data() + idx * width};
    eval_delta(t, p, layout, ws, z, s);
    return true;
  });
  return out;
}

/// Moves raw degree-q values into the packed layout; false if the raw values
/// lack the packed symmetry.
template <class T>
bool pack_raw(const CochainComplex& cx, const DeltaTables<T>& t, int q, const std::vector<T>& raw, std::size_t lanes,
              std::vector<T>& packed) {
  const auto vd = static_cast<std::size_t>(t.vd);
  const std::size_t width = vd * lanes;
  packed.assign(cx.cochain_dim(q) * lanes, T(0));
  std::vector<char> seen(cx.cochain_dim(q) / vd, 0);
  const Locator<T> loc{t, q, Layout::Packed};
  bool ok = true;
  for_each_tuple(t, q, [&](const int* ws, int z, std::size_t idx) {
    std::size_t base = 0;
    int sg = 0;
    const T* r = raw.data() + idx * width;
    if (!loc(ws, z, base, sg)) {
      for (std::size_t k = 0; k < width; ++k)
        if (!value_is_zero(r[k])) ok = false;
      return ok;
    }
    T* dst = packed.data() + base * width;
    for (std::size_t k = 0; k < width; ++k) {
      const T v = sg > 0 ? r[k] : T(-r[k]);
      if (!seen[base])
        dst[k] = v;
      else if (!(dst[k] == v))
        ok = false;
    }
    seen[base] = 1;
    return ok;
  });
  return ok;
}

}  // namespace

CochainComplex::CochainComplex(Algebra a, Action action)
    : alg_(std::move(a)), action_(action), blocks_(alg_.dim(), alg_.n() - 1, BasisMode::Wedge) {
  const FundamentalOps ops(alg_);
  tables_ = build_tables<Rational>(alg_, action_, ops);
  bool integral = true;
  for (std::size_t k = 0; k < alg_.wedge().size() && integral; ++k)
    for (const auto& [b, v] : alg_.constants(k))
      if (!v.is_integer() || !v.is_small() || abs(v) > Rational(1 << 20)) integral = false;
  if (integral) int_tables_ = build_tables<std::int64_t>(alg_, action_, ops);
}

ComplexPtr make_complex(const Algebra& a, Action action) { return std::make_shared<const CochainComplex>(a, action); }

std::size_t CochainComplex::cochain_dim(int p, Layout layout) const {
  if (p < 0) throw InputError("negative cochain degree");
  const auto vd = static_cast<std::size_t>(tables_.vd);
  if (p == 0) return static_cast<std::size_t>(dim()) * vd;
  if (layout == Layout::Raw) return tuple_count(p) * vd;
  std::size_t s = tables_.nn;
  for (int i = 1; i < p; ++i) s *= tables_.nw;
  return s * vd;
}

std::size_t CochainComplex::tuple_count(int p) const {
  std::size_t s = static_cast<std::size_t>(dim());
  for (int i = 0; i < p; ++i) s *= tables_.nw;
  return s;
}

std::optional<std::pair<std::size_t, int>> CochainComplex::locate(std::span<const int> blocks, int z, Layout layout) const {
  const int p = static_cast<int>(blocks.size());
  if (p > kMaxDegree) throw InputError("cochain degree too large");
  if (z < 0 || z >= dim()) throw InputError("cochain argument out of range");
  for (int b : blocks)
    if (b < 0 || static_cast<std::size_t>(b) >= tables_.nw) throw InputError("cochain block out of range");
  const Locator<Rational> loc{tables_, p, layout};
  std::size_t base = 0;
  int sign = 0;
  if (!loc(blocks.data(), z, base, sign)) return std::nullopt;
  return std::make_pair(base, sign);
}

CochainComplex::Decoded CochainComplex::decode(int p, std::size_t coord) const {
  Decoded out;
  const auto vd = static_cast<std::size_t>(tables_.vd);
  out.value = static_cast<int>(coord % vd);
  std::size_t base = coord / vd;
  if (p == 0) {
    out.z = static_cast<int>(base);
    return out;
  }
  const MultiIndex& s = alg_.wedge()[base % tables_.nn];
  base /= tables_.nn;
  std::vector<MultiIndex> front(static_cast<std::size_t>(p - 1));
  for (int i = p - 2; i >= 0; --i) {
    front[static_cast<std::size_t>(i)] = blocks_[base % tables_.nw];
    base /= tables_.nw;
  }
  out.blocks = std::move(front);
  out.blocks.emplace_back(s.begin(), s.end() - 1);
  out.z = s.back();
  return out;
}

Cochain Cochain::zero(ComplexPtr complex, int p, Layout layout) {
  Cochain c;
  c.p = p;
  c.layout = p == 0 ? Layout::Packed : layout;
  c.coeffs = zero_vector(static_cast<Eigen::Index>(complex->cochain_dim(p, c.layout)));
  c.complex = std::move(complex);
  return c;
}

namespace {

/// Block indices and accumulated sign for arbitrary-order blocks; sign 0 if degenerate.
std::pair<std::vector<int>, int> canonical_blocks(const CochainComplex& cx, const std::vector<MultiIndex>& blocks) {
  std::vector<int> idx;
  int sign = 1;
  for (const auto& b : blocks) {
    if (static_cast<int>(b.size()) != cx.n() - 1) throw InputError("cochain block must have n-1 entries");
    for (int i : b)
      if (i < 0 || i >= cx.dim()) throw InputError("cochain block entry out of range");
    const WedgeTerm w = wedge_expand(b);
    if (w.sign == 0) return {{}, 0};
    sign *= w.sign;
    idx.push_back(static_cast<int>(*cx.blocks().index_of(*w.canonical)));
  }
  return {idx, sign};
}

}  // namespace

QVector Cochain::value(const std::vector<MultiIndex>& blocks, int z) const {
  if (static_cast<int>(blocks.size()) != p) throw InputError("wrong number of cochain arguments");
  const auto vd = complex->value_dim();
  QVector out = zero_vector(vd);
  const auto [idx, bsign] = canonical_blocks(*complex, blocks);
  if (bsign == 0) return out;
  const auto loc = complex->locate(idx, z, layout);
  if (!loc) return out;
  const int sign = bsign * loc->second;
  for (int v = 0; v < vd; ++v) {
    const Rational& x = coeffs(static_cast<Eigen::Index>(loc->first * static_cast<std::size_t>(vd) + static_cast<std::size_t>(v)));
    out(v) = sign > 0 ? x : -x;
  }
  return out;
}

void Cochain::set(const std::vector<MultiIndex>& blocks, int z, int value_index, const Rational& v) {
  if (static_cast<int>(blocks.size()) != p) throw InputError("wrong number of cochain arguments");
  const auto vd = complex->value_dim();
  if (value_index < 0 || value_index >= vd) throw InputError("cochain value index out of range");
  const auto [idx, bsign] = canonical_blocks(*complex, blocks);
  const auto loc = bsign == 0 ? std::nullopt : complex->locate(idx, z, layout);
  if (!loc) {
    if (!v.is_zero()) throw InputError("cochain value on a repeated argument must vanish");
    return;
  }
  const int sign = bsign * loc->second;
  coeffs(static_cast<Eigen::Index>(loc->first * static_cast<std::size_t>(vd) + static_cast<std::size_t>(value_index))) =
      sign > 0 ? v : -v;
}

Cochain coboundary(const Cochain& c) {
  const CochainComplex& cx = *c.complex;
  if (c.p + 1 > kMaxDegree) throw InputError("coboundary degree too large");
  const auto& t = cx.tables();
  const std::vector<Rational> src(c.coeffs.data(), c.coeffs.data() + c.coeffs.size());
  const std::vector<Rational> raw = raw_coboundary(t, c.p, c.layout, src, 1, cx.tuple_count(c.p + 1));
  Cochain out;
  out.complex = c.complex;
  out.p = c.p + 1;
  if (out.p <= 2) {
    std::vector<Rational> packed;
    if (pack_raw(cx, t, out.p, raw, 1, packed)) {
      out.layout = Layout::Packed;
      out.coeffs = Eigen::Map<const QVector>(packed.data(), static_cast<Eigen::Index>(packed.size()));
      return out;
    }
    std::cerr << "filicoh: coboundary of a degree " << c.p
              << " cochain lacks the packed symmetry; keeping one value per argument tuple\n";
  }
  out.layout = Layout::Raw;
  out.coeffs = Eigen::Map<const QVector>(raw.data(), static_cast<Eigen::Index>(raw.size()));
  return out;
}

bool coboundary_vanishes(const Cochain& c) {
  const CochainComplex& cx = *c.complex;
  if (c.p + 1 > kMaxDegree) throw InputError("coboundary degree too large");
  const auto& t = cx.tables();
  std::vector<Rational> out(static_cast<std::size_t>(t.vd));
  bool zero = true;
  for_each_tuple(t, c.p + 1, [&](const int* ws, int z, std::size_t) {
    std::fill(out.begin(), out.end(), Rational(0));
    LaneSource<Rational> s{c.coeffs.data(), 1, out.data()};
    eval_delta(t, c.p, c.layout, ws, z, s);
    for (const auto& v : out)
      if (!v.is_zero()) zero = false;
    return zero;
  });
  return zero;
}

std::vector<SparseRow> coboundary_rows(const CochainComplex& cx, int p, const Cochain* rhs) {
  if (p < 0 || p + 1 > kMaxDegree) throw InputError("unsupported coboundary degree");
  if (rhs && (rhs->p != p + 1 || rhs->complex.get() != &cx)) throw InputError("right-hand side has the wrong degree or complex");
  const auto& t = cx.tables();
  const int extra = static_cast<int>(cx.cochain_dim(p));
  std::vector<SparseRow> rows;
  std::vector<SparseRow> local(static_cast<std::size_t>(t.vd));
  for_each_tuple(t, p + 1, [&](const int* ws, int z, std::size_t) {
    for (auto& r : local) r.clear();
    RowSource s{&local};
    eval_delta(t, p, Layout::Packed, ws, z, s);
    if (rhs) {
      const Locator<Rational> loc{t, p + 1, rhs->layout};
      std::size_t base = 0;
      int sg = 0;
      if (loc(ws, z, base, sg))
        for (int v = 0; v < t.vd; ++v) {
          const Rational& x = rhs->coeffs(static_cast<Eigen::Index>(base * static_cast<std::size_t>(t.vd) + static_cast<std::size_t>(v)));
          if (!x.is_zero()) local[static_cast<std::size_t>(v)].emplace_back(extra, sg > 0 ? x : -x);
        }
    }
    for (auto& r : local) {
      normalize(r);
      if (!r.empty()) rows.push_back(std::move(r));
      r = SparseRow{};
    }
    return true;
  });
  return rows;
}

CohomologyDims cohomology_dims(const CochainComplex& cx, int p) {
  if (p < 0 || p > 2) throw InputError("cohomology is available for degrees 0, 1 and 2");
  CohomologyDims out;
  const int cols = static_cast<int>(cx.cochain_dim(p));
  out.dim_z = static_cast<std::size_t>(cols) - sparse_rank_kernel(coboundary_rows(cx, p), cols).rank;
  if (p > 0) out.dim_b = sparse_rank_kernel(coboundary_rows(cx, p - 1), static_cast<int>(cx.cochain_dim(p - 1))).rank;
  out.dim_h = out.dim_z - out.dim_b;
  return out;
}

std::vector<Cochain> cocycle_basis(const ComplexPtr& cx, int p) {
  if (p < 0 || p > 2) throw InputError("cocycles are available for degrees 0, 1 and 2");
  const int cols = static_cast<int>(cx->cochain_dim(p));
  const RankKernel rk = sparse_rank_kernel(coboundary_rows(*cx, p), cols);
  std::vector<Cochain> out;
  for (const auto& v : rk.kernel) {
    Cochain c = Cochain::zero(cx, p);
    c.coeffs = v;
    out.push_back(std::move(c));
  }
  return out;
}

Cochain random_cochain(const ComplexPtr& cx, int p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  Cochain c = Cochain::zero(cx, p);
  for (Eigen::Index i = 0; i < c.coeffs.size(); ++i) c.coeffs(i) = Rational(num(rng), den(rng));
  return c;
}

Cochain random_combination(const std::vector<Cochain>& basis, const ComplexPtr& cx, int p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  Cochain c = Cochain::zero(cx, p);
  for (const auto& b : basis) {
    const Rational s(num(rng), den(rng));
    if (!s.is_zero()) c.coeffs += s * b.coeffs;
  }
  return c;
}

namespace {

/// Bound on the sum of absolute coefficients that δ applies to the source.
template <class T>
__int128 delta_gain(const DeltaTables<T>& t, int p) {
  const __int128 pairs = static_cast<__int128>(p + 1) * p / 2;
  __int128 terms = pairs + (p + 1);
  if (t.adjoint) terms += static_cast<__int128>((p + 1) + (t.n - 1)) * t.vd;
  return terms * static_cast<__int128>(max_terms(t)) * std::max<__int128>(1, static_cast<__int128>(t.max_abs_coef));
}

std::optional<std::vector<std::int64_t>> integer_lanes(const std::vector<Cochain>& cs, std::int64_t& max_abs) {
  const std::size_t lanes = cs.size();
  const auto size = static_cast<std::size_t>(cs.front().coeffs.size());
  std::vector<std::int64_t> out(size * lanes);
  for (std::size_t l = 0; l < lanes; ++l) {
    mpz_class scale = 1;
    for (Eigen::Index i = 0; i < cs[l].coeffs.size(); ++i) scale = lcm(scale, cs[l].coeffs(i).denominator());
    const Rational s(scale, mpz_class(1));
    for (std::size_t k = 0; k < size; ++k) {
      const Rational v = cs[l].coeffs(static_cast<Eigen::Index>(k)) * s;
      if (!v.is_small() || abs(v) > Rational(1LL << 40)) return std::nullopt;
      out[k * lanes + l] = v.small_num();
      max_abs = std::max(max_abs, v.small_num() < 0 ? -v.small_num() : v.small_num());
    }
  }
  return out;
}

}  // namespace

std::vector<bool> coboundaries_vanish(const std::vector<Cochain>& cs) {
  std::vector<bool> out;
  if (cs.empty()) return out;
  const Cochain& first = cs.front();
  for (const auto& c : cs)
    if (c.complex != first.complex || c.p != first.p || c.layout != first.layout)
      throw InputError("cochains checked together must share complex, degree and layout");
  const CochainComplex& cx = *first.complex;
  const int p = first.p;
  if (p + 1 > kMaxDegree) throw InputError("coboundary degree too large");
  const auto& it = cx.integer_tables();
  std::optional<std::vector<std::int64_t>> lanes_src;
  if (it) {
    std::int64_t max_abs = 0;
    lanes_src = integer_lanes(cs, max_abs);
    if (delta_gain(*it, p) * static_cast<__int128>(std::max<std::int64_t>(1, max_abs)) >= (static_cast<__int128>(1) << 62))
      lanes_src.reset();
  }
  if (!lanes_src) {
    for (const auto& c : cs) out.push_back(coboundary_vanishes(c));
    return out;
  }
  const auto& t = *it;
  const std::size_t lanes = cs.size();
  const std::size_t width = static_cast<std::size_t>(t.vd) * lanes;
  std::vector<std::int64_t> acc(width);
  std::vector<char> bad(lanes, 0);
  for_each_tuple(t, p + 1, [&](const int* ws, int z, std::size_t) {
    std::fill(acc.begin(), acc.end(), 0);
    LaneSource<std::int64_t> s{lanes_src->data(), lanes, acc.data()};
    eval_delta(t, p, first.layout, ws, z, s);
    for (std::size_t k = 0; k < width; ++k)
      if (acc[k] != 0) bad[k % lanes] = 1;
    return true;
  });
  for (char b : bad) out.push_back(b == 0);
  return out;
}

NilpotencyReport check_nilpotency(const ComplexPtr& cx, int p, std::size_t trials, std::uint64_t seed) {
  if (p < 0 || p + 2 > kMaxDegree) throw InputError("nilpotency is checked for degrees 0 and 1");
  NilpotencyReport rep;
  rep.trials = trials;
  if (trials == 0) return rep;
  std::mt19937_64 rng(seed);
  std::vector<Cochain> cs;
  for (std::size_t i = 0; i < trials; ++i) cs.push_back(random_cochain(cx, p, rng));

  const auto& it = cx->integer_tables();
  std::optional<std::vector<std::int64_t>> lanes_src;
  if (it) {
    std::int64_t max_abs = 0;
    lanes_src = integer_lanes(cs, max_abs);
    const __int128 bound = delta_gain(*it, p) * delta_gain(*it, p + 1) * static_cast<__int128>(std::max<std::int64_t>(1, max_abs));
    if (bound >= (static_cast<__int128>(1) << 62)) lanes_src.reset();
  }
  if (lanes_src) {
    rep.integer_path = true;
    const auto& t = *it;
    const std::size_t lanes = trials;
    const std::vector<std::int64_t> raw1 = raw_coboundary(t, p, Layout::Packed, *lanes_src, lanes, cx->tuple_count(p + 1));
    std::vector<std::int64_t> packed;
    Layout layout = Layout::Packed;
    if (!pack_raw(*cx, t, p + 1, raw1, lanes, packed)) {
      rep.image_packed = false;
      layout = Layout::Raw;
      packed = raw1;
    }
    const std::size_t width = static_cast<std::size_t>(t.vd) * lanes;
    std::vector<std::int64_t> out(width);
    std::vector<char> bad(lanes, 0);
    for_each_tuple(t, p + 2, [&](const int* ws, int z, std::size_t) {
      std::fill(out.begin(), out.end(), 0);
      LaneSource<std::int64_t> s{packed.data(), lanes, out.data()};
      eval_delta(t, p + 1, layout, ws, z, s);
      for (std::size_t k = 0; k < width; ++k)
        if (out[k] != 0) bad[k % lanes] = 1;
      return true;
    });
    for (char b : bad) rep.failures += static_cast<std::size_t>(b);
  } else {
    for (const auto& c : cs) {
      const Cochain dc = coboundary(c);
      if (dc.layout != Layout::Packed) rep.image_packed = false;
      if (!coboundary_vanishes(dc)) ++rep.failures;
    }
  }
  rep.passed = rep.failures == 0;
  return rep;
}

}  // namespace filicoh
