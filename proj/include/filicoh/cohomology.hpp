#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "filicoh/algebra.hpp"
#include "filicoh/linalg.hpp"

namespace filicoh {

enum class Action { Trivial, Adjoint };

/// Packed: blocks antisymmetric internally and the last block joined with the
/// final argument antisymmetric as an n-subset. Raw: one coordinate per
/// argument tuple, no symmetry assumed.
enum class Layout { Packed, Raw };

std::string to_string(Action a);
Action parse_action(const std::string& s);

/// Tables of one algebra needed to evaluate coboundaries, over the scalar T.
template <class T>
struct DeltaTables {
  int d = 0;
  int n = 0;
  int vd = 1;           ///< value components: 1 (trivial) or d (adjoint)
  std::size_t nw = 0;   ///< (n-1)-subsets
  std::size_t nn = 0;   ///< n-subsets
  bool adjoint = false;
  std::vector<SparseVec<T>> comp;                  ///< [i*nw+j]: e_i·e_j on (n-1)-subsets
  std::vector<SparseVec<T>> act;                   ///< [w*d+z]: [e_w, e_z]
  std::vector<std::pair<int, int>> last;           ///< [w*d+z]: (n-subset index of w∪z, sort sign)
  std::vector<SparseVec<T>> repl;                  ///< [((w*(n-1)+i)*d+v)*d+z]: [w with slot i -> v, z]
  std::vector<MultiIndex> wedge_sets;              ///< the (n-1)-subsets
  T max_abs_coef = T(0);
};

/// The cochain complex of an algebra with trivial or adjoint coefficients.
class CochainComplex {
 public:
  CochainComplex(Algebra a, Action action);

  const Algebra& algebra() const { return alg_; }
  Action action() const { return action_; }
  int dim() const { return alg_.dim(); }
  int n() const { return alg_.n(); }
  int value_dim() const { return tables_.vd; }
  const MultiIndexBasis& blocks() const { return blocks_; }
  const MultiIndexBasis& subsets() const { return alg_.wedge(); }

  /// Dimension of C^p in the given layout.
  std::size_t cochain_dim(int p, Layout layout = Layout::Packed) const;
  /// Number of argument tuples (p blocks and a final argument).
  std::size_t tuple_count(int p) const;

  /// Base index and sign for blocks (indices into blocks()) and final argument
  /// z; nullopt when the packed value is forced to vanish.
  std::optional<std::pair<std::size_t, int>> locate(std::span<const int> blocks, int z, Layout layout) const;

  struct Decoded {
    std::vector<MultiIndex> blocks;  ///< 0-based (n-1)-subsets
    int z = 0;
    int value = 0;
  };
  /// Canonical argument data of a packed coordinate.
  Decoded decode(int p, std::size_t coord) const;

  const DeltaTables<Rational>& tables() const { return tables_; }
  /// Integer copy of the tables when every structure constant is an integer.
  const std::optional<DeltaTables<std::int64_t>>& integer_tables() const { return int_tables_; }

 private:
  Algebra alg_;
  Action action_;
  MultiIndexBasis blocks_;
  DeltaTables<Rational> tables_;
  std::optional<DeltaTables<std::int64_t>> int_tables_;
};

using ComplexPtr = std::shared_ptr<const CochainComplex>;

ComplexPtr make_complex(const Algebra& a, Action action);

struct Cochain {
  ComplexPtr complex;
  int p = 0;
  Layout layout = Layout::Packed;
  QVector coeffs;

  static Cochain zero(ComplexPtr complex, int p, Layout layout = Layout::Packed);

  Action action() const { return complex->action(); }
  bool is_zero() const { return filicoh::is_zero(QMatrix(coeffs)); }

  /// Value vector at basis arguments: blocks are 0-based index lists of length
  /// n-1 in any order, z a basis index.
  QVector value(const std::vector<MultiIndex>& blocks, int z) const;
  /// Sets the value component at basis arguments, antisymmetrizing as needed.
  void set(const std::vector<MultiIndex>& blocks, int z, int value_index, const Rational& v);

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.complex->action() == b.complex->action() && a.p == b.p && a.layout == b.layout && a.coeffs == b.coeffs &&
           a.complex->algebra() == b.complex->algebra();
  }
};

/// δ of a cochain. Degrees 1 and 2 are returned packed after verifying that the
/// image has the packed symmetry; otherwise the raw layout is returned and a
/// diagnostic is written to standard error.
Cochain coboundary(const Cochain& c);

/// δc = 0 on every argument tuple (any degree).
bool coboundary_vanishes(const Cochain& c);

inline bool is_cocycle(const Cochain& c) { return coboundary_vanishes(c); }

/// coboundary_vanishes for several cochains of one complex, degree and layout,
/// evaluated together (exact 64-bit integer lanes when the values allow).
std::vector<bool> coboundaries_vanish(const std::vector<Cochain>& cs);

/// Rows of the δ^p matrix: one row per degree p+1 argument tuple and value
/// component, columns indexed by packed C^p coordinates. With `rhs` (a degree
/// p+1 cochain) each row gains column cochain_dim(p) holding rhs at that tuple.
std::vector<SparseRow> coboundary_rows(const CochainComplex& cx, int p, const Cochain* rhs = nullptr);

struct CohomologyDims {
  std::size_t dim_z = 0;
  std::size_t dim_b = 0;
  std::size_t dim_h = 0;
  friend bool operator==(const CohomologyDims&, const CohomologyDims&) = default;
};

/// Dimensions of Z^p, B^p and H^p for p in {0, 1, 2}.
CohomologyDims cohomology_dims(const CochainComplex& cx, int p);

/// Basis of Z^p as packed cochains.
std::vector<Cochain> cocycle_basis(const ComplexPtr& cx, int p);

/// Random packed cochain with small rational coefficients.
Cochain random_cochain(const ComplexPtr& cx, int p, std::mt19937_64& rng);

/// Random element of Z^1 as a combination of the given cocycle basis.
Cochain random_combination(const std::vector<Cochain>& basis, const ComplexPtr& cx, int p, std::mt19937_64& rng);

struct NilpotencyReport {
  bool passed = true;
  std::size_t trials = 0;
  std::size_t failures = 0;
  bool image_packed = true;   ///< every δc had the packed symmetry
  bool integer_path = false;  ///< evaluated with exact 64-bit integers
};

/// δ(δc) = 0 for seeded random cochains of degree p.
NilpotencyReport check_nilpotency(const ComplexPtr& cx, int p, std::size_t trials, std::uint64_t seed);

}  // namespace filicoh
