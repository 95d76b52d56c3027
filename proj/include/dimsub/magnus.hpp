#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dimsub/ideal_expr.hpp"
#include "dimsub/lattice.hpp"
#include "dimsub/ring.hpp"

namespace dimsub {

/// Noncommutative monomial X_{i1} X_{i2} ... as its variable-index sequence.
using Monomial = std::vector<int>;

/// Graded-lexicographic indexing of monomials of degree <= d in n variables:
/// all degree-k monomials precede degree-(k+1) ones, and within a degree the
/// index sequence is read as a base-n number.
class MonomialBasis {
 public:
  MonomialBasis(int vars, int degree);

  int vars() const { return vars_; }
  int degree() const { return degree_; }
  std::size_t size() const { return offsets_.back(); }
  /// First index of degree k; offset(degree + 1) == size().
  std::size_t offset(int k) const { return offsets_.at(static_cast<std::size_t>(k)); }

  std::size_t index(const Monomial& m) const;
  Monomial monomial(std::size_t index) const;
  int degree_of(std::size_t index) const;

  /// Index of m * X_var (or X_var * m); nullopt when the degree exceeds the bound.
  std::optional<std::size_t> times_var(std::size_t index, int var) const;
  std::optional<std::size_t> var_times(int var, std::size_t index) const;
  /// Index of the concatenation a*b, or nullopt when too long.
  std::optional<std::size_t> concat(std::size_t a, std::size_t b) const;

  /// Number of monomials for (vars, degree) without building the basis; saturates on overflow.
  static std::size_t count(int vars, int degree);

 private:
  int vars_;
  int degree_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> powers_;
};

/// Element of Z<X_1..X_n> / (degree > d), dense in the MonomialBasis order.
class TruncatedSeries {
 public:
  TruncatedSeries(int vars, int degree);
  static TruncatedSeries one(int vars, int degree);
  static TruncatedSeries variable(int var, int vars, int degree);

  int vars() const { return basis_.vars(); }
  int degree() const { return basis_.degree(); }
  const MonomialBasis& basis() const { return basis_; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  Integer coefficient(const Monomial& m) const { return coeffs_.at(basis_.index(m)); }
  void set(const Monomial& m, const Integer& c) { coeffs_.at(basis_.index(m)) = c; }
  bool is_zero() const;
  /// Least degree with a nonzero coefficient.
  std::optional<int> min_degree() const;

  SparseVec to_sparse() const { return dimsub::to_sparse(coeffs_); }
  static TruncatedSeries from_sparse(const SparseVec& v, int vars, int degree);

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  void add_scaled(const TruncatedSeries& o, const Integer& c);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.coeffs_ == b.coeffs_; }

  /// Right multiplication by the generator image 1 + X_var, or by its inverse.
  void mul_generator(int var, int exponent);

 private:
  MonomialBasis basis_;
  std::vector<Integer> coeffs_;
};

/// Sparse product of two truncated vectors in a fixed basis.
SparseVec series_mul(const MonomialBasis& basis, const SparseVec& a, const SparseVec& b);

/// Magnus expansion x_i -> 1 + X_i truncated at degree d.
TruncatedSeries expand(const Word& w, int vars, int degree);
TruncatedSeries expand_ring(const RingElement& a, int vars, int degree);

/// Least degree of a nonzero term of expand_ring(a, d_max); nullopt means ">= d_max + 1".
/// Throws on a = 0.
std::optional<int> min_degree(const RingElement& a, int vars, int d_max);

struct ShadowConfig {
  /// Largest ambient dimension (number of monomials) a shadow may use.
  std::size_t dimension_cap = 20000;
  /// Conjugation radius used when a derived/gamma atom needs explicit generators.
  int conj_radius = 1;
};

/// Image of the ideal `e` in Z<X>/(degree > d) as an integer lattice in the
/// MonomialBasis order. Subgroup atoms give the two-sided ideal generated by the
/// expansions of their normal generators (exact, assuming the ideal h is generated by
/// {y - 1 : y a normal generator}); F gives all positive-degree terms; derived and
/// gamma atoms give the ideal generated by iterated ring commutators of the atom's
/// lattice, which contains the true image. Every returned lattice therefore contains
/// expand_ring(v) for every v in e, so a vector outside it separates.
IntLattice ideal_shadow(const IdealExpr& e, const GroupContext& ctx, int degree, const ShadowConfig& cfg = {});

/// Two-sided ideal of the truncated algebra generated by `gens`.
IntLattice two_sided_closure(const MonomialBasis& basis, std::span<const SparseVec> gens);

}  // namespace dimsub
