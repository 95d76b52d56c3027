#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dimsub/integer.hpp"

namespace dimsub {

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::vector<Integer> row(std::size_t r) const;
  void append_row(const std::vector<Integer>& row);

  IntMatrix transpose() const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Row-style Hermite normal form: zero rows dropped, pivots positive, entries above
/// each pivot reduced into [0, pivot).
IntMatrix hnf(const IntMatrix& m);

/// Nonzero invariant factors d_1 | d_2 | ... (units included).
std::vector<Integer> snf(const IntMatrix& m);

/// Invariant factors of Z^cols / rowspace(m) in canonical form: torsion factors > 1
/// in divisibility order followed by one 0 per free summand.
std::vector<Integer> cokernel_invariants(const IntMatrix& m);

/// Sparse integer vector, entries sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, Integer>>;

SparseVec to_sparse(const std::vector<Integer>& dense);
std::vector<Integer> to_dense(const SparseVec& v, std::size_t dim);

/// Incremental echelon basis of a sublattice of Z^dim keyed by pivot (lowest index).
class LatticeBuilder {
 public:
  explicit LatticeBuilder(std::size_t dim) : dim_(dim) {}

  /// Returns true when v enlarged the lattice.
  bool insert(SparseVec v);
  /// Remainder of v after reduction by the current basis; empty iff v is a member.
  SparseVec reduce(SparseVec v) const;

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::map<int, SparseVec>& rows() const { return rows_; }

 private:
  std::size_t dim_;
  std::map<int, SparseVec> rows_;
};

/// Sublattice of Z^dim held in canonical Hermite normal form; equal lattices have
/// equal bases. The zero lattice keeps its ambient dimension.
class IntLattice {
 public:
  explicit IntLattice(std::size_t dim = 0) : dim_(dim) {}
  static IntLattice from_rows(std::size_t dim, const std::vector<SparseVec>& rows);
  static IntLattice from_matrix(const IntMatrix& m);
  static IntLattice from_builder(const LatticeBuilder& b);
  static IntLattice full(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<SparseVec>& basis() const { return basis_; }
  IntMatrix basis_matrix() const;

  bool contains(const SparseVec& v) const;
  bool contains(const std::vector<Integer>& v) const;
  bool contains(const IntLattice& sub) const;

  /// Coordinates of v in the HNF basis; nullopt when v is not a member.
  std::optional<std::vector<Integer>> coordinates(const SparseVec& v) const;

  /// Projection onto the coordinates [0, k) (kept dimension k).
  IntLattice truncate(std::size_t k) const;

  friend bool operator==(const IntLattice& a, const IntLattice& b) = default;

 private:
  std::size_t dim_;
  std::vector<SparseVec> basis_;  // ascending pivot
};

bool member(const std::vector<Integer>& v, const IntLattice& l);
IntLattice join(const IntLattice& a, const IntLattice& b);
IntLattice meet(const IntLattice& a, const IntLattice& b);
/// Invariants of sup/sub in the cokernel_invariants convention. Throws when sub is not contained in sup.
std::vector<Integer> quotient_invariants(const IntLattice& sub, const IntLattice& sup);

/// Human-readable group from invariant factors: "0", "Z/2 + Z", ...
std::string format_invariants(const std::vector<Integer>& inv);

}  // namespace dimsub
