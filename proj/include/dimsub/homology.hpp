#pragma once

#include <cstddef>
#include <vector>

#include "dimsub/abelian.hpp"

namespace dimsub {

struct HomologyResult {
  FgAbGroup group;
  int degree = 0;
  FgAbGroup value;
};

/// Integral homology H_k(A) of a finitely generated abelian group, assembled by Kunneth
/// from its cyclic factors.
HomologyResult homology(const FgAbGroup& a, int k);
/// H_0..H_k at once.
std::vector<FgAbGroup> homology_upto(const FgAbGroup& a, int k);

/// Direct sum.
FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);

/// H_k(G) from the normalized bar complex of the finite group G, by exact sparse
/// elimination of the boundary matrices. Throws CapExceeded when |G| > max_order or k > max_degree.
FgAbGroup bar_oracle(const FgAbGroup& g, int k, int max_order = 8, int max_degree = 4);

/// H_3(Z^a) (x) Lambda2(Z^b).
FgAbGroup example_sec4(std::size_t a_rank, std::size_t b_rank);

/// Torsion-free rank of H_3(A) (x) Lambda2(B): the computable side of the rank identity.
std::size_t h3_lambda2_rank(const FgAbGroup& a, const FgAbGroup& b);

/// Rank and nonunit invariant factors of an integer matrix given by sparse rows.
struct SparseSnf {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
};
SparseSnf sparse_snf(std::vector<SparseVec> rows, std::size_t cols);

}  // namespace dimsub
