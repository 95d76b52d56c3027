#include <random>

#include "doctest.h"
#include "dimsub/lattice.hpp"

using namespace dimsub;

namespace {
std::vector<Integer> vec(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> e(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = e(rng);
  return m;
}

// Brute force: is v a combination of rows with coefficients in [-k, k]?
bool small_combination(const IntMatrix& m, const std::vector<Integer>& v, int k) {
  std::vector<int> c(m.rows(), -k);
  while (true) {
    bool ok = true;
    for (std::size_t j = 0; j < m.cols() && ok; ++j) {
      Integer s = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) s += c[i] * m(i, j);
      ok = s == v[j];
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < c.size() && c[i] == k) c[i++] = -k;
    if (i == c.size()) return false;
    ++c[i];
  }
}
}  // namespace

TEST_CASE("hnf examples") {
  CHECK(hnf({{2, 0}, {0, 3}}) == IntMatrix({{2, 0}, {0, 3}}));
  CHECK(hnf({{0, 1}, {1, 0}}) == IntMatrix({{1, 0}, {0, 1}}));
  CHECK(hnf({{2, 4}, {4, 8}}) == IntMatrix({{2, 4}}));
}

TEST_CASE("snf examples") {
  CHECK(snf({{2, 0}, {0, 3}}) == vec({1, 6}));
  CHECK(snf(IntMatrix::identity(4)) == vec({1, 1, 1, 1}));
  CHECK(snf({{6}}) == vec({6}));
  CHECK(cokernel_invariants({{2, 0, 0}, {0, 4, 0}}) == vec({2, 4, 0}));
}

TEST_CASE("membership examples") {
  auto l = IntLattice::from_matrix({{2, 0}, {0, 3}});
  CHECK(member(vec({2, 0}), l));
  CHECK_FALSE(member(vec({1, 0}), IntLattice::from_matrix({{2, 0}})));
  CHECK(member(vec({3, 3}), IntLattice::from_matrix({{1, 1}})));
  CHECK_THROWS(member(vec({1, 2, 3}), l));
}

TEST_CASE("meet, join, quotient examples") {
  auto a = IntLattice::from_matrix({{2, 0}, {0, 1}});
  auto b = IntLattice::from_matrix({{1, 0}, {0, 2}});
  CHECK(meet(a, b) == IntLattice::from_matrix({{2, 0}, {0, 2}}));
  CHECK(join(a, a) == a);
  CHECK(quotient_invariants(IntLattice::from_matrix({{2, 0}, {0, 2}}), IntLattice::full(2)) == vec({2, 2}));
  CHECK_THROWS(quotient_invariants(IntLattice::full(2), a));
  CHECK(IntLattice(3).rank() == 0);
  CHECK(IntLattice(3).dim() == 3);
}

TEST_CASE("lattice laws on random lattices") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dim(1, 6), rows(0, 4);
  for (int t = 0; t < 150; ++t) {
    std::size_t n = dim(rng);
    auto a = IntLattice::from_matrix(random_matrix(rng, rows(rng), n, 3));
    auto b = IntLattice::from_matrix(random_matrix(rng, rows(rng), n, 3));
    if (a.dim() != n) a = IntLattice(n);
    if (b.dim() != n) b = IntLattice(n);
    CHECK(join(a, b) == join(b, a));
    CHECK(meet(a, b) == meet(b, a));
    CHECK(join(a, meet(a, b)) == a);
    CHECK(meet(a, join(a, b)) == a);
    CHECK(join(a, b).contains(a));
    CHECK(a.contains(meet(a, b)));
  }
}

TEST_CASE("membership agrees with brute-force search") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int t = 0; t < 80; ++t) {
    IntMatrix m = random_matrix(rng, 2, 3, 3);
    auto l = IntLattice::from_matrix(m);
    std::vector<Integer> v(3);
    if (t % 2 == 0) {
      int c0 = coef(rng), c1 = coef(rng);
      for (std::size_t j = 0; j < 3; ++j) v[j] = c0 * m(0, j) + c1 * m(1, j);
      CHECK(member(v, l));
    } else {
      std::uniform_int_distribution<int> e(-3, 3);
      for (auto& x : v) x = e(rng);
      // a brute-force hit is a proof of membership; a miss within a wide box is strong evidence
      if (small_combination(m, v, 6)) CHECK(member(v, l));
      else if (member(v, l)) CHECK(l.coordinates(to_sparse(v)).has_value());
    }
  }
}

TEST_CASE("snf is invariant under unimodular transformations") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 60; ++t) {
    IntMatrix m = random_matrix(rng, 3, 4, 4);
    IntMatrix u = IntMatrix::identity(3), v = IntMatrix::identity(4);
    // elementary operations and a swap
    u(0, 1) = 2;
    u(2, 0) = -1;
    v(3, 1) = 3;
    IntMatrix p({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    CHECK(snf(u * m * v) == snf(m));
    CHECK(snf(p * m) == snf(m));
    CHECK(snf(m.transpose()) == snf(m));
  }
}
