#include "doctest.h"
#include "dimsub/magnus.hpp"
#include "support.hpp"

using namespace dimsub;

namespace {
const Word gx = Word::generator(0), gy = Word::generator(1), gz = Word::generator(2);

GroupContext context_r() {
  GroupContext ctx{Alphabet({"x", "y"}), {}};
  // R = <x>^F, the kernel of F(x,y) -> F(y)
  ctx.subgroups["r"] = {"r", {gx}, QuotientOracle::free(std::vector<Word>{Word{}, Word::generator(0)}, 1)};
  // S = <y^2, x>^F, the kernel of F -> Z/2 sending y to the transposition
  ctx.subgroups["s"] = {"s", {gy.pow(2), gx}, QuotientOracle::permutation(2, {{0, 1}, {1, 0}})};
  return ctx;
}

TruncatedSeries series(int vars, int d, std::initializer_list<std::pair<Monomial, long>> terms) {
  TruncatedSeries s(vars, d);
  for (const auto& [m, c] : terms) s.set(m, c);
  return s;
}

// Span of expand(u (y - 1) v) over u, v in the free ball of radius d: exactly the image of the
// two-sided ideal, since words of length <= d already span the truncated algebra.
IntLattice brute_force_atom(const std::vector<Word>& gens, int rank, int d) {
  auto b = free_ball(rank, d);
  MonomialBasis basis(rank, d);
  LatticeBuilder lb(basis.size());
  for (const auto& y : gens)
    for (const auto& u : b)
      for (const auto& v : b)
        lb.insert(expand_ring(RingElement(u * y * v) - RingElement(u * v), rank, d).to_sparse());
  return IntLattice::from_builder(lb);
}
}  // namespace

TEST_CASE("monomial basis order") {
  MonomialBasis b(2, 3);
  CHECK(b.size() == 15);
  CHECK(b.index({}) == 0);
  CHECK(b.index({0}) == 1);
  CHECK(b.index({1}) == 2);
  CHECK(b.index({0, 0}) == 3);
  CHECK(b.index({1, 0}) == 5);
  CHECK(b.monomial(b.index({1, 0, 1})) == Monomial{1, 0, 1});
  CHECK(MonomialBasis::count(2, 3) == 15);
  CHECK_FALSE(b.times_var(b.index({0, 0, 0}), 1).has_value());
}

TEST_CASE("expand examples") {
  CHECK(expand(gx, 1, 3) == series(1, 3, {{{}, 1}, {{0}, 1}}));
  CHECK(expand(gx.inverse(), 1, 2) == series(1, 2, {{{}, 1}, {{0}, -1}, {{0, 0}, 1}}));
  CHECK(expand(commutator(gx, gy), 2, 2) == series(2, 2, {{{}, 1}, {{0, 1}, 1}, {{1, 0}, -1}}));
  CHECK(expand(Word{}, 2, 4) == TruncatedSeries::one(2, 4));
}

TEST_CASE("expand_ring examples") {
  RingElement one = RingElement::scalar(1);
  CHECK(expand_ring(gx - one, 2, 2) == series(2, 2, {{{0}, 1}}));
  CHECK(expand_ring((gx - one) * (gy - one), 2, 2) == series(2, 2, {{{0, 1}, 1}}));
  CHECK(expand_ring(commutator(gx, gy) - one, 2, 2) == series(2, 2, {{{0, 1}, 1}, {{1, 0}, -1}}));
}

TEST_CASE("min_degree") {
  RingElement one = RingElement::scalar(1);
  CHECK(min_degree(gx - one, 3, 5) == 1);
  CHECK(min_degree(commutator(gx, gy) - one, 3, 5) == 2);
  CHECK(min_degree(commutator(commutator(gx, gy), gz) - one, 3, 5) == 3);
  CHECK_FALSE(min_degree(commutator(commutator(gx, gy), gz) - one, 3, 2).has_value());
  CHECK_THROWS(min_degree(RingElement{}, 3, 5));
}

TEST_CASE("dimension subgroup sanity for basic commutators") {
  RingElement one = RingElement::scalar(1);
  std::vector<Word> gens{gx, gy, gz};
  for (const auto& a : gens)
    for (const auto& b : gens) {
      if (a == b) continue;
      Word c2 = commutator(a, b);
      CHECK(min_degree(c2 - one, 3, 5) == 2);
      for (const auto& c : gens) {
        Word c3 = commutator(c2, c);
        if (c3.empty()) continue;
        CHECK(min_degree(c3 - one, 3, 5) == 3);
        for (const auto& e : gens) CHECK(min_degree(commutator(c3, e) - one, 3, 5) >= 4);
      }
    }
  Word c4 = commutator(commutator(commutator(gx, gy), gy), gx);
  CHECK(min_degree(c4 - one, 2, 5) == 4);
}

TEST_CASE("expansion is multiplicative") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 1000; ++t) {
    Word u = testsupport::random_word(rng, 3, 6), v = testsupport::random_word(rng, 3, 6);
    CHECK(expand(u * v, 3, 5) == expand(u, 3, 5) * expand(v, 3, 5));
  }
}

TEST_CASE("shadow examples") {
  auto ctx = context_r();
  std::vector<std::string> names{"r", "s"};
  MonomialBasis b(2, 2);
  auto f = ideal_shadow(parse_ideal_expr("f", names), ctx, 2);
  CHECK(f.rank() == b.size() - 1);
  CHECK_FALSE(f.contains(TruncatedSeries::one(2, 2).to_sparse()));
  auto f2 = ideal_shadow(parse_ideal_expr("f^2", names), ctx, 2);
  CHECK(f2.rank() == 4);
  for (std::size_t i = b.offset(2); i < b.size(); ++i) CHECK(f2.contains(SparseVec{{int(i), 1}}));
  auto r1 = ideal_shadow(parse_ideal_expr("r", names), ctx, 1);
  CHECK(r1 == IntLattice::from_rows(3, {SparseVec{{1, 1}}}));
  CHECK_THROWS(ideal_shadow(parse_ideal_expr("r", names), ctx, 12, ShadowConfig{1000, 1}));
}

TEST_CASE("single-atom shadow equals the brute-force span of conjugated generators") {
  auto ctx = context_r();
  std::vector<std::string> names{"r", "s"};
  for (int d = 1; d <= 3; ++d) {
    CHECK(ideal_shadow(parse_ideal_expr("r", names), ctx, d) == brute_force_atom({gx}, 2, d));
    CHECK(ideal_shadow(parse_ideal_expr("s", names), ctx, d) == brute_force_atom({gy.pow(2), gx}, 2, d));
  }
}

TEST_CASE("shadows are monotone in the degree") {
  auto ctx = context_r();
  std::vector<std::string> names{"r", "s"};
  for (const char* e : {"r", "s", "r s", "s r + f^3", "r'", "gamma3(s)", "r f s"}) {
    auto expr = parse_ideal_expr(e, names);
    for (int d = 2; d <= 4; ++d) {
      auto hi = ideal_shadow(expr, ctx, d), lo = ideal_shadow(expr, ctx, d - 1);
      CHECK(hi.truncate(lo.dim()) == lo);
    }
  }
}

TEST_CASE("shadows contain explicit ideal elements") {
  auto ctx = context_r();
  std::vector<std::string> names{"r", "s"};
  std::mt19937_64 rng(37);
  RingElement one = RingElement::scalar(1);
  auto rs = ideal_shadow(parse_ideal_expr("r s", names), ctx, 4);
  auto rp = ideal_shadow(parse_ideal_expr("r'", names), ctx, 4);
  for (int t = 0; t < 100; ++t) {
    Word a = testsupport::random_word(rng, 2, 3), b = testsupport::random_word(rng, 2, 3),
         c = testsupport::random_word(rng, 2, 3);
    Word rgen = conjugate(gx, a), sgen = conjugate(t % 2 ? gy.pow(2) : gx, b);
    RingElement v = RingElement(c) * (rgen - one) * (sgen - one) * RingElement(a);
    CHECK(rs.contains(expand_ring(v, 2, 4).to_sparse()));
    Word r2 = conjugate(gx, c);
    RingElement u = RingElement(b) * (commutator(rgen, r2) - one);
    CHECK(rp.contains(expand_ring(u, 2, 4).to_sparse()));
  }
}
