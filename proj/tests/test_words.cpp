#include <set>

#include "doctest.h"
#include "dimsub/subgroup.hpp"
#include "dimsub/word_expr.hpp"
#include "support.hpp"

using namespace dimsub;
using testsupport::w;

namespace {
constexpr Letter x = 1, y = 2, z = 3, X = -1, Y = -2;
}

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(w({x, X}).empty());
  CHECK(w({X, Y, x, y}).length() == 4);
  CHECK(w({x, y, Y, x}) == w({x, x}));
  CHECK_THROWS_AS(Word::reduce(std::vector<Letter>{z}, 2), Error);
}

TEST_CASE("reduce agrees with a stack reduction and is idempotent") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> gen(0, 2), len(0, 20);
  std::bernoulli_distribution sign(0.5);
  for (int t = 0; t < 500; ++t) {
    std::vector<Letter> raw;
    for (int i = len(rng); i > 0; --i) raw.push_back(gen_letter(gen(rng), sign(rng) ? 1 : -1));
    Word r = Word::reduce(raw);
    CHECK(r.letters() == testsupport::naive_reduce(raw));
    CHECK(Word::reduce(r.letters()) == r);
  }
}

TEST_CASE("commutator convention") {
  Word a = Word::generator(0), b = Word::generator(1);
  CHECK(commutator(a, b) == w({X, Y, x, y}));
  CHECK(commutator(a, a).empty());
  CHECK(commutator(a, Word{}).empty());
}

TEST_CASE("group axioms on random triples") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    Word a = testsupport::random_word(rng, 3, 8), b = testsupport::random_word(rng, 3, 8),
         c = testsupport::random_word(rng, 3, 8);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * a.inverse()).empty());
    CHECK(commutator(a, b).inverse() == commutator(b, a));
  }
}

TEST_CASE("ball sizes and contents") {
  Word gx = Word::generator(0), gy = Word::generator(1);
  std::vector<Word> one{gx};
  auto b = ball(one, 2);
  std::set<Word> expect{Word{}, gx, gx.inverse(), gx.pow(2), gx.pow(-2)};
  CHECK(std::set<Word>(b.begin(), b.end()) == expect);
  std::vector<Word> two{gx, gy};
  CHECK(ball(two, 1).size() == 5);
  CHECK(ball(two, 2).size() == 17);
  // reduced words of length <= 3 over two generators: 1 + 4 + 12 + 36
  CHECK(free_ball(2, 3).size() == 53);
  CHECK_THROWS_AS(free_ball(3, 6, 100), CapExceeded);
}

TEST_CASE("gamma_generators") {
  Alphabet al = Alphabet::standard(2);
  SubgroupHandle h{"r", {Word::generator(0)}, QuotientOracle::free(std::vector<Word>{Word{}, Word::generator(0)}, 1)};
  auto g2 = gamma_generators(h, 2, 2, 1);
  Word target = commutator(Word::generator(0), conjugate(Word::generator(0), Word::generator(1)));
  CHECK(std::find(g2.begin(), g2.end(), target) != g2.end());
  CHECK(gamma_generators(h, 2, 2, 0).empty());
  // every weight-3 entry is a commutator of a weight-2 entry (radius 1) with a conjugated generator
  auto g3 = gamma_generators(h, 2, 3, 1);
  auto conj = ball(std::vector<Word>{Word::generator(0), Word::generator(1)}, 1);
  std::set<Word> rebuilt;
  for (const auto& c2 : g2)
    for (const auto& g : conj) rebuilt.insert(commutator(c2, conjugate(Word::generator(0), g)));
  for (const auto& c3 : g3) CHECK(rebuilt.count(c3) == 1);
  CHECK_THROWS_AS(gamma_generators(h, 2, 1, 1), Error);
  SubgroupHandle empty{"e", {}, QuotientOracle::trivial(2)};
  CHECK_THROWS_AS(gamma_generators(empty, 2, 2, 1), Error);
}

TEST_CASE("quotient oracles are sound on conjugates of their generators") {
  // R = <x>^F as kernel of F(x,y) -> F(y)
  SubgroupHandle r{"r", {Word::generator(0)}, QuotientOracle::free(std::vector<Word>{Word{}, Word::generator(0)}, 1)};
  CHECK_FALSE(find_oracle_violation(r, 2, 2).has_value());
  // S = kernel of F -> Z/2 x Z/2-ish permutation quotient, generators x^2, y^2, [x,y]
  auto perm = QuotientOracle::permutation(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  SubgroupHandle s{"s", {Word::generator(0).pow(2), Word::generator(1).pow(2), commutator(Word::generator(0), Word::generator(1))}, perm};
  CHECK_FALSE(find_oracle_violation(s, 2, 2).has_value());
  SubgroupHandle bad{"b", {Word::generator(1)}, r.oracle};
  CHECK(find_oracle_violation(bad, 2, 2).has_value());
}

TEST_CASE("coset representatives form a prefix-closed transversal") {
  auto perm = QuotientOracle::permutation(3, {{1, 2, 0}, {1, 0, 2}});
  std::mt19937_64 rng(3);
  std::set<Word> reps;
  for (int t = 0; t < 200; ++t) {
    Word u = testsupport::random_word(rng, 2, 10);
    auto rep = perm->coset_rep(u);
    REQUIRE(rep.has_value());
    CHECK(perm->contains(u * rep->inverse()));
    reps.insert(*rep);
  }
  CHECK(reps.size() == 6);
  for (const auto& r : reps) {
    std::vector<Letter> pre(r.letters().begin(), r.letters().end());
    while (!pre.empty()) {
      pre.pop_back();
      CHECK(reps.count(Word::reduce(pre)) == 1);
    }
  }
}

TEST_CASE("word expression grammar round-trips") {
  Alphabet al({"x", "y", "z"});
  for (const char* text : {"x", "x*y^-1", "[x,y]", "[[x,y],z]", "[x,y,z]", "(x*y)^3", "1", "[x^-1,y]^2*z"}) {
    WordExpr e = parse_word_expr(text, al);
    CHECK(parse_word_expr(e.format(al), al) == e);
  }
  CHECK(parse_word("[x,y,z]", al) == parse_word("[[x,y],z]", al));
  CHECK(parse_word("x*x^-1", al).empty());
  CHECK_THROWS_AS(parse_word_expr("x*w", al), Error);
  CHECK_THROWS_AS(parse_word_expr("[x,y", al), Error);
}
