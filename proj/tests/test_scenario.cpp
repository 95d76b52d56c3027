#include "doctest.h"
#include "runner.hpp"
#include "scenario.hpp"
#include "support.hpp"

using namespace workbench;

namespace {

const char* kRankFive = R"(
group F rank 5 names x1 x2 x3 x4 x5
subgroup r closure x1, x2, x3 quotient free rank 2 { x4 -> y1, x5 -> y2 }
subgroup s closure [x1,x2], [x2,x3], [x1,x3], x4, x5 quotient free_abelian rank 3 { x1 -> (1 0 0), x2 -> (0 1 0), x3 -> (0 0 1) }
task member [[[x1,x4]^-1,x4],[[x1,x4],x5]] in rsf expect member
)";

int error_line(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.line;
  }
  return 0;
}

// random trees in the word grammar
WordExpr random_expr(std::mt19937_64& rng, int rank, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 0);
  std::uniform_int_distribution<int> gen(0, rank - 1);
  switch (pick(rng)) {
    case 0: return WordExpr::generator(gen(rng));
    case 1: return WordExpr::product(random_expr(rng, rank, depth - 1), random_expr(rng, rank, depth - 1));
    case 2: return WordExpr::power(random_expr(rng, rank, depth - 1), std::uniform_int_distribution<int>(-3, 3)(rng) | 1);
    case 3: return WordExpr::commutator(random_expr(rng, rank, depth - 1), random_expr(rng, rank, depth - 1));
    default: return WordExpr::conjugate(random_expr(rng, rank, depth - 1), random_expr(rng, rank, depth - 1));
  }
}

std::vector<int> random_perm(std::mt19937_64& rng, int degree) {
  std::vector<int> p(static_cast<std::size_t>(degree));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

Scenario random_scenario(std::mt19937_64& rng) {
  Scenario s;
  int rank = std::uniform_int_distribution<int>(2, 3)(rng);
  s.group_name = "F";
  s.alphabet = rank == 2 ? Alphabet({"a", "b"}) : Alphabet::standard(rank);
  std::vector<std::string> names;
  const std::vector<std::string> pool{"r", "s", "t", "u"};
  std::uniform_int_distribution<int> coin(0, 1);
  for (int k = 0; k < 3; ++k) {
    SubgroupDecl d;
    d.name = pool[static_cast<std::size_t>(k)];
    int kind = std::uniform_int_distribution<int>(0, k >= 2 ? 3 : 2)(rng);
    if (kind == 0) {  // free: the first generator dies
      d.quotient.kind = QuotSpec::Kind::Free;
      d.quotient.size = rank - 1;
      d.quotient.free_images.push_back(Word{});
      for (int i = 1; i < rank; ++i)
        d.quotient.free_images.push_back(testsupport::random_word(rng, rank - 1, 3));
      d.closure = {WordExpr::conjugate(WordExpr::generator(0), random_expr(rng, rank, 1))};
    } else if (kind == 1) {  // free abelian: commutators die
      d.quotient.kind = QuotSpec::Kind::FreeAbelian;
      d.quotient.size = 2;
      for (int i = 0; i < rank; ++i)
        d.quotient.abelian_images.push_back({std::uniform_int_distribution<long>(-2, 2)(rng), coin(rng) ? 1L : 0L});
      d.closure = {WordExpr::commutator(random_expr(rng, rank, 1), random_expr(rng, rank, 1))};
    } else if (kind == 2) {  // permutations: search short kernel words
      d.quotient.kind = QuotSpec::Kind::FinitePerm;
      d.quotient.size = std::uniform_int_distribution<int>(2, 4)(rng);
      for (int i = 0; i < rank; ++i) d.quotient.perms.push_back(random_perm(rng, d.quotient.size));
      auto oracle = QuotientOracle::permutation(d.quotient.size, d.quotient.perms);
      for (int tries = 0; d.closure.size() < 2 && tries < 5000; ++tries) {
        WordExpr w = random_expr(rng, rank, 2);
        if (oracle->contains(w.value())) d.closure.push_back(w);
      }
      if (d.closure.empty()) d.closure = {WordExpr::identity()};
    } else {  // meet of the first two, closure from their common kernel
      d.quotient.kind = QuotSpec::Kind::Meet;
      d.quotient.parts = {"r", "s"};
      d.closure = {WordExpr::identity()};
    }
    names.push_back(d.name);
    s.subgroups.push_back(d);
  }
  std::uniform_int_distribution<int> tk(0, 4);
  std::uniform_int_distribution<int> nm(0, 2);
  for (int i = 0; i < 6; ++i) {
    switch (tk(rng)) {
      case 0: {
        MemberTask t;
        t.word = random_expr(rng, rank, 2);
        std::string e = names[static_cast<std::size_t>(nm(rng))] + "f" + names[static_cast<std::size_t>(nm(rng))];
        if (coin(rng)) e += " + " + names[static_cast<std::size_t>(nm(rng))] + "' f";
        t.ideal = parse_ideal_expr(e, names);
        if (coin(rng)) t.degree = nm(rng) + 1;
        if (coin(rng)) t.radius = nm(rng) + 1;
        if (coin(rng)) t.expect = coin(rng) ? Verdict::Kind::Member : Verdict::Kind::Unknown;
        s.tasks.emplace_back(t);
        break;
      }
      case 1:
        s.tasks.emplace_back(IdentityTask{parse_ideal_expr("rf", names), parse_ideal_expr("fr", names),
                                          parse_ideal_expr("rfr + gamma2(s)", names), nm(rng) + 1,
                                          coin(rng) ? std::optional<bool>(coin(rng) == 1) : std::nullopt});
        break;
      case 2:
        s.tasks.emplace_back(FunctorTask{static_cast<QuadFunctor>(std::uniform_int_distribution<int>(0, 7)(rng)),
                                         FgAbGroup::from_invariants({Integer(nm(rng) + 2), Integer(0)}),
                                         coin(rng) ? std::optional<FgAbGroup>(FgAbGroup::free(2)) : std::nullopt});
        break;
      case 3:
        s.tasks.emplace_back(HomologyTask{FgAbGroup::from_invariants({Integer(3)}), nm(rng), std::nullopt});
        break;
      default: {
        CocycleTask t;
        t.quotient.kind = QuotSpec::Kind::FinitePerm;
        t.quotient.size = 3;
        for (int g = 0; g < rank; ++g) t.quotient.perms.push_back(random_perm(rng, 3));
        s.tasks.emplace_back(t);
      }
    }
  }
  return s;
}

}  // namespace

TEST_CASE("scenario: rank five example parses and validates") {
  Scenario s = parse_scenario(kRankFive);
  CHECK(s.alphabet.rank() == 5);
  REQUIRE(s.subgroups.size() == 2);
  CHECK(s.subgroups[1].quotient.kind == QuotSpec::Kind::FreeAbelian);
  CHECK(s.tasks.size() == 1);
  CHECK(s.task_lines == std::vector<int>{5});
  GroupContext ctx = build_context(s);
  CHECK(ctx.subgroup("r").contains(parse_word("[x1,x4]", s.alphabet)));
  CHECK_FALSE(ctx.subgroup("s").contains(parse_word("x1", s.alphabet)));
}

TEST_CASE("scenario: empty text and comments give an empty scenario") {
  CHECK(parse_scenario("").tasks.empty());
  Scenario s = parse_scenario("# nothing\n\n   # here\n");
  CHECK_FALSE(s.group_name);
  CHECK(s.tasks.empty());
}

TEST_CASE("scenario: validation errors carry line numbers") {
  // R = <x>^F is not inside T = <y>^F
  CHECK(error_line("group F rank 2 names x y\n"
                   "subgroup r closure x quotient free rank 1 { y -> y1 }\n"
                   "subgroup t closure y quotient free rank 1 { x -> y1 }\n"
                   "declare r subset t\n") == 4);
  // closure word outside the kernel
  CHECK(error_line("group F rank 2 names x y\nsubgroup r closure y quotient free rank 1 { y -> y1 }\n") == 2);
  CHECK(error_line("group F rank 2\n\ntask member x1 in q\n") == 3);
  CHECK(error_line("group F rank 2\ntask member [x1 in f\n") == 2);
  CHECK(error_line("task member x in f\n") == 1);
  CHECK(error_line("group F rank 2\ngroup G rank 2\n") == 2);
  CHECK(error_line("group F rank 1\nsubgroup r closure x1 quotient finite_perm degree 2 { x1 -> (0 2) }\n") == 2);
  CHECK(error_line("task functor wedge Z\n") == 1);
  CHECK(error_line("task suite nope\n") == 1);
  CHECK(error_line("frobnicate\n") == 1);
  try {
    parse_scenario("group F rank 2\ntask member x1 in  q\n");
    FAIL("expected an error");
  } catch (const ScenarioError& e) {
    CHECK(e.column == 20);
  }
}

TEST_CASE("scenario: quotient specs and presentations") {
  Alphabet a({"x", "y"});
  auto q = parse_quotspec("finite_perm degree 4 { x -> (0 1)(2 3), y -> (1 3 2) }", a);
  CHECK(q.perms[0] == std::vector<int>{1, 0, 3, 2});
  CHECK(q.perms[1] == std::vector<int>{0, 3, 1, 2});
  CHECK(format_quotspec(q, a) == "finite_perm degree 4 { x -> (0 1)(2 3), y -> (1 3 2) }");
  CHECK(format_quotspec(parse_quotspec("free rank 1 { }", a), a) == "free rank 1 {}");
  CHECK_THROWS_AS(parse_quotspec("free_abelian rank 2 { x -> (1) }", a), ScenarioError);
  CHECK_THROWS_AS(parse_quotspec("free rank 1 { z -> y1 }", a), ScenarioError);
  CHECK(parse_presentation("Z^2 / (2 0), (0 4)") == parse_group("Z/2 + Z/4"));
  CHECK(parse_presentation("Z^2 / (2 2), (0 0)") == parse_group("Z/2 + Z"));
  CHECK(parse_presentation("Z/6 + Z/4") == parse_group("Z/2 + Z/12"));
}

TEST_CASE("scenario: pretty-print and re-parse give the same scenario") {
  for (const auto& [file, text] : bundled_suite("paper")) {
    Scenario s = parse_scenario(text);
    Scenario again = parse_scenario(format_scenario(s));
    CHECK_MESSAGE(again == s, file);
    CHECK(format_scenario(again) == format_scenario(s));
  }
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 60; ++i) {
    Scenario s = random_scenario(rng);
    std::string text = format_scenario(s);
    Scenario parsed = parse_scenario(text);
    CHECK_MESSAGE(parsed == s, text);
  }
}

TEST_CASE("runner: member task passes decide through") {
  Scenario s = parse_scenario(kRankFive);
  Report r = run(s, {});
  REQUIRE(r.results.size() == 1);
  CHECK(r.results[0].status == "pass");
  GroupContext ctx = build_context(s);
  const auto& t = std::get<MemberTask>(s.tasks[0]);
  Verdict v = decide_word(t.word, t.ideal, ctx, DecideConfig{});
  REQUIRE(v.member());
  CHECK(r.results[0].fields[0] == std::pair<std::string, std::string>{"verdict", "member"});
  bool digest_seen = false;
  for (const auto& [k, val] : r.results[0].fields)
    if (k == "digest") {
      digest_seen = true;
      CHECK(val == certificate_digest(v.certificate, ctx.alphabet));
    }
  CHECK(digest_seen);
}

TEST_CASE("runner: outcomes, expectations and caps") {
  Scenario s = parse_scenario(
      "group F rank 2 names x y\n"
      "subgroup r closure x quotient free rank 1 { y -> y1 }\n"
      "task member x in r r expect member\n"    // really a nonmember: fail
      "task member x in r expect member\n"      // pass
      "task functor lambda2 Z^2 expect Z^2\n"   // wrong expectation: fail
      "task homology Z/3 degree 5 expect Z/3\n" // pass
      "task cocycle finite_perm degree 9 { x -> (0 1), y -> (0 1 2 3 4 5 6 7 8) }\n");  // S9: over the table cap
  Report r = run(s, {});
  REQUIRE(r.results.size() == 5);
  CHECK(r.results[0].status == "fail");
  CHECK(r.results[1].status == "pass");
  CHECK(r.results[2].status == "fail");
  CHECK(r.results[3].status == "pass");
  CHECK(r.results[4].status == "skip");
  CHECK(r.failed());
  std::string m = format_machine(r);
  CHECK(m.find("id=1 kind=member status=fail verdict=nonmember") == 0);
}

TEST_CASE("runner: identical reports for any jobs and seed") {
  RunOptions base;
  base.defaults.degree = 4;
  std::string ref = format_machine(run_suite("paper", base));
  for (unsigned jobs : {2u, 4u})
    for (std::uint64_t seed : {0ULL, 99ULL}) {
      RunOptions o = base;
      o.jobs = jobs;
      o.seed = seed;
      CHECK(format_machine(run_suite("paper", o)) == ref);
    }
}
