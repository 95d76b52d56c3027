#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dimsub/abelian.hpp"
#include "dimsub/membership.hpp"

namespace workbench {

using namespace dimsub;

/// Syntax or validation error; the message starts with "line L, column C:".
struct ScenarioError : Error {
  ScenarioError(int line, int column, const std::string& what);
  int line, column;
};

struct QuotSpec {
  enum class Kind { Trivial, Free, FreeAbelian, FinitePerm, Meet };
  Kind kind = Kind::Trivial;
  int size = 0;                         // target rank, lattice dimension or permutation degree
  std::vector<Word> free_images;        // per ambient generator, over y1..y{size}
  std::vector<std::vector<long>> abelian_images;
  std::vector<std::vector<int>> perms;  // point -> image
  std::vector<std::string> parts;       // Meet: subgroup names

  friend bool operator==(const QuotSpec&, const QuotSpec&) = default;
};

struct SubgroupDecl {
  std::string name;
  std::vector<WordExpr> closure;
  QuotSpec quotient;
  friend bool operator==(const SubgroupDecl&, const SubgroupDecl&) = default;
};

struct DeclaredInclusion {
  std::string sub, super;
  friend bool operator==(const DeclaredInclusion&, const DeclaredInclusion&) = default;
};

// placeholder value for default-constructed tasks
inline IdealExpr whole_ideal() { return IdealExpr::from_monomials({{IdealAtom::whole()}}); }

struct MemberTask {
  WordExpr word;
  IdealExpr ideal = whole_ideal();
  std::optional<int> degree, radius;
  std::optional<Verdict::Kind> expect;
  friend bool operator==(const MemberTask&, const MemberTask&) = default;
};

struct IdentityTask {
  IdealExpr a = whole_ideal(), b = whole_ideal(), rhs = whole_ideal();
  int degree = 0;
  std::optional<bool> expect_equal;
  friend bool operator==(const IdentityTask&, const IdentityTask&) = default;
};

struct FunctorTask {
  QuadFunctor kind = QuadFunctor::Tensor;
  FgAbGroup group;
  std::optional<FgAbGroup> expect;
  friend bool operator==(const FunctorTask&, const FunctorTask&) = default;
};

struct HomologyTask {
  FgAbGroup group;
  int degree = 0;
  std::optional<FgAbGroup> expect;
  friend bool operator==(const HomologyTask&, const HomologyTask&) = default;
};

struct CocycleTask {
  QuotSpec quotient;  // FinitePerm
  friend bool operator==(const CocycleTask&, const CocycleTask&) = default;
};

struct SuiteTask {
  std::string name;
  friend bool operator==(const SuiteTask&, const SuiteTask&) = default;
};

using Task = std::variant<MemberTask, IdentityTask, FunctorTask, HomologyTask, CocycleTask, SuiteTask>;

struct Scenario {
  std::optional<std::string> group_name;
  Alphabet alphabet;
  std::vector<SubgroupDecl> subgroups;
  std::vector<DeclaredInclusion> inclusions;
  std::vector<Task> tasks;
  std::vector<int> task_lines;  // source line of each task, 0 when built in code

  friend bool operator==(const Scenario& a, const Scenario& b);
};

/// Parses and validates: names resolve, closure words lie in their quotient kernels, and
/// declared inclusions hold on generator balls.
Scenario parse_scenario(std::string_view text);
/// Pretty-printer; parse_scenario(format_scenario(s)) == s.
std::string format_scenario(const Scenario& s);

/// Fresh context with its own oracles (no state shared between calls).
GroupContext build_context(const Scenario& s);

QuotSpec parse_quotspec(std::string_view text, const Alphabet& alphabet);
std::string format_quotspec(const QuotSpec& q, const Alphabet& alphabet);
/// Presentation: "Z/2 + Z^3", "0", or "Z^n / (row), (row), ...".
FgAbGroup parse_presentation(std::string_view text);

/// Names of the bundled suites and their scenario text.
std::vector<std::string> bundled_suites();
std::vector<std::pair<std::string, std::string>> bundled_suite(const std::string& name);

}  // namespace workbench
