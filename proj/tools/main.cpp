// dimsub: command-line workbench over the dimsub library.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dimsub/homology.hpp"
#include "dimsub/magnus.hpp"
#include "dimsub/quotlab.hpp"
#include "runner.hpp"

using namespace workbench;

namespace {

// exit codes
constexpr int kOk = 0;
constexpr int kTaskFailed = 1;
constexpr int kUsage = 2;

struct Common {
  int degree = 6;
  int radius = 4;
  std::string scenario;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::string output = "text";
  bool timing = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario load(const Common& c) {
  if (c.scenario.empty()) return {};
  return parse_scenario(slurp(c.scenario));
}

Alphabet alphabet_of(const Scenario& s, const std::string& names, int rank) {
  if (!names.empty()) {
    std::vector<std::string> n;
    std::stringstream ss(names);
    for (std::string part; std::getline(ss, part, ',');) n.push_back(part);
    return Alphabet(n);
  }
  if (s.group_name) return s.alphabet;
  return Alphabet::standard(rank);
}

RunOptions options(const Common& c) {
  RunOptions o;
  o.jobs = c.jobs;
  o.seed = c.seed;
  o.defaults.degree = c.degree;
  o.defaults.radius = c.radius;
  return o;
}

// wraps a single computed task into the scenario runner so the output format is shared
int report_task(Scenario s, Task t, const Common& c) {
  s.tasks = {std::move(t)};
  s.task_lines = {0};
  Report r = run(s, options(c));
  std::cout << (c.output == "machine" ? format_machine(r, c.timing) : format_text(r, c.timing));
  return r.failed() ? kTaskFailed : kOk;
}

int do_expand(const std::string& word, const std::string& names, int rank, const Common& c) {
  Scenario s = load(c);
  Alphabet a = alphabet_of(s, names, rank);
  Word w = parse_word(word, a);
  TruncatedSeries e = expand(w, a.rank(), c.degree);
  const auto& basis = e.basis();
  bool machine = c.output == "machine";
  bool first = true;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Integer& k = e.coefficients()[i];
    if (k == 0) continue;
    Monomial m = basis.monomial(i);
    std::string mono;
    for (std::size_t j = 0; j < m.size(); ++j) mono += (j ? "*" : "") + ("X_" + a.name(m[j]));
    if (mono.empty()) mono = "1";
    if (machine) {
      std::cout << "monomial=" << mono << " coeff=" << to_string(k) << "\n";
    } else {
      std::cout << (first ? "" : (k > 0 ? " + " : " - "));
      if (first && k < 0) std::cout << "-";
      Integer ak = abs(k);
      if (ak != 1 || m.empty()) std::cout << to_string(ak) << (m.empty() ? "" : "*");
      if (!m.empty()) std::cout << mono;
    }
    first = false;
  }
  if (!machine) std::cout << (first ? "0" : "") << "  (mod degree > " << c.degree << ")\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dimsub: generalized dimension subgroups workbench"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* sub) {
    sub->add_option("-d,--degree", c.degree, "truncation / shadow degree (homology: degree k)");
    sub->add_option("-L,--radius", c.radius, "search radius");
    sub->add_option("--scenario", c.scenario, "scenario file (group and subgroups)");
    sub->add_option("--jobs", c.jobs, "parallel tasks");
    sub->add_option("--seed", c.seed, "task order and transversal seed");
    sub->add_option("--output", c.output, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    sub->add_flag("--timing", c.timing, "print wall-clock per task");
  };

  std::string word, ideal, ideal_b, rhs, kind, group, names, suite, quot;
  int rank = 2;
  bool print_only = false;

  auto* expand_cmd = app.add_subcommand("expand", "truncated Magnus expansion of a word");
  expand_cmd->add_option("word", word)->required();
  expand_cmd->add_option("--names", names, "comma separated generator names");
  expand_cmd->add_option("--rank", rank, "rank when no names are given");
  common(expand_cmd);

  auto* member_cmd = app.add_subcommand("member", "decide w - 1 in an ideal");
  member_cmd->add_option("word", word)->required();
  member_cmd->add_option("ideal", ideal)->required();
  common(member_cmd);

  auto* identity_cmd = app.add_subcommand("identity", "compare A meet B with C on shadows");
  identity_cmd->add_option("a", ideal)->required();
  identity_cmd->add_option("b", ideal_b)->required();
  identity_cmd->add_option("rhs", rhs)->required();
  common(identity_cmd);

  auto* functor_cmd = app.add_subcommand("functor", "quadratic functor value");
  functor_cmd->add_option("kind", kind, "tensor2 sp2 lambda2 antitensor2 gamma2 tor l1sp2 l1lambda2")->required();
  functor_cmd->add_option("group", group, "e.g. 'Z/2 + Z' or 'Z^2 / (2 0), (0 4)'")->required();
  common(functor_cmd);

  auto* homology_cmd = app.add_subcommand("homology", "H_k of a finitely generated abelian group");
  homology_cmd->add_option("group", group)->required();
  common(homology_cmd);

  auto* cocycle_cmd = app.add_subcommand("cocycle", "2-cocycle checks for a finite quotient");
  cocycle_cmd->add_option("quotient", quot, "finite_perm degree N { x -> (0 1), ... }")->required();
  cocycle_cmd->add_option("--names", names, "comma separated generator names");
  cocycle_cmd->add_option("--rank", rank, "rank when no names are given");
  common(cocycle_cmd);

  auto* suite_cmd = app.add_subcommand("suite", "run a bundled suite or a scenario file");
  suite_cmd->add_option("name", suite, "bundled suite name (paper)");
  suite_cmd->add_flag("--print", print_only, "pretty-print the scenario and exit");
  common(suite_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*expand_cmd) return do_expand(word, names, rank, c);

    if (*member_cmd || *identity_cmd) {
      Scenario s = load(c);
      if (!s.group_name) throw Error("member and identity need --scenario with a group declaration");
      std::vector<std::string> sub;
      for (const auto& d : s.subgroups) sub.push_back(d.name);
      GroupContext ctx = build_context(s);
      if (*member_cmd) {
        MemberTask t{parse_word_expr(word, s.alphabet), parse_ideal_expr(ideal, sub), std::nullopt, std::nullopt,
                     std::nullopt};
        ctx.check_resolves(t.ideal);
        return report_task(s, t, c);
      }
      IdentityTask t{parse_ideal_expr(ideal, sub), parse_ideal_expr(ideal_b, sub), parse_ideal_expr(rhs, sub), c.degree,
                     std::nullopt};
      for (const auto* e : {&t.a, &t.b, &t.rhs}) ctx.check_resolves(*e);
      return report_task(s, t, c);
    }
    if (*functor_cmd) {
      auto k = parse_functor(kind);
      if (!k) throw Error("unknown functor '" + kind + "'");
      return report_task({}, FunctorTask{*k, parse_presentation(group), std::nullopt}, c);
    }
    if (*homology_cmd) return report_task({}, HomologyTask{parse_presentation(group), c.degree, std::nullopt}, c);
    if (*cocycle_cmd) {
      Scenario s = load(c);
      Alphabet a = alphabet_of(s, names, rank);
      s.group_name = s.group_name.value_or("F");
      s.alphabet = a;
      CocycleTask t{parse_quotspec(quot, a)};
      if (t.quotient.kind != QuotSpec::Kind::FinitePerm) throw Error("cocycle needs a finite_perm quotient");
      return report_task(s, t, c);
    }
    // suite
    Report r;
    if (!c.scenario.empty()) {
      if (!suite.empty()) throw Error("give either a suite name or --scenario, not both");
      Scenario s = load(c);
      if (print_only) {
        std::cout << format_scenario(s);
        return kOk;
      }
      r = run(s, options(c));
    } else {
      if (suite.empty()) suite = "paper";
      if (print_only) {
        for (const auto& [file, text] : bundled_suite(suite))
          std::cout << "# " << file << "\n" << format_scenario(parse_scenario(text)) << "\n";
        return kOk;
      }
      r = run_suite(suite, options(c));
    }
    std::cout << (c.output == "machine" ? format_machine(r, c.timing) : format_text(r, c.timing));
    return r.failed() ? kTaskFailed : kOk;
  } catch (const CapExceeded& e) {
    std::cerr << "dimsub: resource cap: " << e.what() << "\n";
    return kTaskFailed;
  } catch (const Error& e) {
    std::cerr << "dimsub: " << e.what() << "\n";
    return kUsage;
  }
}
