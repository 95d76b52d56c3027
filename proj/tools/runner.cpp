#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "dimsub/homology.hpp"
#include "dimsub/quotlab.hpp"

namespace workbench {

bool Report::failed() const { return count("fail") > 0; }

std::size_t Report::count(const std::string& status) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [&](const TaskResult& r) { return r.status == status; }));
}

std::string certificate_digest(const Certificate& c, const Alphabet& a) {
  // FNV-1a over a canonical rendering
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  for (const auto& t : c.terms) {
    feed(to_string(t.coeff));
    for (const auto& w : t.words) feed(a.format(w));
    for (const auto& f : t.factors) feed(f.format(a));
    feed(std::to_string(t.summand));
    for (auto w : t.witness) feed(std::to_string(w));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string format_monomial(const Monomial& m, const Alphabet& a) {
  if (m.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "*" : "") + ("X_" + a.name(m[i]));
  return s;
}

std::string task_text(const Scenario& s, const Task& t) {
  Scenario one;
  one.group_name = s.group_name;
  one.alphabet = s.alphabet;
  one.tasks = {t};
  std::string all = format_scenario(one);
  auto pos = all.rfind("task ");
  std::string line = all.substr(pos + 5);
  if (!line.empty() && line.back() == '\n') line.pop_back();
  return line;
}


void member_task(const MemberTask& t, const GroupContext& ctx, const RunOptions& opt, TaskResult& r) {
  DecideConfig cfg = opt.defaults;
  if (t.degree) cfg.degree = *t.degree;
  if (t.radius) cfg.radius = *t.radius;
  Verdict v = decide_word(t.word, t.ideal, ctx, cfg);
  r.fields = {{"verdict", to_string(v.kind)}, {"method", v.method}, {"degree", std::to_string(cfg.degree)},
              {"radius", std::to_string(cfg.radius)}};
  if (v.member()) {
    r.fields.emplace_back("terms", std::to_string(v.certificate.size()));
    r.fields.emplace_back("digest", certificate_digest(v.certificate, ctx.alphabet));
  } else if (v.non_member()) {
    r.fields.emplace_back("separating_degree", std::to_string(v.degree));
    r.fields.emplace_back("leading", format_monomial(v.leading, ctx.alphabet));
  } else {
    r.fields.emplace_back("diagnostics", v.diagnostics);
  }
  if (t.expect) r.fields.emplace_back("expect", to_string(*t.expect));
  bool wrong = t.expect && ((*t.expect == Verdict::Kind::Member && v.non_member()) ||
                            (*t.expect == Verdict::Kind::NonMember && v.member()));
  r.status = wrong ? "fail" : v.kind == Verdict::Kind::Unknown ? "unknown" : "pass";
}

void identity_task(const IdentityTask& t, const Scenario& s, const GroupContext& ctx, const RunOptions& opt,
                   TaskResult& r) {
  std::vector<Inclusion> hyp;
  for (const auto& i : s.inclusions) hyp.push_back({i.sub, i.super});
  auto rep = identity_report(t.a, t.b, t.rhs, t.degree, ctx, hyp, opt.defaults);
  std::size_t members = 0;
  for (const auto& row : rep.rhs_in_lhs) members += row.verdict.member() ? 1 : 0;
  r.fields = {{"degree", std::to_string(t.degree)},
              {"shadow_equal", rep.shadow_equal ? "true" : "false"},
              {"meet_rank", std::to_string(rep.meet_rank)},
              {"rhs_rank", std::to_string(rep.rhs_rank)},
              {"rhs_rows", std::to_string(rep.rhs_in_lhs.size())},
              {"rhs_rows_member", std::to_string(members)},
              {"certificates", rep.certificates_verified ? "verified" : "failed"}};
  if (t.expect_equal) r.fields.emplace_back("expect", *t.expect_equal ? "equal" : "unequal");
  bool wrong = !rep.certificates_verified || (t.expect_equal && *t.expect_equal != rep.shadow_equal);
  r.status = wrong ? "fail" : "pass";
}

void group_value(const FgAbGroup& got, const std::optional<FgAbGroup>& expect, TaskResult& r) {
  r.fields.emplace_back("value", got.format());
  if (expect) r.fields.emplace_back("expect", expect->format());
  r.status = expect && !(*expect == got) ? "fail" : "pass";
}

void cocycle_task(const CocycleTask& t, const Scenario& s, const RunOptions& opt, TaskResult& r) {
  auto ct = CosetTable::from_permutations(s.alphabet.rank(), t.quotient.size, t.quotient.perms);
  auto c = build_cocycle(ct, make_transversal(ct, opt.seed));
  auto tab = cocycle_table_check(c);
  auto id = cocycle_identity_check(c);
  auto lm = lemma52_check(c);
  r.fields = {{"order", std::to_string(ct.size())},
              {"pairs", std::to_string(tab.checked)},
              {"table_failures", std::to_string(tab.failures.size())},
              {"triples", std::to_string(id.checked)},
              {"identity_failures", std::to_string(id.failures.size())},
              {"rr_element_failures", std::to_string(lm.failures.size())}};
  if (!lm.failures.empty()) r.fields.emplace_back("first_rr_failure", lm.failures.front());
  r.status = tab.ok() && id.ok() && lm.ok() ? "pass" : "fail";
}

std::vector<TaskResult> run_one(const Scenario& s, std::size_t index, const RunOptions& opt) {
  const Task& task = s.tasks[index];
  TaskResult r;
  r.id = std::to_string(index + 1);
  r.what = task_text(s, task);
  static const char* kinds[] = {"member", "identity", "functor", "homology", "cocycle", "suite"};
  r.kind = kinds[task.index()];
  auto t0 = std::chrono::steady_clock::now();
  std::vector<TaskResult> nested;
  try {
    GroupContext ctx = build_context(s);
    std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, MemberTask>) member_task(t, ctx, opt, r);
          else if constexpr (std::is_same_v<T, IdentityTask>) identity_task(t, s, ctx, opt, r);
          else if constexpr (std::is_same_v<T, FunctorTask>) group_value(functor_eval(t.kind, t.group).value, t.expect, r);
          else if constexpr (std::is_same_v<T, HomologyTask>) {
            r.fields.emplace_back("degree", std::to_string(t.degree));
            group_value(homology(t.group, t.degree).value, t.expect, r);
          } else if constexpr (std::is_same_v<T, CocycleTask>) cocycle_task(t, s, opt, r);
          else {
            RunOptions inner = opt;
            inner.jobs = 1;
            Report sub = run_suite(t.name, inner);
            nested = sub.results;
            r.fields = {{"tasks", std::to_string(sub.results.size())}, {"failed", std::to_string(sub.count("fail"))}};
            r.status = sub.failed() ? "fail" : "pass";
          }
        },
        task);
  } catch (const CapExceeded& e) {
    r.status = "skip";
    r.fields.emplace_back("reason", e.what());
  } catch (const Error& e) {
    r.status = "fail";
    r.fields.emplace_back("error", e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::vector<TaskResult> out{r};
  for (auto& n : nested) {
    n.id = r.id + "/" + n.id;
    out.push_back(std::move(n));
  }
  return out;
}

std::string quote(const std::string& v) {
  bool plain = !v.empty() && v.find_first_of(" \t\"=\\") == std::string::npos;
  if (plain) return v;
  std::string q = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + "\"";
}

}  // namespace

Report run(const Scenario& s, const RunOptions& opt) {
  std::size_t n = s.tasks.size();
  std::vector<std::vector<TaskResult>> slots(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (opt.seed != 0) std::shuffle(order.begin(), order.end(), std::mt19937_64(opt.seed));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < n;) slots[order[k]] = run_one(s, order[k], opt);
  };
  unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  Report rep;
  for (auto& slot : slots)
    for (auto& r : slot) rep.results.push_back(std::move(r));
  return rep;
}

Report run_suite(const std::string& name, const RunOptions& opt) {
  // scenarios are independent: run them one after another, tasks inside in parallel
  Report all;
  for (const auto& [file, text] : bundled_suite(name)) {
    Scenario s = parse_scenario(text);
    for (auto& r : run(s, opt).results) {
      r.id = name + "/" + file + ":" + r.id;
      all.results.push_back(std::move(r));
    }
  }
  return all;
}

std::string format_machine(const Report& r, bool timing) {
  std::ostringstream out;
  for (const auto& t : r.results) {
    out << "id=" << quote(t.id) << " kind=" << t.kind << " status=" << t.status;
    for (const auto& [k, v] : t.fields) out << " " << k << "=" << quote(v);
    if (timing) out << " seconds=" << std::fixed << std::setprecision(3) << t.seconds;
    out << " task=" << quote(t.what) << "\n";
  }
  return out.str();
}

std::string format_text(const Report& r, bool timing) {
  std::ostringstream out;
  for (const auto& t : r.results) {
    out << "[" << t.status << "] " << t.id << "  " << t.what;
    if (timing) out << "  (" << std::fixed << std::setprecision(2) << t.seconds << " s)";
    out << "\n";
    for (const auto& [k, v] : t.fields) out << "    " << k << ": " << v << "\n";
  }
  out << r.results.size() << " tasks: " << r.count("pass") << " pass, " << r.count("fail") << " fail, "
      << r.count("unknown") << " unknown, " << r.count("skip") << " skipped\n";
  return out.str();
}

}  // namespace workbench
