#include "scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace workbench {

ScenarioError::ScenarioError(int l, int c, const std::string& what)
    : Error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what), line(l), column(c) {}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.group_name == b.group_name && a.alphabet.names() == b.alphabet.names() && a.subgroups == b.subgroups &&
         a.inclusions == b.inclusions && a.tasks == b.tasks;
}

namespace {

// a slice of one source line, remembering where it started
struct Span {
  std::string_view text;
  int line = 0;
  int col = 1;  // 1-based column of text[0]

  [[noreturn]] void fail(const std::string& what, std::size_t at = 0) const {
    throw ScenarioError(line, col + static_cast<int>(at), what);
  }
  Span sub(std::size_t pos, std::size_t n = std::string_view::npos) const {
    return {text.substr(pos, n), line, col + static_cast<int>(pos)};
  }
  Span trimmed() const {
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return sub(b, e - b);
  }
  bool empty() const { return text.empty(); }
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// position of keyword `kw` as a whole token at bracket depth 0, or npos
std::size_t find_kw(std::string_view s, std::string_view kw, std::size_t from = 0) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    else if (c == ')' || c == ']' || c == '}') --depth;
    if (i < from || depth != 0) continue;
    if (s.compare(i, kw.size(), kw) != 0) continue;
    bool left = i == 0 || is_space(s[i - 1]);
    bool right = i + kw.size() == s.size() || is_space(s[i + kw.size()]);
    if (left && right) return i;
  }
  return std::string_view::npos;
}

std::vector<Span> split_top(const Span& s, char sep) {
  std::vector<Span> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.text.size(); ++i) {
    char c = s.text[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    else if (c == ')' || c == ']' || c == '}') --depth;
    else if (c == sep && depth == 0) {
      out.push_back(s.sub(start, i - start).trimmed());
      start = i + 1;
    }
  }
  out.push_back(s.sub(start).trimmed());
  return out;
}

std::vector<Span> tokens(const Span& s) {
  std::vector<Span> out;
  std::size_t i = 0;
  while (i < s.text.size()) {
    while (i < s.text.size() && is_space(s.text[i])) ++i;
    std::size_t b = i;
    while (i < s.text.size() && !is_space(s.text[i])) ++i;
    if (i > b) out.push_back(s.sub(b, i - b));
  }
  return out;
}

long to_int(const Span& s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.text.data(), s.text.data() + s.text.size(), v);
  if (ec != std::errc() || p != s.text.data() + s.text.size()) s.fail("expected an integer, got '" + std::string(s.text) + "'");
  return v;
}

bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// runs f, turning library errors into positioned ones
template <class F>
auto at(const Span& s, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    s.fail(e.what());
  }
}

Alphabet target_alphabet(int k) {
  std::vector<std::string> n;
  for (int i = 1; i <= k; ++i) n.push_back("y" + std::to_string(i));
  return Alphabet(n);
}

std::vector<int> parse_cycles(const Span& s, int degree) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) img[static_cast<std::size_t>(i)] = i;
  std::set<int> seen;
  std::size_t i = 0;
  std::string_view t = s.text;
  while (i < t.size()) {
    if (is_space(t[i])) { ++i; continue; }
    if (t[i] != '(') s.fail("expected '(' in cycle notation", i);
    std::size_t close = t.find(')', i);
    if (close == std::string_view::npos) s.fail("unclosed cycle", i);
    std::vector<int> cyc;
    for (const auto& tok : tokens(s.sub(i + 1, close - i - 1))) {
      long p = to_int(tok);
      if (p < 0 || p >= degree) tok.fail("point outside 0.." + std::to_string(degree - 1));
      if (!seen.insert(static_cast<int>(p)).second) tok.fail("point repeated in cycles");
      cyc.push_back(static_cast<int>(p));
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) img[static_cast<std::size_t>(cyc[k])] = cyc[(k + 1) % cyc.size()];
    i = close + 1;
  }
  return img;
}

std::string format_cycles(const std::vector<int>& p) {
  std::string out;
  std::vector<bool> done(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      out += (first ? "" : " ") + std::to_string(j);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

QuotSpec parse_quot(const Span& s, const Alphabet& alphabet) {
  auto toks = tokens(s);
  if (toks.empty()) s.fail("missing quotient");
  QuotSpec q;
  std::string_view kind = toks[0].text;
  if (kind == "trivial") {
    if (toks.size() != 1) toks[1].fail("unexpected text after 'trivial'");
    return q;
  }
  if (kind == "meet") {
    q.kind = QuotSpec::Kind::Meet;
    for (std::size_t i = 1; i < toks.size(); ++i) q.parts.emplace_back(toks[i].text);
    if (q.parts.size() < 2) s.fail("meet needs at least two subgroup names");
    return q;
  }
  if (kind == "free") q.kind = QuotSpec::Kind::Free;
  else if (kind == "free_abelian") q.kind = QuotSpec::Kind::FreeAbelian;
  else if (kind == "finite_perm") q.kind = QuotSpec::Kind::FinitePerm;
  else toks[0].fail("unknown quotient kind '" + std::string(kind) + "'");
  std::string_view size_kw = q.kind == QuotSpec::Kind::FinitePerm ? "degree" : "rank";
  if (toks.size() < 3 || toks[1].text != size_kw) s.fail("expected '" + std::string(kind) + " " + std::string(size_kw) + " N { ... }'");
  q.size = static_cast<int>(to_int(toks[2]));
  if (q.size < 0 || (q.kind == QuotSpec::Kind::FinitePerm && q.size < 1)) toks[2].fail("bad size");

  std::size_t open = s.text.find('{');
  std::size_t close = s.text.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) s.fail("expected '{ ... }'");
  if (!s.sub(close + 1).trimmed().empty()) s.fail("unexpected text after '}'", close + 1);

  auto n = static_cast<std::size_t>(alphabet.rank());
  Alphabet target = target_alphabet(q.size);
  q.free_images.assign(q.kind == QuotSpec::Kind::Free ? n : 0, Word{});
  q.abelian_images.assign(q.kind == QuotSpec::Kind::FreeAbelian ? n : 0, std::vector<long>(static_cast<std::size_t>(q.size), 0));
  if (q.kind == QuotSpec::Kind::FinitePerm) {
    std::vector<int> id(static_cast<std::size_t>(q.size));
    for (int i = 0; i < q.size; ++i) id[static_cast<std::size_t>(i)] = i;
    q.perms.assign(n, id);
  }
  Span body = s.sub(open + 1, close - open - 1).trimmed();
  if (body.empty()) return q;
  std::set<int> assigned;
  for (const auto& entry : split_top(body, ',')) {
    std::size_t arrow = entry.text.find("->");
    if (arrow == std::string_view::npos) entry.fail("expected 'generator -> image'");
    Span name = entry.sub(0, arrow).trimmed();
    Span value = entry.sub(arrow + 2).trimmed();
    int g = alphabet.index_of(name.text);
    if (g < 0) name.fail("unknown generator '" + std::string(name.text) + "'");
    if (!assigned.insert(g).second) name.fail("generator assigned twice");
    auto gi = static_cast<std::size_t>(g);
    switch (q.kind) {
      case QuotSpec::Kind::Free:
        q.free_images[gi] = at(value, [&] { return parse_word(value.text, target); });
        break;
      case QuotSpec::Kind::FreeAbelian: {
        if (value.text.size() < 2 || value.text.front() != '(' || value.text.back() != ')') value.fail("expected '(a b ...)'");
        auto comps = tokens(value.sub(1, value.text.size() - 2));
        if (comps.size() != static_cast<std::size_t>(q.size)) value.fail("vector of the wrong length");
        for (std::size_t k = 0; k < comps.size(); ++k) q.abelian_images[gi][k] = to_int(comps[k]);
        break;
      }
      case QuotSpec::Kind::FinitePerm:
        q.perms[gi] = parse_cycles(value, q.size);
        break;
      default:
        break;
    }
  }
  return q;
}

std::shared_ptr<const QuotientOracle> make_oracle(const QuotSpec& q, int rank,
                                                  const std::map<std::string, SubgroupHandle>& known) {
  switch (q.kind) {
    case QuotSpec::Kind::Trivial: return QuotientOracle::trivial(rank);
    case QuotSpec::Kind::Free: return QuotientOracle::free(q.free_images, q.size);
    case QuotSpec::Kind::FreeAbelian: return QuotientOracle::free_abelian(q.abelian_images);
    case QuotSpec::Kind::FinitePerm: return QuotientOracle::permutation(q.size, q.perms);
    case QuotSpec::Kind::Meet: {
      std::vector<std::shared_ptr<const QuotientOracle>> parts;
      for (const auto& p : q.parts) parts.push_back(known.at(p).oracle);
      return QuotientOracle::meet(parts);
    }
  }
  throw Error("unreachable quotient kind");
}

std::vector<std::string> subgroup_names(const Scenario& s) {
  std::vector<std::string> n;
  for (const auto& g : s.subgroups) n.push_back(g.name);
  return n;
}

IdealExpr parse_ideal(const Span& s, const Scenario& sc, const GroupContext& ctx) {
  return at(s, [&] {
    IdealExpr e = parse_ideal_expr(s.text, subgroup_names(sc));
    ctx.check_resolves(e);
    return e;
  });
}

// options at the end of a task line: keyword value pairs
std::map<std::string, Span> options(const std::vector<Span>& toks, std::size_t from, const std::set<std::string>& allowed) {
  std::map<std::string, Span> out;
  for (std::size_t i = from; i < toks.size(); i += 2) {
    std::string k(toks[i].text);
    if (!allowed.count(k)) toks[i].fail("unexpected '" + k + "'");
    if (i + 1 >= toks.size()) toks[i].fail("'" + k + "' needs a value");
    if (out.count(k)) toks[i].fail("'" + k + "' given twice");
    out.emplace(k, toks[i + 1]);
  }
  return out;
}

std::optional<Verdict::Kind> parse_expect_verdict(const Span& s) {
  if (s.text == "member") return Verdict::Kind::Member;
  if (s.text == "nonmember") return Verdict::Kind::NonMember;
  if (s.text == "unknown") return Verdict::Kind::Unknown;
  s.fail("expect must be member, nonmember or unknown");
}

// first index of a token equal to one of kws, or toks.size()
std::size_t first_of(const std::vector<Span>& toks, std::size_t from, std::initializer_list<std::string_view> kws) {
  for (std::size_t i = from; i < toks.size(); ++i)
    for (auto k : kws)
      if (toks[i].text == k) return i;
  return toks.size();
}

Span join(const Span& line, const std::vector<Span>& toks, std::size_t b, std::size_t e) {
  if (b >= e) return line.sub(line.text.size());
  auto start = static_cast<std::size_t>(toks[b].col - line.col);
  auto end = static_cast<std::size_t>(toks[e - 1].col - line.col) + toks[e - 1].text.size();
  return line.sub(start, end - start);
}

Task parse_task(const Span& line, const Scenario& sc, const GroupContext& ctx) {
  auto toks = tokens(line);
  if (toks.size() < 2) line.fail("task needs a kind");
  std::string_view kind = toks[1].text;
  Span rest = line.sub(static_cast<std::size_t>(toks[1].col - line.col) + kind.size()).trimmed();

  if (kind == "member") {
    if (!sc.group_name) line.fail("member task before the group declaration");
    std::size_t in = find_kw(rest.text, "in");
    if (in == std::string_view::npos) rest.fail("expected 'member WORD in IDEAL'");
    Span word = rest.sub(0, in).trimmed();
    auto after = tokens(rest.sub(in + 2));
    std::size_t opt = first_of(after, 0, {"degree", "radius", "expect"});
    MemberTask t;
    t.word = at(word, [&] { return parse_word_expr(word.text, sc.alphabet); });
    t.ideal = parse_ideal(join(rest, after, 0, opt), sc, ctx);
    auto o = options(after, opt, {"degree", "radius", "expect"});
    if (o.count("degree")) t.degree = static_cast<int>(to_int(o.at("degree")));
    if (o.count("radius")) t.radius = static_cast<int>(to_int(o.at("radius")));
    if (o.count("expect")) t.expect = parse_expect_verdict(o.at("expect"));
    return t;
  }
  if (kind == "identity") {
    if (!sc.group_name) line.fail("identity task before the group declaration");
    auto rt = tokens(rest);
    std::size_t m = first_of(rt, 0, {"meet"}), q = first_of(rt, m, {"equals"}), d = first_of(rt, q, {"degree"});
    if (m == rt.size() || q == rt.size() || d == rt.size()) rest.fail("expected 'identity A meet B equals C degree N'");
    IdentityTask t;
    t.a = parse_ideal(join(rest, rt, 0, m), sc, ctx);
    t.b = parse_ideal(join(rest, rt, m + 1, q), sc, ctx);
    t.rhs = parse_ideal(join(rest, rt, q + 1, d), sc, ctx);
    auto o = options(rt, d, {"degree", "expect"});
    t.degree = static_cast<int>(to_int(o.at("degree")));
    if (o.count("expect")) {
      const Span& e = o.at("expect");
      if (e.text != "equal" && e.text != "unequal") e.fail("expect must be equal or unequal");
      t.expect_equal = e.text == "equal";
    }
    return t;
  }
  if (kind == "functor") {
    auto rt = tokens(rest);
    if (rt.empty()) rest.fail("expected 'functor KIND PRESENTATION'");
    FunctorTask t;
    auto k = parse_functor(rt[0].text);
    if (!k) rt[0].fail("unknown functor '" + std::string(rt[0].text) + "'");
    t.kind = *k;
    Span body = rest.sub(rt[0].text.size()).trimmed();
    std::size_t ex = find_kw(body.text, "expect");
    Span pres = body.sub(0, ex).trimmed();
    t.group = at(pres, [&] { return parse_presentation(pres.text); });
    if (ex != std::string_view::npos) {
      Span e = body.sub(ex + 6).trimmed();
      t.expect = at(e, [&] { return parse_presentation(e.text); });
    }
    return t;
  }
  if (kind == "homology") {
    std::size_t dg = find_kw(rest.text, "degree");
    if (dg == std::string_view::npos) rest.fail("expected 'homology PRESENTATION degree N'");
    HomologyTask t;
    Span pres = rest.sub(0, dg).trimmed();
    t.group = at(pres, [&] { return parse_presentation(pres.text); });
    Span tail = rest.sub(dg + 6).trimmed();
    std::size_t ex = find_kw(tail.text, "expect");
    auto dt = tokens(tail.sub(0, ex));
    if (dt.size() != 1) tail.fail("expected one degree");
    t.degree = static_cast<int>(to_int(dt[0]));
    if (t.degree < 0) dt[0].fail("degree must be >= 0");
    if (ex != std::string_view::npos) {
      Span e = tail.sub(ex + 6).trimmed();
      t.expect = at(e, [&] { return parse_presentation(e.text); });
    }
    return t;
  }
  if (kind == "cocycle") {
    if (!sc.group_name) line.fail("cocycle task before the group declaration");
    CocycleTask t;
    t.quotient = parse_quot(rest, sc.alphabet);
    if (t.quotient.kind != QuotSpec::Kind::FinitePerm) rest.fail("cocycle needs a finite_perm quotient");
    return t;
  }
  if (kind == "suite") {
    auto rt = tokens(rest);
    if (rt.size() != 1) rest.fail("expected 'suite NAME'");
    auto known = bundled_suites();
    if (std::find(known.begin(), known.end(), rt[0].text) == known.end()) rt[0].fail("unknown suite '" + std::string(rt[0].text) + "'");
    return SuiteTask{std::string(rt[0].text)};
  }
  toks[1].fail("unknown task kind '" + std::string(kind) + "'");
}

}  // namespace

QuotSpec parse_quotspec(std::string_view text, const Alphabet& alphabet) { return parse_quot({text, 1, 1}, alphabet); }

FgAbGroup parse_presentation(std::string_view text) {
  std::size_t slash = text.find(" / ");
  if (slash == std::string_view::npos) return parse_group(text);
  Span head{text.substr(0, slash), 1, 1};
  auto ht = tokens(head);
  if (ht.size() != 1 || ht[0].text.substr(0, 2) != "Z^") throw Error("presentation must look like 'Z^n / (row), ...'");
  long n = to_int(ht[0].sub(2));
  if (n < 0) throw Error("negative rank");
  std::vector<SparseVec> rels;
  Span body{text.substr(slash + 3), 1, static_cast<int>(slash) + 4};
  for (const auto& row : split_top(body.trimmed(), ',')) {
    if (row.text.size() < 2 || row.text.front() != '(' || row.text.back() != ')') row.fail("expected '(a b ...)'");
    auto comps = tokens(row.sub(1, row.text.size() - 2));
    if (comps.size() != static_cast<std::size_t>(n)) row.fail("relation of the wrong length");
    std::vector<Integer> dense;
    for (const auto& c : comps) dense.emplace_back(to_int(c));
    rels.push_back(to_sparse(dense));
  }
  return FgAbGroup::from_presentation(AbPresentation::make(static_cast<std::size_t>(n), rels));
}

std::string format_quotspec(const QuotSpec& q, const Alphabet& alphabet) {
  std::ostringstream out;
  auto n = static_cast<std::size_t>(alphabet.rank());
  auto body = [&](auto&& entry) {
    std::vector<std::string> parts;
    for (std::size_t g = 0; g < n; ++g)
      if (auto s = entry(g)) parts.push_back(alphabet.name(static_cast<int>(g)) + " -> " + *s);
    out << "{";
    for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? ", " : " ") << parts[i];
    out << (parts.empty() ? "}" : " }");
  };
  switch (q.kind) {
    case QuotSpec::Kind::Trivial:
      out << "trivial";
      break;
    case QuotSpec::Kind::Meet:
      out << "meet";
      for (const auto& p : q.parts) out << " " << p;
      break;
    case QuotSpec::Kind::Free: {
      Alphabet t = target_alphabet(q.size);
      out << "free rank " << q.size << " ";
      body([&](std::size_t g) -> std::optional<std::string> {
        if (q.free_images[g].empty()) return std::nullopt;
        return t.format(q.free_images[g]);
      });
      break;
    }
    case QuotSpec::Kind::FreeAbelian:
      out << "free_abelian rank " << q.size << " ";
      body([&](std::size_t g) -> std::optional<std::string> {
        const auto& v = q.abelian_images[g];
        if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) return std::nullopt;
        std::string s = "(";
        for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
        return s + ")";
      });
      break;
    case QuotSpec::Kind::FinitePerm:
      out << "finite_perm degree " << q.size << " ";
      body([&](std::size_t g) -> std::optional<std::string> {
        std::string c = format_cycles(q.perms[g]);
        if (c == "()") return std::nullopt;
        return c;
      });
      break;
  }
  return out.str();
}

GroupContext build_context(const Scenario& s) {
  GroupContext ctx{s.alphabet, {}};
  for (const auto& d : s.subgroups) {
    std::vector<Word> gens;
    for (const auto& w : d.closure) gens.push_back(w.value());
    ctx.subgroups[d.name] = {d.name, gens, make_oracle(d.quotient, s.alphabet.rank(), ctx.subgroups)};
  }
  return ctx;
}

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  GroupContext ctx;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Span line = Span{raw, line_no, 1}.trimmed();
    if (line.empty()) continue;
    auto toks = tokens(line);
    std::string_view head = toks[0].text;

    if (head == "group") {
      if (sc.group_name) line.fail("group declared twice");
      if (toks.size() < 4 || toks[2].text != "rank") line.fail("expected 'group NAME rank N [names ...]'");
      long rank = to_int(toks[3]);
      if (rank < 1) toks[3].fail("rank must be positive");
      std::vector<std::string> names;
      if (toks.size() > 4) {
        if (toks[4].text != "names") toks[4].fail("expected 'names'");
        for (std::size_t i = 5; i < toks.size(); ++i) {
          if (!is_ident(toks[i].text)) toks[i].fail("bad generator name");
          names.emplace_back(toks[i].text);
        }
        if (names.size() != static_cast<std::size_t>(rank)) line.fail("need exactly " + std::to_string(rank) + " names");
        if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) line.fail("repeated generator name");
        sc.alphabet = Alphabet(names);
      } else {
        sc.alphabet = Alphabet::standard(static_cast<int>(rank));
      }
      sc.group_name = std::string(toks[1].text);
      ctx.alphabet = sc.alphabet;
    } else if (head == "subgroup") {
      if (!sc.group_name) line.fail("subgroup before the group declaration");
      if (toks.size() < 3 || toks[2].text != "closure") line.fail("expected 'subgroup NAME closure WORDS quotient SPEC'");
      std::string name(toks[1].text);
      if (!is_ident(name) || name == "f" || name.rfind("gamma", 0) == 0) toks[1].fail("bad subgroup name '" + name + "'");
      if (ctx.subgroups.count(name)) toks[1].fail("subgroup '" + name + "' declared twice");
      Span rest = line.sub(static_cast<std::size_t>(toks[2].col - line.col) + 7);
      std::size_t qk = find_kw(rest.text, "quotient");
      if (qk == std::string_view::npos) rest.fail("missing 'quotient'");
      SubgroupDecl d;
      d.name = name;
      for (const auto& w : split_top(rest.sub(0, qk).trimmed(), ',')) {
        if (w.empty()) w.fail("empty closure word");
        d.closure.push_back(at(w, [&] { return parse_word_expr(w.text, sc.alphabet); }));
      }
      Span qs = rest.sub(qk + 8).trimmed();
      d.quotient = parse_quot(qs, sc.alphabet);
      for (const auto& p : d.quotient.parts)
        if (!ctx.subgroups.count(p)) qs.fail("meet of undeclared subgroup '" + p + "'");
      std::vector<Word> gens;
      for (const auto& w : d.closure) gens.push_back(w.value());
      SubgroupHandle h{name, gens, make_oracle(d.quotient, sc.alphabet.rank(), ctx.subgroups)};
      if (auto bad = find_oracle_violation(h, sc.alphabet.rank(), 1))
        line.fail("closure word " + sc.alphabet.format(*bad) + " is not in the kernel of the quotient");
      ctx.subgroups[name] = h;
      sc.subgroups.push_back(std::move(d));
    } else if (head == "declare") {
      if (toks.size() != 4 || toks[2].text != "subset") line.fail("expected 'declare A subset B'");
      std::string a(toks[1].text), b(toks[3].text);
      if (!ctx.subgroups.count(a)) toks[1].fail("unknown subgroup '" + a + "'");
      if (!ctx.subgroups.count(b)) toks[3].fail("unknown subgroup '" + b + "'");
      const auto& ha = ctx.subgroups.at(a);
      const auto& hb = ctx.subgroups.at(b);
      for (const Word& g : ha.normal_generators)
        for (const Word& u : free_ball(sc.alphabet.rank(), 1))
          if (!hb.contains(conjugate(g, u)))
            line.fail("declared inclusion fails: " + sc.alphabet.format(conjugate(g, u)) + " is in " + a + " but not in " + b);
      sc.inclusions.push_back({a, b});
    } else if (head == "task") {
      sc.tasks.push_back(parse_task(line, sc, ctx));
      sc.task_lines.push_back(line_no);
    } else {
      toks[0].fail("unknown statement '" + std::string(head) + "'");
    }
  }
  return sc;
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream out;
  const Alphabet& a = s.alphabet;
  if (s.group_name) {
    out << "group " << *s.group_name << " rank " << a.rank() << " names";
    for (const auto& n : a.names()) out << " " << n;
    out << "\n";
  }
  for (const auto& d : s.subgroups) {
    out << "subgroup " << d.name << " closure ";
    for (std::size_t i = 0; i < d.closure.size(); ++i) out << (i ? ", " : "") << d.closure[i].format(a);
    out << " quotient " << format_quotspec(d.quotient, a) << "\n";
  }
  for (const auto& inc : s.inclusions) out << "declare " << inc.sub << " subset " << inc.super << "\n";
  for (const auto& task : s.tasks) {
    out << "task ";
    std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, MemberTask>) {
            out << "member " << t.word.format(a) << " in " << t.ideal.format();
            if (t.degree) out << " degree " << *t.degree;
            if (t.radius) out << " radius " << *t.radius;
            if (t.expect) out << " expect " << to_string(*t.expect);
          } else if constexpr (std::is_same_v<T, IdentityTask>) {
            out << "identity " << t.a.format() << " meet " << t.b.format() << " equals " << t.rhs.format() << " degree "
                << t.degree;
            if (t.expect_equal) out << " expect " << (*t.expect_equal ? "equal" : "unequal");
          } else if constexpr (std::is_same_v<T, FunctorTask>) {
            out << "functor " << to_string(t.kind) << " " << t.group.format();
            if (t.expect) out << " expect " << t.expect->format();
          } else if constexpr (std::is_same_v<T, HomologyTask>) {
            out << "homology " << t.group.format() << " degree " << t.degree;
            if (t.expect) out << " expect " << t.expect->format();
          } else if constexpr (std::is_same_v<T, CocycleTask>) {
            out << "cocycle " << format_quotspec(t.quotient, a);
          } else {
            out << "suite " << t.name;
          }
        },
        task);
    out << "\n";
  }
  return out.str();
}

}  // namespace workbench
