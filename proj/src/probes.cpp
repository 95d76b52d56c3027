#include <algorithm>
#include <set>

#include "dimsub/membership.hpp"

namespace dimsub {

bool subgroup_included(const SubgroupHandle& a, const SubgroupHandle& b) {
  if (a.name == b.name) return true;
  if (!b.oracle) return false;
  return std::all_of(a.normal_generators.begin(), a.normal_generators.end(),
                     [&](const Word& g) { return b.contains(g); });
}

std::vector<ProbeRow> probe_subgroup(const std::vector<WordExpr>& words, const IdealExpr& e, const GroupContext& ctx,
                                     const DecideConfig& cfg) {
  std::vector<ProbeRow> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back({w, decide_word(w, e, ctx, cfg)});
  return out;
}

// ---------------------------------------------------------------------------
// identity_report

namespace {

// A few generators of an atom, enough to span sample products.
std::vector<Word> atom_samples(const IdealAtom& a, const GroupContext& ctx, std::size_t limit) {
  std::vector<Word> ws;
  switch (a.kind) {
    case IdealAtom::Kind::Whole:
      for (int i = 0; i < ctx.rank(); ++i) ws.push_back(Word::generator(i));
      break;
    case IdealAtom::Kind::Subgroup:
      ws = ctx.subgroup(a.name).normal_generators;
      break;
    case IdealAtom::Kind::Derived:
    case IdealAtom::Kind::Gamma:
      ws = gamma_generators(ctx.subgroup(a.name), ctx.rank(), a.weight, 0);
      break;
  }
  std::erase_if(ws, [](const Word& w) { return w.empty(); });
  if (ws.size() > limit) ws.resize(limit);
  return ws;
}

std::string format_product(const std::vector<Word>& ws, const Alphabet& al) {
  std::string s;
  for (const auto& w : ws) s += "(" + al.format(w) + "-1)";
  return s;
}

std::vector<SparseVec> outside(const IntLattice& a, const IntLattice& b) {
  std::vector<SparseVec> out;
  for (const auto& row : a.basis())
    if (!b.contains(row)) out.push_back(row);
  return out;
}

}  // namespace

IdentityReport identity_report(const IdealExpr& a, const IdealExpr& b, const IdealExpr& rhs, int degree,
                               const GroupContext& ctx, const std::vector<Inclusion>& hypotheses,
                               const DecideConfig& cfg) {
  for (const auto& h : hypotheses) {
    if (!subgroup_included(ctx.subgroup(h.sub), ctx.subgroup(h.super)))
      throw Error("hypothesis violated: " + h.sub + " is not contained in " + h.super);
  }
  ctx.check_resolves(a);
  ctx.check_resolves(b);
  ctx.check_resolves(rhs);

  IdentityReport rep;
  rep.degree = degree;
  constexpr std::size_t kPerAtom = 2, kPerSummand = 8;
  for (const auto& mono : rhs.monomials()) {
    std::vector<std::vector<Word>> choices;
    for (const auto& atom : mono) choices.push_back(atom_samples(atom, ctx, kPerAtom));
    if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); })) continue;
    std::vector<std::size_t> idx(mono.size(), 0);
    for (std::size_t n = 0; n < kPerSummand; ++n) {
      std::vector<Word> pick;
      RingElement prod = RingElement::scalar(1);
      for (std::size_t i = 0; i < mono.size(); ++i) {
        pick.push_back(choices[i][idx[i]]);
        prod = RingElement::multiply(prod, delta_element(pick.back()), cfg.term_cap);
      }
      std::string label = format_product(pick, ctx.alphabet);
      for (const auto& [side, expr] : {std::pair{"lhs1", &a}, std::pair{"lhs2", &b}}) {
        Verdict v = decide(prod, *expr, ctx, cfg);
        if (!v.member()) rep.certificates_verified = false;
        rep.rhs_in_lhs.push_back({label, side, std::move(v)});
      }
      // odometer over the choice lists
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }

  ShadowConfig sc{cfg.dimension_cap, 1};
  IntLattice m = meet(ideal_shadow(a, ctx, degree, sc), ideal_shadow(b, ctx, degree, sc));
  IntLattice r = ideal_shadow(rhs, ctx, degree, sc);
  rep.meet_rank = m.rank();
  rep.rhs_rank = r.rank();
  rep.shadow_equal = (m == r);
  rep.meet_not_in_rhs = outside(m, r);
  rep.rhs_not_in_meet = outside(r, m);
  return rep;
}

// ---------------------------------------------------------------------------
// I(R,S,T)

namespace {

struct GenBuilder {
  const GroupContext& ctx;
  int conj_radius;
  std::size_t cap;

  const SubgroupHandle& handle(const std::string& name) const { return ctx.subgroup(name); }

  // normal generators conjugated over the free ball
  std::vector<WordExpr> leaves(const SubgroupHandle& h) const {
    std::vector<WordExpr> out;
    std::set<Word> seen;
    auto conj = free_ball(ctx.rank(), conj_radius);
    for (const auto& g : h.normal_generators)
      for (const auto& c : conj) {
        WordExpr e = c.empty() ? WordExpr::leaf(g) : WordExpr::conjugate(WordExpr::leaf(g), WordExpr::leaf(c));
        if (!e.value().empty() && seen.insert(e.value()).second) out.push_back(e);
        if (out.size() > cap) throw CapExceeded("i_subgroup_generators: more than " + std::to_string(cap) + " leaves");
      }
    return out;
  }

  std::vector<WordExpr> brackets(const std::vector<WordExpr>& a, const std::vector<WordExpr>& b, bool symmetric) const {
    std::vector<WordExpr> out;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = symmetric ? i + 1 : 0; j < b.size(); ++j) {
        out.push_back(WordExpr::commutator(a[i], b[j]));
        if (out.size() > cap) throw CapExceeded("i_subgroup_generators: more than " + std::to_string(cap) + " words");
      }
    return out;
  }
  std::vector<WordExpr> derived(const std::vector<WordExpr>& a) const { return brackets(a, a, true); }

  // the intersection X cap Y: declared, or the smaller one when they are nested
  const SubgroupHandle& meet(const std::string& declared, const std::string& x, const std::string& y,
                             const char* what) const {
    if (!declared.empty()) return handle(declared);
    const auto& hx = handle(x);
    const auto& hy = handle(y);
    if (subgroup_included(hx, hy)) return hx;
    if (subgroup_included(hy, hx)) return hy;
    throw Error(std::string("missing declared intersection handle ") + what);
  }
};

}  // namespace

std::vector<WordExpr> i_subgroup_generators(const GroupContext& ctx, const IHandles& h, int conj_radius,
                                            std::size_t cap) {
  GenBuilder g{ctx, conj_radius, cap};
  const auto& rs = g.meet(h.rs, h.r, h.s, "R^S");
  const auto& st = g.meet(h.st, h.s, h.t, "S^T");
  const auto& rt = g.meet(h.rt, h.r, h.t, "R^T");

  // (R^S)' ^ (S^T)'
  std::vector<WordExpr> a;
  if (!h.rsp_stp.empty())
    a = g.leaves(g.handle(h.rsp_stp));
  else if (subgroup_included(rs, st))
    a = g.derived(g.leaves(rs));
  else if (subgroup_included(st, rs))
    a = g.derived(g.leaves(st));
  else
    throw Error("missing declared intersection handle (R^S)'^(S^T)'");

  // R ^ (S^T)'
  std::vector<WordExpr> c;
  if (!h.r_stp.empty())
    c = g.leaves(g.handle(h.r_stp));
  else if (subgroup_included(st, g.handle(h.r)))
    c = g.derived(g.leaves(st));
  else
    throw Error("missing declared intersection handle R^(S^T)'");

  // (R^S)' ^ T
  std::vector<WordExpr> d;
  if (!h.rsp_t.empty())
    d = g.leaves(g.handle(h.rsp_t));
  else if (subgroup_included(rs, g.handle(h.t)))
    d = g.derived(g.leaves(rs));
  else
    throw Error("missing declared intersection handle (R^S)'^T");

  std::vector<WordExpr> all = g.brackets(a, g.leaves(rt), false);
  for (auto& w : g.derived(c)) all.push_back(std::move(w));
  for (auto& w : g.derived(d)) all.push_back(std::move(w));

  std::vector<WordExpr> out;
  std::set<Word> seen;
  for (auto& w : all)
    if (!w.value().empty() && seen.insert(w.value()).second) out.push_back(std::move(w));
  std::sort(out.begin(), out.end(), [](const WordExpr& x, const WordExpr& y) { return x.value() < y.value(); });
  if (out.size() > cap) throw CapExceeded("i_subgroup_generators: more than " + std::to_string(cap) + " words");
  return out;
}

}  // namespace dimsub
