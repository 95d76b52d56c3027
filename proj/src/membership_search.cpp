#include <algorithm>
#include <set>

#include "membership_detail.hpp"

namespace dimsub::detail {

// ---------------------------------------------------------------------------
// Containment between atoms and summands

bool atom_included(const IdealAtom& a, const IdealAtom& b, const GroupContext& ctx) {
  using K = IdealAtom::Kind;
  if (b.kind == K::Whole) return true;
  if (a.kind == K::Whole) return false;
  if (a == b) return true;
  bool same = a.name == b.name;
  switch (b.kind) {
    case K::Subgroup:
      if (a.kind != K::Subgroup) return same || atom_included(IdealAtom::subgroup(a.name), b, ctx);
      return subgroup_included(ctx.subgroup(a.name), ctx.subgroup(b.name));
    case K::Derived:
    case K::Gamma:
      return same && a.kind != K::Subgroup && a.weight >= b.weight;
    default: return false;
  }
}

bool monomial_included(const IdealMonomial& a, const IdealMonomial& b, const GroupContext& ctx) {
  // a_1 ... a_p <= b_1 ... b_q when p >= q and the first q - 1 atoms (or the last q - 1) are
  // included pairwise, the remaining block of a landing in the last (first) atom of b.
  std::size_t p = a.size(), q = b.size();
  if (p < q) return false;
  bool prefix = true, suffix = true;
  for (std::size_t i = 0; i < q && prefix; ++i) prefix = atom_included(a[i], b[i], ctx);
  for (std::size_t i = 0; i < q && suffix; ++i) suffix = atom_included(a[p - 1 - i], b[q - 1 - i], ctx);
  return prefix || suffix;
}

std::vector<std::size_t> essential_summands(const std::vector<IdealMonomial>& monos, const GroupContext& ctx) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < monos.size() && !redundant; ++j) {
      if (i == j || !monomial_included(monos[i], monos[j], ctx)) continue;
      // equal summands: keep the first
      redundant = !(monomial_included(monos[j], monos[i], ctx) && i < j);
    }
    if (!redundant) keep.push_back(i);
  }
  return keep;
}

namespace {

bool all_divisible(const IdealMonomial& m, const GroupContext& ctx) {
  return std::all_of(m.begin(), m.end(), [&](const IdealAtom& a) { return atom_divisible(a, ctx); });
}

}  // namespace

SearchOutcome divide_search(const RingElement& v, const std::vector<IdealMonomial>& monos,
                            const std::vector<std::size_t>& active, DividerCache& dc, const DecideConfig& cfg) {
  SearchOutcome out;
  for (std::size_t j : active) {
    if (!all_divisible(monos[j], dc.context())) continue;
    try {
      auto coords = coordinates(v, monos[j], dc, cfg.term_cap);
      if (coords) {
        out.certificate = certificate_from_coordinates(*coords, j, monos[j].size());
        return out;
      }
    } catch (const CapExceeded& e) {
      out.note += std::string(out.note.empty() ? "" : "; ") + "division: " + e.what();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Envelope search for sums

namespace {

using Key = std::vector<Word>;
using Vec = std::map<Key, Integer>;

// Normal form of c modulo the product ideal T, appended under `prefix`.
void normal_form(const RingElement& c, const IdealMonomial& tail, std::size_t level, DividerCache& dc, const Key& prefix,
                 Vec& out, std::size_t cap) {
  if (level == tail.size() || c.is_zero()) return;
  const auto& div = dc.get(tail[level]);
  RingElement lift;
  for (const auto& [w, coef] : c.terms()) {
    const Word& r = div.rep(w);
    Key k = prefix;
    k.push_back(r);
    out[k] += coef;
    lift.add_term(r, coef);
  }
  if (level + 1 == tail.size()) return;
  auto parts = div.divide(c - lift, cap);
  if (!parts) throw Error("normal form: remainder left the augmentation ideal");
  for (const auto& [y, cy] : *parts) {
    Key k = prefix;
    k.push_back(y);
    normal_form(cy, tail, level + 1, dc, k, out, cap);
  }
}

Vec project(const Coordinates& coords, const IdealMonomial& tail, DividerCache& dc, std::size_t cap) {
  Vec out;
  for (const auto& [kappa, c] : coords) normal_form(c, tail, 0, dc, kappa, out, cap);
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0) it = out.erase(it);
    else ++it;
  }
  return out;
}

// Free-basis elements of an oracle atom reachable from transversal words of length <= depth.
std::vector<Word> basis_window(const IdealAtom& a, DividerCache& dc, int depth, std::size_t cap) {
  int rank = dc.context().rank();
  if (a.kind == IdealAtom::Kind::Whole) {
    std::vector<Word> gens;
    for (int i = 0; i < rank; ++i) gens.push_back(Word::generator(i));
    return gens;
  }
  const auto& div = dc.get(a);
  std::set<Word> reps{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int d = 0; d < depth && !frontier.empty() && reps.size() < 4 * cap; ++d) {
    std::vector<Word> next;
    for (const auto& t : frontier)
      for (int i = 0; i < rank; ++i)
        for (int s : {1, -1}) {
          Word r = div.rep(t * Word::generator(i).pow(s));
          if (reps.insert(r).second) next.push_back(r);
        }
    frontier = std::move(next);
  }
  std::set<Word> out;
  for (const auto& t : reps)
    for (int i = 0; i < rank; ++i) {
      Word tx = t * Word::generator(i);
      Word y = tx * div.rep(tx).inverse();
      if (!y.empty()) out.insert(y);
    }
  std::vector<Word> v(out.begin(), out.end());
  if (v.size() > cap) v.resize(cap);
  return v;
}

std::vector<WordExpr> atom_window(const IdealAtom& a, DividerCache& dc, const DecideConfig& cfg) {
  std::vector<WordExpr> out;
  int depth = std::max(1, cfg.radius / 2);
  switch (a.kind) {
    case IdealAtom::Kind::Whole:
    case IdealAtom::Kind::Subgroup:
      for (const auto& y : basis_window(a, dc, depth, 48)) out.push_back(WordExpr::leaf(y));
      break;
    case IdealAtom::Kind::Derived:
    case IdealAtom::Kind::Gamma: {
      auto base = basis_window(IdealAtom::subgroup(a.name), dc, std::max(1, depth - 1), 12);
      std::vector<WordExpr> level;
      for (const auto& y : base) level.push_back(WordExpr::leaf(y));
      std::vector<WordExpr> cur = level;
      for (int k = 2; k <= a.weight; ++k) {
        std::vector<WordExpr> next;
        std::set<Word> seen;
        for (const auto& c : cur)
          for (const auto& y : level) {
            auto e = WordExpr::commutator(c, y);
            if (!e.value().empty() && seen.insert(e.value()).second) next.push_back(e);
          }
        cur = std::move(next);
        if (cur.size() > 64) cur.resize(64);
      }
      out = std::move(cur);
      break;
    }
  }
  return out;
}

struct Spanning {
  std::vector<WordExpr> factors;
  Word h;
  std::size_t summand;
  RingElement value;
  Vec image;
};

std::size_t find_core(const IdealMonomial& m, const IdealMonomial& core) {
  if (m.size() < core.size()) return m.size();
  for (std::size_t p = 0; p + core.size() <= m.size(); ++p)
    if (std::equal(core.begin(), core.end(), m.begin() + static_cast<std::ptrdiff_t>(p))) return p;
  return m.size();
}

// Cartesian product of slots (each choice a run of factors), capped.
void enumerate(const std::vector<std::vector<std::vector<WordExpr>>>& slots, std::size_t cap,
               std::vector<std::vector<WordExpr>>& out) {
  for (const auto& s : slots)
    if (s.empty()) return;
  std::vector<std::size_t> idx(slots.size(), 0);
  while (out.size() < cap) {
    std::vector<WordExpr> pick;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& c = slots[i][idx[i]];
      pick.insert(pick.end(), c.begin(), c.end());
    }
    out.push_back(std::move(pick));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == slots[i].size()) idx[i++] = 0;
    if (i == idx.size()) return;
  }
}

std::optional<Certificate> envelope_for_core(const RingElement& v, const std::vector<IdealMonomial>& monos,
                                             const std::vector<std::size_t>& active, const IdealMonomial& core,
                                             DividerCache& dc, const DecideConfig& cfg, std::string& note) {
  const auto& ctx = dc.context();
  // base summand: core followed by the largest tail containing the other core-prefixed tails
  std::size_t base = monos.size();
  std::size_t best_cover = 0;
  for (std::size_t j : active) {
    if (find_core(monos[j], core) != 0 || monos[j].size() == core.size()) continue;
    IdealMonomial tail(monos[j].begin() + static_cast<std::ptrdiff_t>(core.size()), monos[j].end());
    if (!all_divisible(tail, ctx)) continue;
    std::size_t cover = 0;
    for (std::size_t i : active)
      if (find_core(monos[i], core) == 0 && monos[i].size() > core.size()) {
        IdealMonomial ti(monos[i].begin() + static_cast<std::ptrdiff_t>(core.size()), monos[i].end());
        if (monomial_included(ti, tail, ctx)) ++cover;
      }
    if (base == monos.size() || cover > best_cover) {
      base = j;
      best_cover = cover;
    }
  }
  if (base == monos.size()) return std::nullopt;
  IdealMonomial tail(monos[base].begin() + static_cast<std::ptrdiff_t>(core.size()), monos[base].end());

  auto phi = coordinates(v, core, dc, cfg.term_cap);
  if (!phi) return std::nullopt;
  Vec target = project(*phi, tail, dc, cfg.term_cap);

  std::vector<std::size_t> others;
  for (std::size_t j : active) {
    if (j == base) continue;
    if (find_core(monos[j], core) == 0 && monos[j].size() > core.size()) {
      IdealMonomial tj(monos[j].begin() + static_cast<std::ptrdiff_t>(core.size()), monos[j].end());
      if (monomial_included(tj, tail, ctx)) continue;
    }
    others.push_back(j);
  }

  std::vector<Spanning> span;
  if (!target.empty()) {
    std::set<Key> kappas, used;
    for (const auto& [k, c] : *phi) kappas.insert(k);
    std::set<std::pair<std::vector<Word>, Word>> seen;
    const std::size_t kMaxSpanning = 6000;
    int rounds = std::max(1, std::min(3, cfg.radius / 2));
    for (int round = 0; round < rounds && span.size() < kMaxSpanning; ++round) {
      std::vector<Key> fresh;
      for (const auto& k : kappas)
        if (!used.count(k)) fresh.push_back(k);
      if (fresh.empty()) break;
      used.insert(fresh.begin(), fresh.end());
      for (std::size_t j : others) {
        const auto& m = monos[j];
        std::size_t p = find_core(m, core);
        // one slot per atom, the core block being a single slot whose choices are kappas
        std::vector<std::vector<std::vector<WordExpr>>> slots;
        for (std::size_t i = 0; i < m.size(); ++i) {
          if (p < m.size() && i >= p && i < p + core.size()) {
            if (i != p) continue;
            std::vector<std::vector<WordExpr>> choices;
            for (const auto& k : fresh) {
              std::vector<WordExpr> c;
              for (const auto& y : k) c.push_back(WordExpr::leaf(y));
              choices.push_back(std::move(c));
            }
            slots.push_back(std::move(choices));
            continue;
          }
          std::vector<std::vector<WordExpr>> choices;
          for (auto& f : atom_window(m[i], dc, cfg)) choices.push_back({std::move(f)});
          slots.push_back(std::move(choices));
        }
        std::vector<std::vector<WordExpr>> picks;
        if (p < m.size() || round == 0) enumerate(slots, kMaxSpanning, picks);
        for (auto& pick : picks) {
          RingElement x = RingElement::scalar(1);
          for (const auto& f : pick) x = RingElement::multiply(x, delta_element(f.value()), cfg.term_cap);
          if (x.is_zero()) continue;
          // right translates: enough to line the tail cosets up with those of the target
          std::vector<Word> hs{Word{}};
          auto px = coordinates(x, core, dc, cfg.term_cap);
          if (!px) continue;
          if (tail.size() == 1 && tail[0].kind != IdealAtom::Kind::Whole) {
            Vec ix = project(*px, tail, dc, cfg.term_cap);
            std::set<Word> hset;
            for (const auto& [kx, cx] : ix)
              for (const auto& [kv, cv] : target)
                if (hset.size() < 16) hset.insert(kx.back().inverse() * kv.back());
            hs.assign(hset.begin(), hset.end());
            if (hs.empty()) hs.push_back(Word{});
          }
          std::vector<Word> fwords;
          for (const auto& f : pick) fwords.push_back(f.value());
          for (const auto& h : hs) {
            if (!seen.insert({fwords, h}).second) continue;
            RingElement value = x.right_mul(h);
            auto ph = coordinates(value, core, dc, cfg.term_cap);
            if (!ph) continue;
            Vec img = project(*ph, tail, dc, cfg.term_cap);
            if (img.empty()) continue;
            for (const auto& [k, c] : *ph) kappas.insert(k);
            span.push_back({pick, h, j, std::move(value), std::move(img)});
            if (span.size() >= kMaxSpanning) break;
          }
          if (span.size() >= kMaxSpanning) break;
        }
      }
      // stop early once the target is reachable
      if (!span.empty()) break;
    }
  }

  std::vector<Integer> lambda(span.size());
  if (!target.empty()) {
    std::map<Key, int> index;
    for (const auto& [k, c] : target) index.emplace(k, 0);
    for (const auto& s : span)
      for (const auto& [k, c] : s.image) index.emplace(k, 0);
    int n = 0;
    for (auto& [k, i] : index) i = n++;
    LatticeBuilder lb(static_cast<std::size_t>(n) + span.size());
    for (std::size_t i = 0; i < span.size(); ++i) {
      SparseVec row;
      for (const auto& [k, c] : span[i].image) row.emplace_back(index[k], c);
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      row.emplace_back(n + static_cast<int>(i), 1);
      lb.insert(std::move(row));
    }
    SparseVec t;
    for (const auto& [k, c] : target) t.emplace_back(index[k], c);
    std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec rem = lb.reduce(std::move(t));
    for (const auto& [i, c] : rem) {
      if (i < n) {
        note = "envelope " + std::to_string(core.size()) + "-atom core: target outside the span of " +
               std::to_string(span.size()) + " spanning elements";
        return std::nullopt;
      }
      lambda[static_cast<std::size_t>(i - n)] = -c;
    }
  }

  Certificate cert;
  RingElement residual = v;
  for (std::size_t i = 0; i < span.size(); ++i) {
    if (lambda[i] == 0) continue;
    const auto& s = span[i];
    CertificateTerm t;
    t.coeff = lambda[i];
    t.summand = s.summand;
    t.words.assign(s.factors.size() + 1, Word{});
    t.words.back() = s.h;
    t.factors = s.factors;
    for (std::size_t a = 0; a < monos[s.summand].size(); ++a) t.witness.push_back(a);
    residual -= s.value * lambda[i];
    cert.terms.push_back(std::move(t));
  }
  auto rest = coordinates(residual, monos[base], dc, cfg.term_cap);
  if (!rest) {
    note = "envelope: residual not in the base summand";
    return std::nullopt;
  }
  auto tail_cert = certificate_from_coordinates(*rest, base, monos[base].size());
  cert.terms.insert(cert.terms.end(), tail_cert.terms.begin(), tail_cert.terms.end());
  return cert;
}

}  // namespace

SearchOutcome envelope_search(const RingElement& v, const std::vector<IdealMonomial>& monos,
                              const std::vector<std::size_t>& active, DividerCache& dc, const DecideConfig& cfg) {
  SearchOutcome out;
  if (active.size() < 2) return out;
  const auto& ctx = dc.context();
  std::vector<IdealMonomial> cores;
  for (std::size_t j : active) {
    const auto& m = monos[j];
    for (std::size_t len = m.size() - 1; len >= 1; --len) {
      IdealMonomial c(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(len));
      if (all_divisible(c, ctx) && std::find(cores.begin(), cores.end(), c) == cores.end()) cores.push_back(c);
    }
  }
  std::stable_sort(cores.begin(), cores.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (const auto& core : cores) {
    try {
      std::string note;
      auto cert = envelope_for_core(v, monos, active, core, dc, cfg, note);
      if (cert) {
        out.certificate = std::move(cert);
        return out;
      }
      if (!note.empty()) out.note += std::string(out.note.empty() ? "" : "; ") + note;
    } catch (const CapExceeded& e) {
      out.note += std::string(out.note.empty() ? "" : "; ") + "envelope: " + e.what();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structural expansion of w - 1

namespace {

struct Term {
  Integer coeff;
  std::vector<Word> words;
  std::vector<WordExpr> factors;
};

bool expandable(const WordExpr& f) {
  switch (f.kind()) {
    case WordExpr::Kind::Product:
    case WordExpr::Kind::Power:
    case WordExpr::Kind::Commutator: return true;
    default: return false;
  }
}

// Replaces factor `pos` by the pieces of its exact expansion.
std::vector<Term> expand_factor(const Term& t, std::size_t pos) {
  const WordExpr& f = t.factors[pos];
  const auto& ch = f.children();
  std::vector<Term> out;
  auto with = [&](const Integer& c, const Word& left, std::vector<WordExpr> fs, std::vector<Word> inner,
                  const Word& right) {
    // t.words[pos] * left * (fs[0]-1) inner[0] (fs[1]-1) ... * right * t.words[pos+1]
    Term n;
    n.coeff = t.coeff * c;
    n.words.assign(t.words.begin(), t.words.begin() + static_cast<std::ptrdiff_t>(pos));
    n.factors.assign(t.factors.begin(), t.factors.begin() + static_cast<std::ptrdiff_t>(pos));
    n.words.push_back(t.words[pos] * left);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      n.factors.push_back(fs[i]);
      if (i + 1 < fs.size()) n.words.push_back(inner[i]);
    }
    n.words.push_back(right * t.words[pos + 1]);
    for (std::size_t i = pos + 1; i < t.factors.size(); ++i) {
      n.factors.push_back(t.factors[i]);
      n.words.push_back(t.words[i + 1]);
    }
    out.push_back(std::move(n));
  };
  switch (f.kind()) {
    case WordExpr::Kind::Product:
      // ab - 1 = (a - 1) b + (b - 1)
      with(1, Word{}, {ch[0]}, {}, ch[1].value());
      with(1, Word{}, {ch[1]}, {}, Word{});
      break;
    case WordExpr::Kind::Power: {
      long n = f.exponent();
      const Word& a = ch[0].value();
      if (n > 0) {
        for (long i = 0; i < n; ++i) with(1, Word{}, {ch[0]}, {}, a.pow(i));
      } else {
        for (long i = 0; i < -n; ++i) with(-1, Word{}, {ch[0]}, {}, a.pow(i + n));
      }
      break;
    }
    case WordExpr::Kind::Commutator: {
      // [a,b] - 1 = a^-1 b^-1 ((a - 1)(b - 1) - (b - 1)(a - 1))
      Word pre = ch[0].value().inverse() * ch[1].value().inverse();
      with(1, pre, {ch[0], ch[1]}, {Word{}}, Word{});
      with(-1, pre, {ch[1], ch[0]}, {Word{}}, Word{});
      break;
    }
    default: out.push_back(t);
  }
  return out;
}

struct Matcher {
  const std::vector<IdealMonomial>& monos;
  const std::vector<std::size_t>& active;
  const GroupContext& ctx;
  std::map<std::pair<Word, IdealAtom>, bool> leaf_cache;

  bool in_atom(const WordExpr& f, const IdealAtom& a) {
    if (a.kind == IdealAtom::Kind::Subgroup || a.kind == IdealAtom::Kind::Whole) {
      auto key = std::make_pair(f.value(), a);
      auto it = leaf_cache.find(key);
      if (it != leaf_cache.end()) return it->second;
      bool r = factor_in_atom(f, a, ctx);
      leaf_cache.emplace(key, r);
      return r;
    }
    return factor_in_atom(f, a, ctx);
  }

  // Greedy leftmost witness for some summand.
  std::optional<std::pair<std::size_t, std::vector<std::size_t>>> match(const Term& t) {
    for (std::size_t j : active) {
      const auto& m = monos[j];
      std::vector<std::size_t> wit;
      std::size_t pos = 0;
      for (const auto& a : m) {
        while (pos < t.factors.size() && !in_atom(t.factors[pos], a)) ++pos;
        if (pos == t.factors.size()) break;
        wit.push_back(pos++);
      }
      if (wit.size() == m.size()) return std::make_pair(j, wit);
    }
    return std::nullopt;
  }

  bool useful(const WordExpr& f) {
    for (std::size_t j : active)
      for (const auto& a : monos[j])
        if (a.kind != IdealAtom::Kind::Whole && in_atom(f, a)) return true;
    return false;
  }
};

}  // namespace

SearchOutcome structural_search(const WordExpr& w, const std::vector<IdealMonomial>& monos,
                                const std::vector<std::size_t>& active, DividerCache& dc, const DecideConfig& cfg) {
  SearchOutcome out;
  if (w.value().empty()) {
    out.certificate = Certificate{};
    return out;
  }
  Matcher matcher{monos, active, dc.context(), {}};
  Certificate cert;
  std::vector<Term> residual;
  std::vector<std::pair<Term, int>> stack{{Term{1, {Word{}, Word{}}, {w}}, 0}};
  int max_depth = 2 * cfg.radius + 2;
  std::size_t processed = 0;
  while (!stack.empty()) {
    auto [t, depth] = std::move(stack.back());
    stack.pop_back();
    if (++processed > cfg.term_cap / 8) {
      out.note = "structural: term budget exceeded";
      return out;
    }
    if (auto m = matcher.match(t)) {
      CertificateTerm ct{t.coeff, t.words, t.factors, m->first, m->second};
      cert.terms.push_back(std::move(ct));
      continue;
    }
    std::size_t pick = t.factors.size();
    for (std::size_t i = 0; i < t.factors.size() && pick == t.factors.size(); ++i)
      if (expandable(t.factors[i]) && !matcher.useful(t.factors[i])) pick = i;
    for (std::size_t i = 0; i < t.factors.size() && pick == t.factors.size(); ++i)
      if (expandable(t.factors[i])) pick = i;
    if (depth >= max_depth || pick == t.factors.size()) {
      residual.push_back(std::move(t));
      continue;
    }
    for (auto& n : expand_factor(t, pick)) {
      bool trivial = std::any_of(n.factors.begin(), n.factors.end(), [](const WordExpr& f) { return f.value().empty(); });
      if (!trivial) stack.emplace_back(std::move(n), depth + 1);
    }
  }
  if (residual.empty()) {
    out.certificate = std::move(cert);
    return out;
  }
  // leftover terms: settle their sum exactly when some summand admits division
  RingElement rest;
  for (const auto& t : residual) {
    CertificateTerm ct{t.coeff, t.words, t.factors, 0, {}};
    rest += ct.value(cfg.term_cap);
  }
  if (rest.is_zero()) {
    out.certificate = std::move(cert);
    return out;
  }
  auto tail = divide_search(rest, monos, active, dc, cfg);
  if (!tail.certificate) tail = envelope_search(rest, monos, active, dc, cfg);
  if (tail.certificate) {
    cert.terms.insert(cert.terms.end(), tail.certificate->terms.begin(), tail.certificate->terms.end());
    out.certificate = std::move(cert);
    return out;
  }
  out.note = "structural: " + std::to_string(residual.size()) + " unmatched terms";
  if (!tail.note.empty()) out.note += "; " + tail.note;
  return out;
}

}  // namespace dimsub::detail
