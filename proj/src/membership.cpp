#include "dimsub/membership.hpp"

#include <algorithm>
#include <set>

#include "membership_detail.hpp"

namespace dimsub {

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Member: return "member";
    case Verdict::Kind::NonMember: return "nonmember";
    case Verdict::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

RingElement CertificateTerm::value(std::size_t cap) const {
  RingElement acc = RingElement::term(coeff, words.at(0));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    acc = RingElement::multiply(acc, delta_element(factors[i].value()), cap);
    acc = acc.right_mul(words.at(i + 1));
  }
  return acc;
}

int gamma_level(const WordExpr& proof, const SubgroupHandle& h, int cap) {
  const Word& val = proof.value();
  if (val.empty()) return cap;
  int base = h.contains(val) ? 1 : 0;
  if (base == 0) return 0;  // gamma_k(H) <= H
  int best = base;
  const auto& ch = proof.children();
  switch (proof.kind()) {
    case WordExpr::Kind::Commutator:
      best = std::max(best, std::min(cap, gamma_level(ch[0], h, cap) + gamma_level(ch[1], h, cap)));
      break;
    case WordExpr::Kind::Power:
      best = std::max(best, gamma_level(ch[0], h, cap));
      break;
    case WordExpr::Kind::Product: {
      // b^-1 a b is built as product(product(b^-1, a), b)
      const WordExpr& left = ch[0];
      if (left.kind() == WordExpr::Kind::Product && left.children()[0].value() == ch[1].value().inverse())
        best = std::max(best, gamma_level(left.children()[1], h, cap));
      best = std::max(best, std::min(gamma_level(ch[0], h, cap), gamma_level(ch[1], h, cap)));
      break;
    }
    default: break;
  }
  return best;
}

namespace detail {

bool factor_in_atom(const WordExpr& f, const IdealAtom& a, const GroupContext& ctx) {
  switch (a.kind) {
    case IdealAtom::Kind::Whole: return true;
    case IdealAtom::Kind::Subgroup: {
      const auto& h = ctx.subgroup(a.name);
      return h.oracle && h.contains(f.value());
    }
    case IdealAtom::Kind::Derived:
    case IdealAtom::Kind::Gamma: {
      const auto& h = ctx.subgroup(a.name);
      return h.oracle && gamma_level(f, h, a.weight) >= a.weight;
    }
  }
  return false;
}

}  // namespace detail

bool verify_certificate(const RingElement& v, const IdealExpr& e, const GroupContext& ctx, const Certificate& c,
                        std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  auto monos = e.monomials();
  RingElement sum;
  for (std::size_t t = 0; t < c.terms.size(); ++t) {
    const auto& term = c.terms[t];
    if (term.words.size() != term.factors.size() + 1) return fail("term " + std::to_string(t) + ": malformed");
    if (term.summand >= monos.size()) return fail("term " + std::to_string(t) + ": summand out of range");
    const auto& atoms = monos[term.summand];
    if (term.witness.size() != atoms.size()) return fail("term " + std::to_string(t) + ": witness size");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      std::size_t pos = term.witness[i];
      if (pos >= term.factors.size() || (i > 0 && pos <= term.witness[i - 1]))
        return fail("term " + std::to_string(t) + ": witness positions");
      if (!detail::factor_in_atom(term.factors[pos], atoms[i], ctx))
        return fail("term " + std::to_string(t) + ": factor " + std::to_string(pos) + " not in " + atoms[i].format());
    }
    sum += term.value();
  }
  if (sum != v) return fail("terms do not sum to the element");
  return true;
}

Certificate transport_involution(const Certificate& c, const IdealExpr& e) {
  // inv(g0 (f1-1) g1 ... (fk-1) gk) = gk^-1 (fk^-1 - 1) ... g0^-1 and
  // (f^-1 - 1) = -(f - 1) f^-1, so each factor keeps its word and picks up f^-1 on the right.
  auto monos = e.monomials();
  auto rev = e.reversed().monomials();
  std::vector<std::size_t> map(monos.size());
  for (std::size_t j = 0; j < monos.size(); ++j) {
    IdealMonomial r(monos[j].rbegin(), monos[j].rend());
    map[j] = static_cast<std::size_t>(std::find(rev.begin(), rev.end(), r) - rev.begin());
  }
  Certificate out;
  for (const auto& t : c.terms) {
    CertificateTerm r;
    std::size_t k = t.factors.size();
    r.coeff = (k % 2 == 0) ? t.coeff : Integer(-t.coeff);
    r.summand = map.at(t.summand);
    r.words.push_back(t.words[k].inverse());
    for (std::size_t i = k; i-- > 0;) {
      r.factors.push_back(t.factors[i]);
      r.words.push_back(t.factors[i].value().inverse() * t.words[i].inverse());
    }
    // the atom order reverses with the product
    for (std::size_t i = t.witness.size(); i-- > 0;) r.witness.push_back(k - 1 - t.witness[i]);
    out.terms.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact division by oracle atoms

namespace detail {

AtomDivider::AtomDivider(const IdealAtom& atom, const GroupContext& ctx) {
  if (atom.kind == IdealAtom::Kind::Whole) {
    oracle_ = QuotientOracle::trivial(ctx.rank());
  } else if (atom.kind == IdealAtom::Kind::Subgroup) {
    oracle_ = ctx.subgroup(atom.name).oracle;
  }
  if (!oracle_) throw Error("atom " + atom.format() + " has no quotient oracle to divide by");
}

const Word& AtomDivider::rep(const Word& w) const {
  auto it = reps_.find(w);
  if (it != reps_.end()) return it->second;
  auto r = oracle_->coset_rep(w);
  if (!r) throw CapExceeded("transversal cap exceeded while dividing");
  return reps_.emplace(w, *r).first->second;
}

std::optional<std::map<Word, RingElement>> AtomDivider::divide(const RingElement& v, std::size_t cap) const {
  // membership in the augmentation ideal of the atom: coefficients sum to zero on each coset
  std::map<Word, Integer> per_coset;
  for (const auto& [w, c] : v.terms()) per_coset[rep(w)] += c;
  for (const auto& [r, s] : per_coset)
    if (s != 0) return std::nullopt;

  std::map<Word, RingElement> out;
  std::size_t budget = 0;
  for (const auto& [w, c] : v.terms()) {
    const auto& L = w.letters();
    Word prev;  // rep of the prefix of length i - 1
    for (std::size_t i = 0; i < L.size(); ++i) {
      Letter l = L[i];
      Word gen = Word::reduce(std::span<const Letter>(&l, 1));
      Word cur = rep(prev * gen);
      Word suffix = Word::reduce(std::span<const Letter>(L.data() + i + 1, L.size() - i - 1));
      if (l > 0) {
        Word y = prev * gen * cur.inverse();
        if (!y.empty()) out[y].add_term(cur * suffix, c);
      } else {
        Word y = cur * gen.inverse() * prev.inverse();
        if (!y.empty()) out[y].add_term(prev * gen * suffix, -c);
      }
      prev = std::move(cur);
      if (++budget > cap) throw CapExceeded("division term budget exceeded");
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

bool atom_divisible(const IdealAtom& a, const GroupContext& ctx) {
  if (a.kind == IdealAtom::Kind::Whole) return true;
  if (a.kind != IdealAtom::Kind::Subgroup) return false;
  return static_cast<bool>(ctx.subgroup(a.name).oracle);
}

const AtomDivider& DividerCache::get(const IdealAtom& a) {
  auto it = cache_.find(a);
  if (it == cache_.end()) it = cache_.emplace(a, std::make_unique<AtomDivider>(a, ctx_)).first;
  return *it->second;
}

std::optional<Coordinates> coordinates(const RingElement& v, const std::vector<IdealAtom>& atoms, DividerCache& dc,
                                       std::size_t cap) {
  Coordinates cur;
  cur[{}] = v;
  for (const auto& a : atoms) {
    const auto& div = dc.get(a);
    Coordinates next;
    std::size_t total = 0;
    for (const auto& [key, elem] : cur) {
      auto parts = div.divide(elem, cap);
      if (!parts) return std::nullopt;
      for (auto& [y, c] : *parts) {
        auto k = key;
        k.push_back(y);
        total += c.support_size();
        next.emplace(std::move(k), std::move(c));
      }
      if (total > cap) throw CapExceeded("coordinate term budget exceeded");
    }
    cur = std::move(next);
  }
  return cur;
}

Certificate certificate_from_coordinates(const Coordinates& coords, std::size_t summand, std::size_t natoms) {
  Certificate cert;
  for (const auto& [key, elem] : coords)
    for (const auto& [w, c] : elem.terms()) {
      CertificateTerm t;
      t.coeff = c;
      t.summand = summand;
      t.words.assign(key.size() + 1, Word{});
      t.words.back() = w;
      for (const auto& y : key) t.factors.push_back(WordExpr::leaf(y));
      for (std::size_t i = 0; i < natoms; ++i) t.witness.push_back(i);
      cert.terms.push_back(std::move(t));
    }
  return cert;
}

}  // namespace detail

std::optional<std::map<std::vector<Word>, RingElement>> left_coordinates(const RingElement& v,
                                                                         const std::vector<IdealAtom>& atoms,
                                                                         const GroupContext& ctx,
                                                                         std::size_t term_cap) {
  detail::DividerCache dc(ctx);
  return detail::coordinates(v, atoms, dc, term_cap);
}


// ---------------------------------------------------------------------------
// decide

namespace {

void append_note(std::string& acc, const std::string& note) {
  if (note.empty()) return;
  if (!acc.empty()) acc += "; ";
  acc += note;
}

SparseVec reduce_mod(const IntLattice& l, const SparseVec& v) {
  LatticeBuilder b(l.dim());
  for (const auto& row : l.basis()) b.insert(row);
  return b.reduce(v);
}

// Shadow separation at the least degree that works.
bool separate(const RingElement& v, const IdealExpr& e, const GroupContext& ctx, const DecideConfig& cfg,
              Verdict& out, std::string& notes) {
  ShadowConfig sc{cfg.dimension_cap, 1};
  for (int d = 0; d <= cfg.degree; ++d) {
    if (MonomialBasis::count(ctx.rank(), d) > cfg.dimension_cap) {
      append_note(notes, "shadow: degree " + std::to_string(d) + " exceeds the dimension cap");
      return false;
    }
    IntLattice shadow;
    try {
      shadow = ideal_shadow(e, ctx, d, sc);
    } catch (const CapExceeded& ex) {
      append_note(notes, std::string("shadow: ") + ex.what());
      return false;
    }
    SparseVec x = expand_ring(v, ctx.rank(), d).to_sparse();
    if (shadow.contains(x)) continue;
    out.kind = Verdict::Kind::NonMember;
    out.degree = d;
    out.remainder = reduce_mod(shadow, x);
    MonomialBasis basis(ctx.rank(), d);
    out.leading = basis.monomial(static_cast<std::size_t>(out.remainder.front().first));
    out.method = "shadow";
    return true;
  }
  return false;
}

Verdict decide_impl(const RingElement& v, const IdealExpr& e, const GroupContext& ctx, const DecideConfig& cfg,
                    const WordExpr* hint) {
  Verdict out;
  out.bounds = cfg;
  if (v.is_zero()) {
    out.kind = Verdict::Kind::Member;
    out.method = "trivial";
    return out;
  }
  ctx.check_resolves(e);
  auto monos = e.monomials();
  std::string notes;
  std::vector<std::size_t> active;
  try {
    active = detail::essential_summands(monos, ctx);
  } catch (const Error& ex) {
    append_note(notes, ex.what());
    for (std::size_t i = 0; i < monos.size(); ++i) active.push_back(i);
  }

  detail::DividerCache dc(ctx);
  auto accept = [&](const std::optional<Certificate>& cert, const RingElement& target, const IdealExpr& expr,
                    const char* method) {
    if (!cert) return false;
    std::string why;
    if (!verify_certificate(target, expr, ctx, *cert, &why)) {
      append_note(notes, std::string(method) + ": candidate certificate rejected (" + why + ")");
      return false;
    }
    out.kind = Verdict::Kind::Member;
    out.certificate = *cert;
    out.method = method;
    return true;
  };
  auto guarded = [&](auto&& fn) -> detail::SearchOutcome {
    try {
      return fn();
    } catch (const Error& ex) {
      return {std::nullopt, ex.what()};
    }
  };

  auto r = guarded([&] { return detail::divide_search(v, monos, active, dc, cfg); });
  if (accept(r.certificate, v, e, "division")) return out;
  append_note(notes, r.note);

  if (hint) {
    r = guarded([&] { return detail::structural_search(*hint, monos, active, dc, cfg); });
    if (accept(r.certificate, v, e, "expansion")) return out;
    append_note(notes, r.note);
  }

  r = guarded([&] { return detail::envelope_search(v, monos, active, dc, cfg); });
  if (accept(r.certificate, v, e, "envelope")) return out;
  append_note(notes, r.note);

  // the mirror image: right division through the involution
  IdealExpr rev = e.reversed();
  auto rmonos = rev.monomials();
  std::vector<std::size_t> ractive;
  for (std::size_t j : active) {
    IdealMonomial m(monos[j].rbegin(), monos[j].rend());
    ractive.push_back(static_cast<std::size_t>(std::find(rmonos.begin(), rmonos.end(), m) - rmonos.begin()));
  }
  if (rev != e || monos.size() > 1) {
    RingElement iv = involution(v);
    r = guarded([&] { return detail::envelope_search(iv, rmonos, ractive, dc, cfg); });
    if (r.certificate) r.certificate = transport_involution(*r.certificate, rev);
    if (accept(r.certificate, v, e, "envelope-mirrored")) return out;
    append_note(notes, r.note);
  }

  if (separate(v, e, ctx, cfg, out, notes)) return out;

  out.kind = Verdict::Kind::Unknown;
  out.method = "none";
  out.diagnostics = "d_max=" + std::to_string(cfg.degree) + " radius=" + std::to_string(cfg.radius) +
                    " term_cap=" + std::to_string(cfg.term_cap);
  if (!notes.empty()) out.diagnostics += "; " + notes;
  return out;
}

}  // namespace

Verdict decide(const RingElement& v, const IdealExpr& e, const GroupContext& ctx, const DecideConfig& cfg) {
  return decide_impl(v, e, ctx, cfg, nullptr);
}

Verdict decide_word(const WordExpr& w, const IdealExpr& e, const GroupContext& ctx, const DecideConfig& cfg) {
  return decide_impl(delta_element(w.value()), e, ctx, cfg, &w);
}

bool verify_separation(const RingElement& v, const IdealExpr& e, const GroupContext& ctx, const Verdict& verdict,
                       const DecideConfig& cfg) {
  if (verdict.kind != Verdict::Kind::NonMember || verdict.degree < 0) return false;
  IntLattice shadow = ideal_shadow(e, ctx, verdict.degree, ShadowConfig{cfg.dimension_cap, 1});
  return !shadow.contains(expand_ring(v, ctx.rank(), verdict.degree).to_sparse());
}

}  // namespace dimsub
