#include "dimsub/quotlab.hpp"

#include <deque>
#include <map>
#include <random>

namespace dimsub {

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& first, const Perm& then) {
  Perm out(first.size());
  for (std::size_t p = 0; p < first.size(); ++p) out[p] = then[static_cast<std::size_t>(first[p])];
  return out;
}

Perm invert(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return out;
}

std::string fmt(const Word& w) { return Alphabet::standard(std::max(w.max_index() + 1, 1)).format(w); }

}  // namespace

// ---------------------------------------------------------------------------
// coset tables

CosetTable CosetTable::from_permutations(int rank, int degree, const std::vector<std::vector<int>>& images,
                                         std::size_t cap) {
  if (static_cast<int>(images.size()) != rank) throw Error("need one permutation per generator");
  std::vector<Perm> gens, inv;
  for (const auto& img : images) {
    if (static_cast<int>(img.size()) != degree) throw Error("permutation of the wrong degree");
    std::vector<bool> hit(static_cast<std::size_t>(degree), false);
    for (int x : img) {
      if (x < 0 || x >= degree || hit[static_cast<std::size_t>(x)]) throw Error("not a permutation");
      hit[static_cast<std::size_t>(x)] = true;
    }
    gens.push_back(img);
    inv.push_back(invert(img));
  }

  CosetTable ct;
  ct.rank_ = rank;
  std::map<Perm, std::size_t> index;
  Perm id(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) id[static_cast<std::size_t>(i)] = i;
  ct.perms_.push_back(id);
  ct.schreier_.emplace_back();
  index[id] = 0;
  // breadth first, letters in shortlex order x1, x1^-1, x2, ...: a prefix-closed transversal
  for (std::size_t g = 0; g < ct.perms_.size(); ++g) {
    for (int i = 0; i < rank; ++i)
      for (int e : {1, -1}) {
        Perm next = compose(ct.perms_[g], e > 0 ? gens[static_cast<std::size_t>(i)] : inv[static_cast<std::size_t>(i)]);
        if (index.count(next)) continue;
        if (ct.perms_.size() >= cap) throw CapExceeded("finite quotient larger than " + std::to_string(cap));
        index[next] = ct.perms_.size();
        ct.perms_.push_back(next);
        ct.schreier_.push_back(ct.schreier_[g] * Word::reduce(std::vector<Letter>{gen_letter(i, e)}));
      }
  }
  std::size_t n = ct.perms_.size();
  ct.fwd_.assign(n, std::vector<std::size_t>(static_cast<std::size_t>(rank)));
  ct.bwd_ = ct.fwd_;
  for (std::size_t g = 0; g < n; ++g)
    for (int i = 0; i < rank; ++i) {
      std::size_t h = index.at(compose(ct.perms_[g], gens[static_cast<std::size_t>(i)]));
      ct.fwd_[g][static_cast<std::size_t>(i)] = h;
      ct.bwd_[h][static_cast<std::size_t>(i)] = g;
    }
  return ct;
}

std::size_t CosetTable::act(std::size_t g, Letter l) const {
  auto i = static_cast<std::size_t>(letter_index(l));
  if (static_cast<int>(i) >= rank_) throw Error("letter outside the table's rank");
  return l > 0 ? fwd_.at(g)[i] : bwd_.at(g)[i];
}

std::size_t CosetTable::element_of(const Word& w) const {
  std::size_t g = 0;
  for (Letter l : w.letters()) g = act(g, l);
  return g;
}

std::size_t CosetTable::multiply(std::size_t g, std::size_t h) const { return element_of(schreier_.at(g) * schreier_.at(h)); }

std::size_t CosetTable::inverse(std::size_t g) const { return element_of(schreier_.at(g).inverse()); }

std::optional<Word> CosetTable::schreier_generator(std::size_t g, int i) const {
  Word x = Word::generator(i);
  Word s = schreier_.at(g) * x * schreier_.at(fwd_.at(g).at(static_cast<std::size_t>(i))).inverse();
  if (s.empty()) return std::nullopt;
  return s;
}

std::vector<std::size_t> CosetTable::free_basis_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < size(); ++g)
    for (int i = 0; i < rank_; ++i)
      if (schreier_generator(g, i)) out.push_back(g * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(i));
  return out;
}

std::vector<long> CosetTable::rs_vector(const Word& u) const {
  std::vector<long> v(size() * static_cast<std::size_t>(rank_), 0);
  std::size_t c = 0;
  for (Letter l : u.letters()) {
    int i = letter_index(l);
    if (l > 0) {
      if (schreier_generator(c, i)) ++v[c * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(i)];
      c = act(c, l);
    } else {
      c = act(c, l);
      if (schreier_generator(c, i)) --v[c * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(i)];
    }
  }
  if (c != 0) throw Error("word " + fmt(u) + " is not in the kernel");
  return v;
}

Transversal make_transversal(const CosetTable& ct, std::uint64_t seed) {
  Transversal w = ct.schreier();
  if (seed == 0) return w;
  std::vector<Word> gens;
  for (std::size_t g = 0; g < ct.size(); ++g)
    for (int i = 0; i < ct.rank(); ++i)
      if (auto s = ct.schreier_generator(g, i)) gens.push_back(*s);
  if (gens.empty()) return w;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(1, 2);
  std::bernoulli_distribution flip(0.5);
  for (std::size_t g = 1; g < w.size(); ++g) {
    Word u;
    for (int k = len(rng); k > 0; --k) {
      Word s = gens[pick(rng)];
      u = u * (flip(rng) ? s.inverse() : s);
    }
    w[g] = u * w[g];
  }
  return w;
}

// ---------------------------------------------------------------------------
// cocycles

CocycleTable build_cocycle(const CosetTable& ct, const Transversal& w) {
  if (w.size() != ct.size()) throw Error("invalid transversal: wrong number of representatives");
  if (!w[0].empty()) throw Error("invalid transversal: w(1) must be the empty word");
  for (std::size_t g = 0; g < w.size(); ++g)
    if (ct.element_of(w[g]) != g) throw Error("invalid transversal: " + fmt(w[g]) + " is in the wrong coset");
  CocycleTable c{&ct, w, {}};
  std::size_t n = ct.size();
  c.W.assign(n, std::vector<Word>(n));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) c.W[g][h] = w[ct.multiply(g, h)].inverse() * w[g] * w[h];
  return c;
}

CheckReport cocycle_table_check(const CocycleTable& c) {
  CheckReport rep;
  const CosetTable& ct = *c.table;
  for (std::size_t g = 0; g < ct.size(); ++g)
    for (std::size_t h = 0; h < ct.size(); ++h) {
      ++rep.checked;
      const Word& W = c.at(g, h);
      if (c.w[g] * c.w[h] != c.w[ct.multiply(g, h)] * W)
        rep.failures.push_back("defining relation fails at (" + std::to_string(g) + "," + std::to_string(h) + ")");
      if (ct.element_of(W) != 0)
        rep.failures.push_back("W(" + std::to_string(g) + "," + std::to_string(h) + ") is not in R");
    }
  return rep;
}

CheckReport cocycle_identity_check(const CocycleTable& c) {
  CheckReport rep;
  const CosetTable& ct = *c.table;
  std::size_t n = ct.size();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k) {
        ++rep.checked;
        Word lhs = c.at(ct.multiply(g, h), k) * conjugate(c.at(g, h), c.w[k]);
        Word rhs = c.at(g, ct.multiply(h, k)) * c.at(h, k);
        if (lhs != rhs)
          rep.failures.push_back("cocycle identity fails at (" + std::to_string(g) + "," + std::to_string(h) + "," +
                                 std::to_string(k) + ")");
      }
  return rep;
}

Word lemma52_element(const CocycleTable& c, std::size_t g, std::size_t h) {
  const CosetTable& ct = *c.table;
  std::size_t gh = ct.multiply(g, h);
  return conjugate(c.at(g, h).inverse(), c.w[gh].inverse()) * c.at(ct.inverse(h), ct.inverse(g));
}

CheckReport lemma52_check(const CocycleTable& c) {
  CheckReport rep;
  const CosetTable& ct = *c.table;
  for (std::size_t g = 0; g < ct.size(); ++g)
    for (std::size_t h = 0; h < ct.size(); ++h) {
      ++rep.checked;
      std::string at = "(" + std::to_string(g) + "," + std::to_string(h) + ")";
      Word e = lemma52_element(c, g, h);
      if (ct.element_of(e) != 0) {
        rep.failures.push_back("element at " + at + " is not in R");
        continue;
      }
      auto v = ct.rs_vector(e);
      auto v2 = ct.rs_vector(e * e);
      bool zero = std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
      bool doubled = true;
      for (std::size_t i = 0; i < v.size(); ++i) doubled = doubled && v2[i] == 2 * v[i];
      if (!zero) rep.failures.push_back("element at " + at + " is not in [R,R]");
      if (!doubled) rep.failures.push_back("square at " + at + " does not double the vector");
    }
  return rep;
}

// ---------------------------------------------------------------------------
// ideal-level suites

namespace {

IdealAtom atom_named(const std::string& n) { return n == "f" ? IdealAtom::whole() : IdealAtom::subgroup(n); }

IdealExpr sum_of(const std::vector<std::vector<std::string>>& monos) {
  std::vector<IdealMonomial> ms;
  for (const auto& m : monos) {
    IdealMonomial im;
    for (const auto& n : m) im.push_back(atom_named(n));
    ms.push_back(im);
  }
  return IdealExpr::from_monomials(ms);
}

bool contained(const GroupContext& ctx, const std::string& a, const std::string& b) {
  if (b == "f") return true;
  if (a == "f") return false;
  return subgroup_included(ctx.subgroup(a), ctx.subgroup(b));
}

}  // namespace

StohrReport stohr_membership_suite(const GroupContext& ctx, const std::string& r, const std::string& s,
                                   const std::string& t, const WordExpr& a, const DecideConfig& cfg) {
  if (!contained(ctx, r, s) || !contained(ctx, r, t)) throw Error("scenario needs " + r + " inside " + s + " and " + t);
  IdealExpr hyp = sum_of({{s, r, t}, {t, r, s}});
  IdealExpr concl = sum_of({{r, r, s}, {s, r, r}, {t, r, r}, {r, r, t}});
  StohrReport rep;
  rep.hypothesis = decide_word(a, hyp, ctx, cfg);
  rep.hypothesis_established = rep.hypothesis.member();
  rep.label = rep.hypothesis_established ? "hypothesis verified" : "hypothesis unverified";
  rep.conclusion = decide_word(WordExpr::power(a, 2), concl, ctx, cfg);
  if (rep.conclusion.member()) {
    Certificate m = transport_involution(rep.conclusion.certificate, concl);
    RingElement v = involution(delta_element(a.value().pow(2)));
    rep.mirrored_ok = verify_certificate(v, concl.reversed(), ctx, m);
  }
  return rep;
}

WordExpr prop4_w_builder(const GroupContext& ctx, const std::string& r, const std::string& s,
                         const std::vector<Prop4Tuple>& tuples, const Word& d, const Word& e) {
  const auto& hr = ctx.subgroup(r);
  const auto& hs = ctx.subgroup(s);
  Word prod;
  for (const auto& tp : tuples) {
    if (!hr.contains(tp.r)) throw Error("r = " + fmt(tp.r) + " is not in " + r);
    if (!hr.contains(tp.t) || !hs.contains(tp.t)) throw Error("t = " + fmt(tp.t) + " is not in " + r + " cap " + s);
    prod = prod * commutator(tp.r, tp.t);
  }
  if (!prod.empty()) throw Error("relation prod [r_i, t_i] = 1 fails: product is " + fmt(prod));
  if (!hs.contains(d) || !hs.contains(e)) throw Error("d and e must lie in " + s);
  WordExpr w;
  bool first = true;
  for (const auto& tp : tuples) {
    WordExpr term = WordExpr::commutator(WordExpr::commutator(WordExpr::inverse(WordExpr::leaf(tp.r)), WordExpr::leaf(d)),
                                         WordExpr::commutator(WordExpr::leaf(tp.t), WordExpr::leaf(e)));
    w = first ? term : WordExpr::product(w, term);
    first = false;
  }
  return w;
}

Verdict prop4_check(const GroupContext& ctx, const std::string& r, const std::string& s, const WordExpr& w,
                    const DecideConfig& cfg) {
  return decide_word(w, sum_of({{r, s, "f"}}), ctx, cfg);
}

std::vector<Prop4Tuple> hall_witt_tuples(const Word& a, const Word& b, const Word& c) {
  return {{conjugate(commutator(a, b.inverse()), b), conjugate(c, b)},
          {conjugate(commutator(b, c.inverse()), c), conjugate(a, c)},
          {conjugate(commutator(c, a.inverse()), a), conjugate(b, a)}};
}

}  // namespace dimsub
