#include "dimsub/subgroup.hpp"

#include <algorithm>
#include <set>

namespace dimsub {

std::size_t QuotientKeyHash::operator()(const QuotientKey& k) const noexcept {
  std::size_t h = 1469598103934665603ull ^ k.size();
  for (long v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
  return h;
}

std::shared_ptr<const QuotientOracle> QuotientOracle::trivial(int rank) {
  auto q = std::shared_ptr<QuotientOracle>(new QuotientOracle(Kind::Trivial));
  q->rank_ = rank;
  q->fast_ = true;
  return q;
}

std::shared_ptr<const QuotientOracle> QuotientOracle::free(std::vector<Word> images, int target_rank) {
  auto q = std::shared_ptr<QuotientOracle>(new QuotientOracle(Kind::Free));
  q->rank_ = static_cast<int>(images.size());
  q->target_rank_ = target_rank;
  for (const auto& w : images)
    if (w.max_index() >= target_rank) throw Error("free quotient image uses a letter beyond the target rank");
  q->free_images_ = std::move(images);
  q->analyse_fast_path();
  return q;
}

std::shared_ptr<const QuotientOracle> QuotientOracle::free_abelian(std::vector<std::vector<long>> images) {
  auto q = std::shared_ptr<QuotientOracle>(new QuotientOracle(Kind::FreeAbelian));
  q->rank_ = static_cast<int>(images.size());
  q->target_rank_ = images.empty() ? 0 : static_cast<int>(images[0].size());
  for (const auto& v : images)
    if (static_cast<int>(v.size()) != q->target_rank_) throw Error("abelian quotient images have unequal lengths");
  q->abelian_images_ = std::move(images);
  q->analyse_fast_path();
  return q;
}

std::shared_ptr<const QuotientOracle> QuotientOracle::permutation(int degree, std::vector<std::vector<int>> images) {
  auto q = std::shared_ptr<QuotientOracle>(new QuotientOracle(Kind::Permutation));
  q->rank_ = static_cast<int>(images.size());
  q->degree_ = degree;
  for (const auto& p : images) {
    if (static_cast<int>(p.size()) != degree) throw Error("permutation has wrong degree");
    std::vector<bool> hit(static_cast<std::size_t>(degree), false);
    for (int v : p) {
      if (v < 0 || v >= degree || hit[static_cast<std::size_t>(v)]) throw Error("not a permutation");
      hit[static_cast<std::size_t>(v)] = true;
    }
  }
  q->perm_images_ = std::move(images);
  q->tree_ = std::make_unique<Tree>();
  return q;
}

std::shared_ptr<const QuotientOracle> QuotientOracle::meet(std::vector<std::shared_ptr<const QuotientOracle>> parts) {
  if (parts.empty()) throw Error("meet of no quotients");
  auto q = std::shared_ptr<QuotientOracle>(new QuotientOracle(Kind::Meet));
  q->rank_ = parts[0]->rank();
  for (const auto& p : parts)
    if (p->rank() != q->rank_) throw Error("meet of quotients over different ranks");
  q->parts_ = std::move(parts);
  q->tree_ = std::make_unique<Tree>();
  return q;
}

void QuotientOracle::analyse_fast_path() {
  // Closed form exists when every generator maps to a single letter / unit vector or to 1.
  axis_letter_.assign(static_cast<std::size_t>(target_rank_), 0);
  bool simple = true;
  for (int i = 0; i < rank_ && simple; ++i) {
    int axis = -1;
    int sign = 0;
    if (kind_ == Kind::Free) {
      const auto& w = free_images_[static_cast<std::size_t>(i)];
      if (w.length() > 1) simple = false;
      if (w.length() == 1) {
        axis = letter_index(w.letters()[0]);
        sign = letter_exponent(w.letters()[0]);
      }
    } else {
      const auto& v = abelian_images_[static_cast<std::size_t>(i)];
      int nonzero = 0;
      for (int j = 0; j < target_rank_; ++j) {
        long c = v[static_cast<std::size_t>(j)];
        if (c == 0) continue;
        ++nonzero;
        if (c != 1 && c != -1) simple = false;
        axis = j;
        sign = static_cast<int>(c);
      }
      if (nonzero > 1) simple = false;
    }
    if (simple && axis >= 0 && axis_letter_[static_cast<std::size_t>(axis)] == 0)
      axis_letter_[static_cast<std::size_t>(axis)] = gen_letter(i, sign);
  }
  fast_ = simple;
  if (!fast_) tree_ = std::make_unique<Tree>();
}

QuotientKey QuotientOracle::image(const Word& w) const {
  switch (kind_) {
    case Kind::Trivial: return {};
    case Kind::Free: {
      Word acc;
      for (Letter l : w.letters()) {
        const Word& g = free_images_.at(static_cast<std::size_t>(letter_index(l)));
        acc = acc * (l > 0 ? g : g.inverse());
      }
      return {acc.letters().begin(), acc.letters().end()};
    }
    case Kind::FreeAbelian: {
      QuotientKey v(static_cast<std::size_t>(target_rank_), 0);
      for (Letter l : w.letters()) {
        const auto& g = abelian_images_.at(static_cast<std::size_t>(letter_index(l)));
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += letter_exponent(l) * g[j];
      }
      return v;
    }
    case Kind::Permutation: {
      QuotientKey p(static_cast<std::size_t>(degree_));
      for (int i = 0; i < degree_; ++i) p[static_cast<std::size_t>(i)] = i;
      for (Letter l : w.letters()) {
        const auto& g = perm_images_.at(static_cast<std::size_t>(letter_index(l)));
        if (l > 0) {
          for (auto& x : p) x = g[static_cast<std::size_t>(x)];
        } else {
          std::vector<int> inv(g.size());
          for (std::size_t i = 0; i < g.size(); ++i) inv[static_cast<std::size_t>(g[i])] = static_cast<int>(i);
          for (auto& x : p) x = inv[static_cast<std::size_t>(x)];
        }
      }
      return p;
    }
    case Kind::Meet: {
      QuotientKey out;
      for (const auto& part : parts_) {
        QuotientKey k = part->image(w);
        out.push_back(static_cast<long>(k.size()));
        out.insert(out.end(), k.begin(), k.end());
      }
      return out;
    }
  }
  return {};
}

bool QuotientOracle::is_identity(const QuotientKey& k) const {
  switch (kind_) {
    case Kind::Trivial: return true;
    case Kind::Free: return k.empty();
    case Kind::FreeAbelian: return std::all_of(k.begin(), k.end(), [](long v) { return v == 0; });
    case Kind::Permutation:
      for (std::size_t i = 0; i < k.size(); ++i)
        if (k[i] != static_cast<long>(i)) return false;
      return true;
    case Kind::Meet: {
      std::size_t pos = 0;
      for (const auto& part : parts_) {
        auto len = static_cast<std::size_t>(k.at(pos));
        QuotientKey sub(k.begin() + static_cast<std::ptrdiff_t>(pos + 1),
                        k.begin() + static_cast<std::ptrdiff_t>(pos + 1 + len));
        if (!part->is_identity(sub)) return false;
        pos += 1 + len;
      }
      return true;
    }
  }
  return false;
}

std::optional<Word> QuotientOracle::fast_rep(const QuotientKey& key) const {
  std::vector<Letter> out;
  if (kind_ == Kind::Free) {
    for (long l : key) {
      Letter g = axis_letter_.at(static_cast<std::size_t>(letter_index(static_cast<Letter>(l))));
      out.push_back(l > 0 ? g : -g);
    }
  } else if (kind_ == Kind::FreeAbelian) {
    for (std::size_t j = 0; j < key.size(); ++j) {
      Letter g = axis_letter_[j];
      for (long c = 0; c < std::abs(key[j]); ++c) out.push_back(key[j] > 0 ? g : -g);
    }
  }
  return Word::reduce(out);
}

std::optional<Word> QuotientOracle::coset_rep(const Word& w) const {
  if (kind_ == Kind::Trivial) return Word{};
  QuotientKey key = image(w);
  if (fast_) return fast_rep(key);

  std::lock_guard lock(tree_->mu);
  auto& t = *tree_;
  if (t.reps.empty()) {
    Word e;
    t.reps.emplace(image(e), e);
    t.frontier.emplace_back(image(e), e);
  }
  if (auto it = t.reps.find(key); it != t.reps.end()) return it->second;
  std::vector<Letter> steps;
  for (int i = 0; i < rank_; ++i) {
    steps.push_back(gen_letter(i, 1));
    steps.push_back(gen_letter(i, -1));
  }
  while (!t.exhausted) {
    std::vector<std::pair<QuotientKey, Word>> next;
    for (const auto& [k, rep] : t.frontier) {
      for (Letter s : steps) {
        if (!rep.empty() && rep.letters().back() == -s) continue;
        Word cand = rep * Word::reduce(std::vector<Letter>{s});
        QuotientKey ck = image(cand);
        if (t.reps.contains(ck)) continue;
        t.reps.emplace(ck, cand);
        next.emplace_back(std::move(ck), cand);
        if (t.reps.size() > kTransversalCap) {
          t.exhausted = true;
          break;
        }
      }
      if (t.exhausted) break;
    }
    if (next.empty()) t.exhausted = true;
    t.frontier = std::move(next);
    if (auto it = t.reps.find(key); it != t.reps.end()) return it->second;
  }
  return std::nullopt;
}

std::optional<Word> find_oracle_violation(const SubgroupHandle& h, int rank, int radius) {
  auto conj = free_ball(rank, radius);
  for (const auto& g : h.normal_generators)
    for (const auto& c : conj) {
      Word w = conjugate(g, c);
      if (!h.contains(w)) return w;
    }
  return std::nullopt;
}

std::vector<Word> gamma_generators(const SubgroupHandle& h, int rank, int weight, int conj_radius, std::size_t cap) {
  if (weight < 2) throw Error("gamma_generators needs weight >= 2");
  if (h.normal_generators.empty()) throw Error("subgroup " + h.name + " has no normal generators");
  std::set<Word> entry_set;
  for (const auto& c : free_ball(rank, conj_radius))
    for (const auto& g : h.normal_generators) {
      Word e = conjugate(g, c);
      if (!e.empty()) entry_set.insert(e);
    }
  std::vector<Word> entries(entry_set.begin(), entry_set.end());
  std::vector<Word> level = entries;
  for (int k = 2; k <= weight; ++k) {
    std::set<Word> next;
    for (const auto& c : level)
      for (const auto& e : entries) {
        Word w = commutator(c, e);
        if (w.empty()) continue;
        next.insert(std::move(w));
        if (next.size() > cap) throw CapExceeded("gamma_generators exceeds cap");
      }
    level.assign(next.begin(), next.end());
  }
  return level;
}

}  // namespace dimsub
