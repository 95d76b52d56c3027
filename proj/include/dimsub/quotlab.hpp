#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dimsub/membership.hpp"

namespace dimsub {

/// Finite quotient G = F/R given by permutation images of the generators, as the
/// regular action of G on itself. Element 0 is the identity.
class CosetTable {
 public:
  /// Generator i acts on `degree` points by images[i] (point -> image). Words act left to right.
  static CosetTable from_permutations(int rank, int degree, const std::vector<std::vector<int>>& images,
                                      std::size_t cap = 100000);

  int rank() const { return rank_; }
  std::size_t size() const { return perms_.size(); }
  /// Element reached from g by the letter l.
  std::size_t act(std::size_t g, Letter l) const;
  std::size_t element_of(const Word& w) const;
  std::size_t multiply(std::size_t g, std::size_t h) const;
  std::size_t inverse(std::size_t g) const;
  const std::vector<int>& permutation(std::size_t g) const { return perms_.at(g); }

  /// Prefix-closed BFS transversal (shortlex order of generators).
  const std::vector<Word>& schreier() const { return schreier_; }
  /// Schreier generator s(g) x_i s(g x_i)^-1, or nullopt when it reduces to the empty word.
  std::optional<Word> schreier_generator(std::size_t g, int i) const;
  /// Abelianized Reidemeister-Schreier vector of u in R, indexed g * rank + i. Throws if u is not in R.
  std::vector<long> rs_vector(const Word& u) const;
  /// Positions (g * rank + i) of the nontrivial Schreier generators: a free basis of R.
  std::vector<std::size_t> free_basis_positions() const;

 private:
  int rank_ = 0;
  std::vector<std::vector<int>> perms_;
  std::vector<std::vector<std::size_t>> fwd_, bwd_;  // [g][i]
  std::vector<Word> schreier_;
};

/// A transversal w(g) with w(1) = empty word.
using Transversal = std::vector<Word>;

/// Schreier transversal, or (seed != 0) a randomized one: w(g) = u * s(g) with u a random
/// product of Schreier generators, so w(g) still lies in coset g.
Transversal make_transversal(const CosetTable& ct, std::uint64_t seed = 0);

struct CocycleTable {
  const CosetTable* table = nullptr;
  Transversal w;
  std::vector<std::vector<Word>> W;  // W[g][h]

  const Word& at(std::size_t g, std::size_t h) const { return W.at(g).at(h); }
};

/// W(g,h) = w(gh)^-1 w(g) w(h). Throws when w is not a transversal of the table.
CocycleTable build_cocycle(const CosetTable& ct, const Transversal& w);

struct CheckReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Defining relation and W(g,h) in R for every pair.
CheckReport cocycle_table_check(const CocycleTable& c);
/// W(gh,k) W(g,h)^{w(k)} = W(g,hk) W(h,k) for every triple, exactly in F.
CheckReport cocycle_identity_check(const CocycleTable& c);

/// (W(g,h)^-1)^{w(gh)^-1} W(h^-1, g^-1).
Word lemma52_element(const CocycleTable& c, std::size_t g, std::size_t h);
/// The element and its square have zero abelianized Reidemeister-Schreier vectors.
CheckReport lemma52_check(const CocycleTable& c);

struct StohrReport {
  Verdict hypothesis;   // a - 1 in srt + trs
  Verdict conclusion;   // a^2 - 1 in rrs + srr + trr + rrt
  bool hypothesis_established = false;
  bool mirrored_ok = false;  // transported certificate verifies in the reversed ideal
  std::string label;
};

/// R <= S, T by name. With S = T = "f" this is the rrf + frr statement.
StohrReport stohr_membership_suite(const GroupContext& ctx, const std::string& r, const std::string& s,
                                   const std::string& t, const WordExpr& a, const DecideConfig& cfg = {});

struct Prop4Tuple {
  Word r;  // in R
  Word t;  // in R cap S
};

/// w = prod_i [[r_i^-1, d], [t_i, e]]. Throws unless prod_i [r_i, t_i] = 1 exactly, the r_i lie in
/// R, the t_i in R and S, and d, e in S.
WordExpr prop4_w_builder(const GroupContext& ctx, const std::string& r, const std::string& s,
                         const std::vector<Prop4Tuple>& tuples, const Word& d, const Word& e);
/// decide(w - 1, r s f).
Verdict prop4_check(const GroupContext& ctx, const std::string& r, const std::string& s, const WordExpr& w,
                    const DecideConfig& cfg = {});

/// Hall-Witt: [[a,b^-1],c]^b [[b,c^-1],a]^c [[c,a^-1],b]^a = 1 recast as prod [r_i, t_i].
std::vector<Prop4Tuple> hall_witt_tuples(const Word& a, const Word& b, const Word& c);

}  // namespace dimsub
