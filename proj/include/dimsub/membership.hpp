#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dimsub/ideal_expr.hpp"
#include "dimsub/lattice.hpp"
#include "dimsub/magnus.hpp"
#include "dimsub/ring.hpp"
#include "dimsub/word_expr.hpp"

namespace dimsub {

struct DecideConfig {
  int degree = 6;   // largest shadow degree tried for separation
  int radius = 4;   // search radius: relation windows, structural expansion depth
  std::size_t term_cap = 200000;
  std::size_t dimension_cap = 20000;
};

/// coeff * words[0] (factors[0] - 1) words[1] ... (factors[k-1] - 1) words[k].
/// witness[i] is the factor standing for atom i of the summand.
struct CertificateTerm {
  Integer coeff;
  std::vector<Word> words;
  std::vector<WordExpr> factors;
  std::size_t summand = 0;
  std::vector<std::size_t> witness;

  RingElement value(std::size_t cap = RingElement::kDefaultTermCap) const;
};

struct Certificate {
  std::vector<CertificateTerm> terms;
  std::size_t size() const { return terms.size(); }
};

/// Checks that every factor lies in its atom (oracle, or a commutator proof for derived
/// and gamma atoms) and that the terms sum to v exactly. On failure `why` says what broke.
bool verify_certificate(const RingElement& v, const IdealExpr& e, const GroupContext& ctx, const Certificate& c,
                        std::string* why = nullptr);

/// Largest k (capped at `cap`) for which the tree proves value() in gamma_k(H):
/// leaves use H's oracle, [a,b] adds levels, products take the minimum, conjugates keep it.
int gamma_level(const WordExpr& proof, const SubgroupHandle& h, int cap = 16);

struct Verdict {
  enum class Kind { Member, NonMember, Unknown };
  Kind kind = Kind::Unknown;
  Certificate certificate;       // Member
  int degree = -1;               // NonMember: separating degree
  Monomial leading;              // NonMember: leading monomial of the reduced remainder
  SparseVec remainder;           // NonMember: expand_ring(v) reduced modulo the shadow
  std::string method;            // how the verdict was reached
  std::string diagnostics;       // Unknown: bounds and caps hit
  DecideConfig bounds;

  bool member() const { return kind == Kind::Member; }
  bool non_member() const { return kind == Kind::NonMember; }
};

std::string to_string(Verdict::Kind k);

/// Three-valued membership of v in the ideal e. Member carries an exact certificate,
/// NonMember a shadow separation, Unknown the bounds used.
Verdict decide(const RingElement& v, const IdealExpr& e, const GroupContext& ctx, const DecideConfig& cfg = {});
/// Same for w - 1, using the literal's structure when it helps.
Verdict decide_word(const WordExpr& w, const IdealExpr& e, const GroupContext& ctx, const DecideConfig& cfg = {});

/// Re-checks a NonMember verdict against a freshly computed shadow.
bool verify_separation(const RingElement& v, const IdealExpr& e, const GroupContext& ctx, const Verdict& verdict,
                       const DecideConfig& cfg = {});

/// Certificate for involution(v) in e.reversed(), transported term by term from a
/// certificate for v in e.
Certificate transport_involution(const Certificate& c, const IdealExpr& e);

/// Exact left division by a product of oracle atoms: v = sum_k (k_1 - 1)...(k_m - 1) c_k,
/// keyed by the tuple of Schreier free-basis words. nullopt when v is not in the product
/// (times Z[F]). Throws CapExceeded when a transversal or the term budget runs out.
std::optional<std::map<std::vector<Word>, RingElement>> left_coordinates(const RingElement& v,
                                                                         const std::vector<IdealAtom>& atoms,
                                                                         const GroupContext& ctx,
                                                                         std::size_t term_cap = 200000);

struct ProbeRow {
  WordExpr word;
  Verdict verdict;
};
std::vector<ProbeRow> probe_subgroup(const std::vector<WordExpr>& words, const IdealExpr& e, const GroupContext& ctx,
                                     const DecideConfig& cfg = {});

/// Normal-subgroup inclusion A <= B, exact: every normal generator of A lies in B.
bool subgroup_included(const SubgroupHandle& a, const SubgroupHandle& b);

struct IdentityReport {
  struct Row {
    std::string spanning;  // the RHS spanning product, printed
    std::string side;      // which intersectand
    Verdict verdict;
  };
  std::vector<Row> rhs_in_lhs;
  bool certificates_verified = true;
  bool shadow_equal = false;
  int degree = 0;
  std::vector<SparseVec> meet_not_in_rhs;  // basis vectors of meet(A,B) outside shadow(rhs)
  std::vector<SparseVec> rhs_not_in_meet;
  std::size_t meet_rank = 0;
  std::size_t rhs_rank = 0;
};

struct Inclusion {
  std::string sub;
  std::string super;
};

/// Compares A meet B with rhs: certificates that spanning products of rhs lie in A and in B,
/// and truncated shadows at degree d. Throws when a stated inclusion hypothesis fails.
IdentityReport identity_report(const IdealExpr& a, const IdealExpr& b, const IdealExpr& rhs, int degree,
                               const GroupContext& ctx, const std::vector<Inclusion>& hypotheses = {},
                               const DecideConfig& cfg = {});

/// Declared handles for the intersections inside I(R,S,T). Empty names are derived from
/// inclusions when possible; otherwise the builder throws.
struct IHandles {
  std::string r, s, t;
  std::string rs;       // R cap S
  std::string st;       // S cap T
  std::string rt;       // R cap T
  std::string r_stp;    // R cap (S cap T)'
  std::string rsp_stp;  // (R cap S)' cap (S cap T)'
  std::string rsp_t;    // (R cap S)' cap T
};

/// Generators (as commutator trees) of [(R^S)'^(S^T)', R^T] (R^(S^T)')' ((R^S)'^T)' at the
/// given conjugation radius; deduplicated by value and sorted shortlex.
std::vector<WordExpr> i_subgroup_generators(const GroupContext& ctx, const IHandles& h, int conj_radius = 0,
                                            std::size_t cap = 5000);

}  // namespace dimsub
