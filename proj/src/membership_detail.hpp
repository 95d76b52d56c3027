#pragma once

#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dimsub/membership.hpp"

namespace dimsub::detail {

bool factor_in_atom(const WordExpr& f, const IdealAtom& a, const GroupContext& ctx);
bool atom_divisible(const IdealAtom& a, const GroupContext& ctx);

/// Right-module coordinates over the Schreier free basis of one oracle atom:
/// v = sum_y (y - 1) v_y. Coset representatives are memoised per instance.
class AtomDivider {
 public:
  AtomDivider(const IdealAtom& atom, const GroupContext& ctx);
  std::optional<std::map<Word, RingElement>> divide(const RingElement& v, std::size_t cap) const;
  const Word& rep(const Word& w) const;
  const QuotientOracle& oracle() const { return *oracle_; }

 private:
  std::shared_ptr<const QuotientOracle> oracle_;
  mutable std::unordered_map<Word, Word, WordHash> reps_;
};

class DividerCache {
 public:
  explicit DividerCache(const GroupContext& ctx) : ctx_(ctx) {}
  const AtomDivider& get(const IdealAtom& a);
  const GroupContext& context() const { return ctx_; }

 private:
  const GroupContext& ctx_;
  std::map<IdealAtom, std::unique_ptr<AtomDivider>> cache_;
};

using Coordinates = std::map<std::vector<Word>, RingElement>;

std::optional<Coordinates> coordinates(const RingElement& v, const std::vector<IdealAtom>& atoms, DividerCache& dc,
                                       std::size_t cap);
Certificate certificate_from_coordinates(const Coordinates& coords, std::size_t summand, std::size_t natoms);

}  // namespace dimsub::detail

namespace dimsub::detail {

bool atom_included(const IdealAtom& a, const IdealAtom& b, const GroupContext& ctx);
bool monomial_included(const IdealMonomial& a, const IdealMonomial& b, const GroupContext& ctx);
/// Indices of summands not contained in another summand.
std::vector<std::size_t> essential_summands(const std::vector<IdealMonomial>& monos, const GroupContext& ctx);

struct SearchOutcome {
  std::optional<Certificate> certificate;
  std::string note;  // why the search gave up, when it did
};

/// Exact division of v by a single summand made of oracle atoms.
SearchOutcome divide_search(const RingElement& v, const std::vector<IdealMonomial>& monos,
                            const std::vector<std::size_t>& active, DividerCache& dc, const DecideConfig& cfg);

/// Sum of products: coordinates modulo a common core E, then an integer-linear solve
/// against windowed spanning elements of the other summands.
SearchOutcome envelope_search(const RingElement& v, const std::vector<IdealMonomial>& monos,
                              const std::vector<std::size_t>& active, DividerCache& dc, const DecideConfig& cfg);

/// Expands the commutator/product structure of w - 1 until every term matches a summand.
SearchOutcome structural_search(const WordExpr& w, const std::vector<IdealMonomial>& monos,
                                const std::vector<std::size_t>& active, DividerCache& dc, const DecideConfig& cfg);

}  // namespace dimsub::detail
