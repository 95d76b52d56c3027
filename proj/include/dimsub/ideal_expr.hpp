#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dimsub/subgroup.hpp"
#include "dimsub/word.hpp"

namespace dimsub {

/// Ideal atom: h = Delta(H)Z[F] for a declared H, for F itself, for H' or for gamma_k(H).
struct IdealAtom {
  enum class Kind { Subgroup, Whole, Derived, Gamma };
  Kind kind = Kind::Whole;
  std::string name;  // subgroup name; empty for Whole
  int weight = 1;    // gamma weight; 2 for Derived

  static IdealAtom whole() { return {}; }
  static IdealAtom subgroup(std::string n) { return {Kind::Subgroup, std::move(n), 1}; }
  static IdealAtom derived(std::string n) { return {Kind::Derived, std::move(n), 2}; }
  static IdealAtom gamma(int k, std::string n) { return {Kind::Gamma, std::move(n), k}; }

  std::string format() const;
  friend bool operator==(const IdealAtom&, const IdealAtom&) = default;
  friend auto operator<=>(const IdealAtom&, const IdealAtom&) = default;
};

/// Product of atoms (ideal product, left to right).
using IdealMonomial = std::vector<IdealAtom>;

/// Syntax tree over ideal atoms with product, sum and power.
class IdealExpr {
 public:
  enum class Kind { Atom, Product, Sum, Power };

  static IdealExpr atom(IdealAtom a);
  static IdealExpr product(std::vector<IdealExpr> factors);
  static IdealExpr sum(std::vector<IdealExpr> terms);
  static IdealExpr power(IdealExpr base, int k);
  static IdealExpr from_monomials(const std::vector<IdealMonomial>& ms);

  Kind kind() const { return node_->kind; }
  const IdealAtom& atom_value() const { return node_->atom; }
  const std::vector<IdealExpr>& children() const { return node_->children; }
  int exponent() const { return node_->exponent; }

  /// Fully distributed form: a sum of atom products.
  std::vector<IdealMonomial> monomials() const;
  /// Image under the anti-automorphism w -> w^-1: every product reversed.
  IdealExpr reversed() const;

  std::string format() const;
  friend bool operator==(const IdealExpr& a, const IdealExpr& b);

 private:
  struct Node {
    Kind kind;
    IdealAtom atom;
    std::vector<IdealExpr> children;
    int exponent = 1;
  };
  explicit IdealExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// The ambient free group and its declared normal subgroups.
struct GroupContext {
  Alphabet alphabet;
  std::map<std::string, SubgroupHandle> subgroups;

  int rank() const { return alphabet.rank(); }
  const SubgroupHandle& subgroup(const std::string& name) const;
  /// Membership of w in the subgroup underlying a Subgroup/Whole atom.
  bool atom_contains(const IdealAtom& a, const Word& w) const;
  /// Throws when an atom names an undeclared subgroup.
  void check_resolves(const IdealExpr& e) const;
};

/// Parses `expr := term ("+" term)* ; term := atom+ ; atom := NAME | NAME "'" |
/// "gamma" INT "(" NAME ")" | "f" | atom "^" INT`. Juxtaposed names without spaces
/// ("rst") are split into declared names.
IdealExpr parse_ideal_expr(std::string_view text, const std::vector<std::string>& names);

}  // namespace dimsub
