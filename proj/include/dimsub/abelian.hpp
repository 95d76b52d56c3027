#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dimsub/lattice.hpp"

namespace dimsub {

/// Z^gens / relations.
struct AbPresentation {
  std::size_t gens = 0;
  IntLattice relations;

  static AbPresentation make(std::size_t gens, const std::vector<SparseVec>& rels);
  std::vector<Integer> invariants() const;
};

/// Homomorphism given on generators: rows[i] is the image of generator i of src.
struct AbMap {
  AbPresentation src, dst;
  std::vector<SparseVec> rows;

  SparseVec apply(const SparseVec& x) const;
  /// Relations of src land in the relations of dst.
  bool well_defined() const;
  /// Image plus the relations of dst, as a lattice in Z^dst.gens.
  IntLattice image() const;
  /// {x : f(x) in dst.relations}, a lattice in Z^src.gens containing src.relations.
  IntLattice kernel() const;
  bool injective() const { return kernel() == src.relations; }
  bool surjective() const;
};

/// {x in Z^src_dim : x * rows in target}.
IntLattice preimage(const std::vector<SparseVec>& rows, std::size_t src_dim, const IntLattice& target);
/// ker(g) == im(f) inside the common middle term.
bool exact_at(const AbMap& f, const AbMap& g);
/// Equal as maps: every generator's images differ by a relation of dst.
bool same_map(const AbMap& f, const AbMap& g);
AbMap compose(const AbMap& f, const AbMap& g);  // g after f

/// Finitely generated abelian group: canonical invariant factors (torsion d1 | d2 | ...,
/// then one 0 per free summand) and a presentation E/I realizing them.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  /// Any list of cyclic orders, 0 meaning Z; normalized to invariant factors.
  static FgAbGroup from_invariants(const std::vector<Integer>& cyclic);
  static FgAbGroup from_presentation(AbPresentation p);
  static FgAbGroup free(std::size_t rank);

  const std::vector<Integer>& invariants() const { return invariants_; }
  const AbPresentation& presentation() const { return pres_; }
  std::size_t free_rank() const;
  std::vector<Integer> torsion() const;
  bool is_free() const { return torsion().empty(); }
  bool is_trivial() const { return invariants_.empty(); }
  /// nullopt when infinite.
  std::optional<Integer> order() const;
  std::string format() const { return format_invariants(invariants_); }

  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) { return a.invariants_ == b.invariants_; }

 private:
  std::vector<Integer> invariants_;
  AbPresentation pres_;
};

/// Parses "Z/2 + Z/4 + Z", "0", "Z^2".
FgAbGroup parse_group(std::string_view text);

FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup tor(const FgAbGroup& a, const FgAbGroup& b);
/// Quotient sup/sub of lattices in a common Z^n.
FgAbGroup quotient_group(const IntLattice& sub, const IntLattice& sup);

enum class QuadFunctor { Tensor, Sym, Ext, AntiTensor, Gamma, Tor, L1Sym, L1Ext };

std::string to_string(QuadFunctor k);
std::optional<QuadFunctor> parse_functor(std::string_view name);

struct FunctorValue {
  QuadFunctor kind;
  FgAbGroup value;
};

FunctorValue functor_eval(QuadFunctor kind, const FgAbGroup& a);

/// Presentation of F(A) from the presentation of A, for the five quadratic functors.
/// Bases: tensor e_a(x)e_b at a*n+b; Sym/Gamma/Ext over pairs a<=b or a<b in lex order
/// (Gamma: gamma(e_a) first, then e_a*e_b).
AbPresentation functor_presentation(QuadFunctor kind, const AbPresentation& a);
/// F(f) for f : A -> B given on presentations.
AbMap functor_map(QuadFunctor kind, const AbMap& f);
/// Quotient map from the tensor square onto Sym, Ext or AntiTensor.
AbMap tensor_projection(QuadFunctor target, const AbPresentation& a);

struct SequenceReport {
  std::vector<std::string> terms;  // printed groups, left to right
  std::vector<bool> exact;         // one flag per term (injective / exact / surjective)
  bool orders_consistent = true;   // alternating order/rank bookkeeping
  bool ok() const;
};

struct Seq910Report {
  SequenceReport seq9;   // 0 -> A(x)Z/2 -> antisym square -> exterior square -> 0
  SequenceReport seq10;  // 0 -> SP2 -> Gamma2 -> A(x)Z/2 -> 0
  bool ok() const { return seq9.ok() && seq10.ok(); }
};
Seq910Report seq9_10_check(const FgAbGroup& a);

struct Seq11Report {
  SequenceReport seq;  // Lambda2(E)/Lambda2(I) -> E(x)A -> SP2(A), with the kernel on the left
  FgAbGroup l1sym;     // kernel of the first map
  FgAbGroup tor_mod_diagonal;
  bool cross_check = false;
  bool ok() const { return seq.ok() && cross_check; }
};
/// I given by generators in Z^rank. Throws when a generator has the wrong length.
Seq11Report seq11_check(std::size_t rank, const std::vector<SparseVec>& i_gens);

struct KoszulReport {
  FgAbGroup h0, h1;
  FgAbGroup antisym_a;  // antisymmetric square of A, for H0
  FgAbGroup tor2;       // Tor(A, Z/2)
  FgAbGroup l1ext;      // from the Gamma2 Koszul complex
  FgAbGroup kernel;     // kernel of H1 -> L1 Lambda2(A)
  bool quotient_surjective = false;
  bool ok() const;
};
KoszulReport koszul_antisym(std::size_t rank, const std::vector<SparseVec>& i_gens);

/// Tor(A,A) modulo the subgroup generated by tau(x,x), x ranging over the cyclic
/// generators and their pairwise sums.
FgAbGroup tor_mod_diagonal(const FgAbGroup& a);

/// Scalar by which SP3(E) -> SP2(E)(x)E -> SP3(E) acts. Throws on a non-free or
/// too large input, or if the composite is not scalar.
Integer sp3_roundtrip(const FgAbGroup& e);

}  // namespace dimsub
