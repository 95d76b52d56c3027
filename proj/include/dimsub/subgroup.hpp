#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dimsub/word.hpp"

namespace dimsub {

/// Canonical encoding of an element of a quotient group; equal keys mean equal elements.
using QuotientKey = std::vector<long>;

struct QuotientKeyHash {
  std::size_t operator()(const QuotientKey& k) const noexcept;
};

/// A homomorphism F -> Q with a decidable word problem in Q. The subgroup it
/// describes is the kernel.
class QuotientOracle {
 public:
  enum class Kind { Trivial, Free, FreeAbelian, Permutation, Meet };

  /// Q = 1; the kernel is all of F.
  static std::shared_ptr<const QuotientOracle> trivial(int rank);
  /// Q free of rank `target_rank`; generator i maps to images[i].
  static std::shared_ptr<const QuotientOracle> free(std::vector<Word> images, int target_rank);
  /// Q = Z^dim; generator i maps to images[i].
  static std::shared_ptr<const QuotientOracle> free_abelian(std::vector<std::vector<long>> images);
  /// Q acts on `degree` points; generator i maps to the permutation images[i] (0-based, point -> image).
  static std::shared_ptr<const QuotientOracle> permutation(int degree, std::vector<std::vector<int>> images);
  /// Kernel is the intersection of the factors' kernels.
  static std::shared_ptr<const QuotientOracle> meet(std::vector<std::shared_ptr<const QuotientOracle>> parts);

  Kind kind() const { return kind_; }
  int rank() const { return rank_; }

  QuotientKey image(const Word& w) const;
  bool is_identity(const QuotientKey& k) const;
  bool contains(const Word& w) const { return is_identity(image(w)); }

  /// Representative of the right coset K*w from a fixed prefix-closed (Schreier)
  /// transversal, or nullopt when the transversal search exceeds its cap.
  std::optional<Word> coset_rep(const Word& w) const;

  // Exposed for printing scenario files.
  const std::vector<Word>& free_images() const { return free_images_; }
  int free_target_rank() const { return target_rank_; }
  const std::vector<std::vector<long>>& abelian_images() const { return abelian_images_; }
  int perm_degree() const { return degree_; }
  const std::vector<std::vector<int>>& perm_images() const { return perm_images_; }
  const std::vector<std::shared_ptr<const QuotientOracle>>& parts() const { return parts_; }

  /// Cap on the lazily grown Schreier tree used when no closed-form transversal exists.
  static constexpr std::size_t kTransversalCap = 200000;

 private:
  explicit QuotientOracle(Kind k) : kind_(k) {}
  std::optional<Word> fast_rep(const QuotientKey& key) const;
  void analyse_fast_path();

  Kind kind_;
  int rank_ = 0;
  int target_rank_ = 0;
  int degree_ = 0;
  std::vector<Word> free_images_;
  std::vector<std::vector<long>> abelian_images_;
  std::vector<std::vector<int>> perm_images_;
  std::vector<std::shared_ptr<const QuotientOracle>> parts_;

  // Closed-form transversal: image letter/axis -> chosen generator letter.
  bool fast_ = false;
  std::vector<Letter> axis_letter_;

  struct Tree {
    std::mutex mu;
    std::unordered_map<QuotientKey, Word, QuotientKeyHash> reps;
    std::vector<std::pair<QuotientKey, Word>> frontier;
    bool exhausted = false;
  };
  std::unique_ptr<Tree> tree_;
};

/// A normal subgroup given by normal generators and a quotient oracle whose kernel it is.
struct SubgroupHandle {
  std::string name;
  std::vector<Word> normal_generators;
  std::shared_ptr<const QuotientOracle> oracle;

  bool contains(const Word& w) const { return oracle->contains(w); }
};

/// Checks that every normal generator, and each of its conjugates by the free ball of
/// `radius`, lies in the oracle kernel. Returns the first offending word, if any.
std::optional<Word> find_oracle_violation(const SubgroupHandle& h, int rank, int radius = 2);

/// Left-normed commutators [h_1,...,h_weight] with entries the normal generators of
/// `h` conjugated by free-ball elements of radius `conj_radius`; trivial and duplicate
/// words dropped, output sorted shortlex.
std::vector<Word> gamma_generators(const SubgroupHandle& h, int rank, int weight, int conj_radius,
                                   std::size_t cap = 200000);

}  // namespace dimsub
