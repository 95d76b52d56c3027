#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dimsub/integer.hpp"

namespace dimsub {

/// A letter is a signed generator index: +(i+1) for x_i, -(i+1) for x_i^-1.
using Letter = int;

inline constexpr Letter gen_letter(int index, int exponent = 1) {
  return exponent > 0 ? index + 1 : -(index + 1);
}
inline constexpr int letter_index(Letter l) { return (l > 0 ? l : -l) - 1; }
inline constexpr int letter_exponent(Letter l) { return l > 0 ? 1 : -1; }

/// Position of a letter in the order x_1 < x_1^-1 < x_2 < x_2^-1 < ...
inline constexpr int letter_rank(Letter l) { return 2 * letter_index(l) + (l < 0 ? 1 : 0); }

/// Freely reduced word in a free group. Immutable value; every constructor reduces.
class Word {
 public:
  Word() = default;

  /// Reduces `raw`. Throws Error if a generator index is >= rank (rank < 0 disables the check).
  static Word reduce(std::span<const Letter> raw, int rank = -1);
  static Word generator(int index) { return Word(std::vector<Letter>{gen_letter(index)}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word pow(long n) const;
  /// Largest generator index used, or -1 for the empty word.
  int max_index() const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) = default;
  /// Shortlex order using letter_rank.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  explicit Word(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
  std::vector<Letter> letters_;
};

/// [a,b] = a^-1 b^-1 a b.
Word commutator(const Word& a, const Word& b);
/// Left-normed [w_1, w_2, ..., w_k].
Word commutator(std::span<const Word> ws);
/// a^g = g^-1 a g.
Word conjugate(const Word& a, const Word& g);

/// Generator names for printing and parsing.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);
  /// x1..xn.
  static Alphabet standard(int rank);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  /// -1 when unknown.
  int index_of(std::string_view name) const;

  /// Compact rendering, e.g. "x1^-1*x2^2"; the empty word prints as "1".
  std::string format(const Word& w) const;

 private:
  std::vector<std::string> names_;
};

/// All distinct reduced products of at most `radius` factors from gens and their inverses.
/// Output is sorted shortlex. Throws CapExceeded above `cap` elements.
std::vector<Word> ball(std::span<const Word> gens, int radius, std::size_t cap = 200000);

/// Ball of the free group on `rank` generators.
std::vector<Word> free_ball(int rank, int radius, std::size_t cap = 200000);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace dimsub
