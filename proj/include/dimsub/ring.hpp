#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "dimsub/word.hpp"

namespace dimsub {

/// Element of the integral group ring Z[F]: finite support, no zero coefficients,
/// terms kept in shortlex order of their words.
class RingElement {
 public:
  using Terms = std::map<Word, Integer>;

  static constexpr std::size_t kDefaultTermCap = 100000;

  RingElement() = default;
  RingElement(const Word& w) { terms_.emplace(w, 1); }  // NOLINT(google-explicit-constructor)
  static RingElement scalar(const Integer& c);
  static RingElement term(const Integer& c, const Word& w);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }
  Integer coefficient(const Word& w) const;

  void add_term(const Word& w, const Integer& c);

  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement& operator*=(const Integer& c);
  RingElement operator-() const;

  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(RingElement a, const Integer& c) { return a *= c; }
  friend RingElement operator*(const Integer& c, RingElement a) { return a *= c; }
  friend RingElement operator*(const RingElement& a, const RingElement& b) { return multiply(a, b); }
  friend bool operator==(const RingElement& a, const RingElement& b) = default;

  /// Product with a support cap; throws CapExceeded when the result would exceed it.
  static RingElement multiply(const RingElement& a, const RingElement& b, std::size_t cap = kDefaultTermCap);

  /// Left/right multiplication by a group element (cheap: no convolution).
  RingElement left_mul(const Word& g) const;
  RingElement right_mul(const Word& g) const;

  std::string format(const Alphabet& alphabet) const;

 private:
  Terms terms_;
};

/// Sum of coefficients.
Integer augmentation(const RingElement& a);
/// Linear extension of w -> w^-1.
RingElement involution(const RingElement& a);
/// h - 1.
RingElement delta_element(const Word& h);

/// Parses `2*[x,y] - 1 + x^-1`: a signed sum of terms `[INT "*"] word` or `INT`.
RingElement parse_ring_element(std::string_view text, const Alphabet& alphabet);

}  // namespace dimsub
