#include "dimsub/ring.hpp"

#include <cctype>

#include "dimsub/word_expr.hpp"

namespace dimsub {

RingElement RingElement::scalar(const Integer& c) { return term(c, Word{}); }

RingElement RingElement::term(const Integer& c, const Word& w) {
  RingElement r;
  r.add_term(w, c);
  return r;
}

Integer RingElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Integer(0) : it->second;
}

void RingElement::add_term(const Word& w, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

RingElement& RingElement::operator+=(const RingElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

RingElement& RingElement::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

RingElement RingElement::operator-() const {
  RingElement r = *this;
  for (auto& [w, v] : r.terms_) v = -v;
  return r;
}

RingElement RingElement::multiply(const RingElement& a, const RingElement& b, std::size_t cap) {
  RingElement r;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) {
      r.add_term(wa * wb, ca * cb);
      if (r.terms_.size() > cap) throw CapExceeded("ring product exceeds support cap");
    }
  return r;
}

RingElement RingElement::left_mul(const Word& g) const {
  RingElement r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(g * w, c);
  return r;
}

RingElement RingElement::right_mul(const Word& g) const {
  RingElement r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w * g, c);
  return r;
}

std::string RingElement::format(const Alphabet& alphabet) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    Integer mag = abs(c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (w.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += alphabet.format(w);
    }
  }
  return out;
}

Integer augmentation(const RingElement& a) {
  Integer s = 0;
  for (const auto& [w, c] : a.terms()) s += c;
  return s;
}

RingElement involution(const RingElement& a) {
  RingElement r;
  for (const auto& [w, c] : a.terms()) r.add_term(w.inverse(), c);
  return r;
}

RingElement delta_element(const Word& h) {
  RingElement r(h);
  r.add_term(Word{}, -1);
  return r;
}

RingElement parse_ring_element(std::string_view text, const Alphabet& alphabet) {
  RingElement result;
  // Split at top-level '+'/'-' that are not exponent signs.
  std::size_t i = 0;
  int sign = 1;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    sign = text[i] == '-' ? -1 : 1;
    ++i;
  }
  while (true) {
    skip_ws();
    std::size_t start = i;
    int depth = 0;
    char prev = 0;
    while (i < text.size()) {
      char c = text[i];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (depth == 0 && (c == '+' || c == '-') && prev != '^') break;
      if (!std::isspace(static_cast<unsigned char>(c))) prev = c;
      ++i;
    }
    std::string_view term = text.substr(start, i - start);
    while (!term.empty() && std::isspace(static_cast<unsigned char>(term.back()))) term.remove_suffix(1);
    if (term.empty()) throw Error("ring literal, column " + std::to_string(start + 1) + ": empty term");

    std::size_t d = 0;
    while (d < term.size() && std::isdigit(static_cast<unsigned char>(term[d]))) ++d;
    Integer coeff = 1;
    std::string_view word_part = term;
    if (d > 0) {
      std::size_t k = d;
      while (k < term.size() && std::isspace(static_cast<unsigned char>(term[k]))) ++k;
      if (k == term.size()) {
        coeff = Integer(std::string(term.substr(0, d)));
        word_part = {};
      } else if (term[k] == '*') {
        coeff = Integer(std::string(term.substr(0, d)));
        word_part = term.substr(k + 1);
      }
    }
    Word w = word_part.empty() ? Word{} : parse_word(word_part, alphabet);
    result.add_term(w, coeff * sign);

    if (i >= text.size()) break;
    sign = text[i] == '-' ? -1 : 1;
    ++i;
  }
  return result;
}

}  // namespace dimsub
