#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dimsub/word.hpp"

namespace dimsub {

/// Syntax tree of a word literal. Keeps the commutator/product structure that the
/// membership engine expands; `value()` is the reduced word it denotes.
class WordExpr {
 public:
  enum class Kind { Identity, Generator, Product, Power, Commutator };

  WordExpr() : WordExpr(Kind::Identity, {}, 0, 0) {}

  static WordExpr identity() { return {}; }
  static WordExpr generator(int index);
  static WordExpr leaf(const Word& w);
  static WordExpr product(const WordExpr& a, const WordExpr& b);
  static WordExpr power(const WordExpr& a, long exponent);
  static WordExpr inverse(const WordExpr& a) { return power(a, -1); }
  static WordExpr commutator(const WordExpr& a, const WordExpr& b);
  /// b^-1 a b, built as a product so it parses back identically.
  static WordExpr conjugate(const WordExpr& a, const WordExpr& b);

  Kind kind() const { return node_->kind; }
  const Word& value() const { return node_->value; }
  int generator_index() const { return node_->index; }
  long exponent() const { return node_->exponent; }
  const std::vector<WordExpr>& children() const { return node_->children; }

  /// Renders in the literal grammar; parse(format(e)) reproduces the same tree.
  std::string format(const Alphabet& alphabet) const;

  friend bool operator==(const WordExpr& a, const WordExpr& b);

 private:
  struct Node {
    Kind kind;
    Word value;
    int index = -1;
    long exponent = 0;
    std::vector<WordExpr> children;
  };
  WordExpr(Kind kind, std::vector<WordExpr> children, int index, long exponent);
  std::shared_ptr<const Node> node_;
};

/// Parses `word := atom | word "*" word | word "^" INT | "[" word "," word "]" | "(" word ")" | "1"`.
/// Atoms are generator names of `alphabet`. Errors carry the column.
WordExpr parse_word_expr(std::string_view text, const Alphabet& alphabet);
inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
  return parse_word_expr(text, alphabet).value();
}

}  // namespace dimsub
