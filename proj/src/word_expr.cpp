#include "dimsub/word_expr.hpp"

#include <cctype>

namespace dimsub {

WordExpr::WordExpr(Kind kind, std::vector<WordExpr> children, int index, long exponent) {
  Node n{kind, {}, index, exponent, std::move(children)};
  switch (kind) {
    case Kind::Identity: break;
    case Kind::Generator: n.value = Word::generator(index); break;
    case Kind::Product: n.value = n.children[0].value() * n.children[1].value(); break;
    case Kind::Power: n.value = n.children[0].value().pow(exponent); break;
    case Kind::Commutator: n.value = dimsub::commutator(n.children[0].value(), n.children[1].value()); break;
  }
  node_ = std::make_shared<const Node>(std::move(n));
}

WordExpr WordExpr::generator(int index) { return WordExpr(Kind::Generator, {}, index, 0); }

WordExpr WordExpr::leaf(const Word& w) {
  const auto& ls = w.letters();
  if (ls.empty()) return identity();
  WordExpr acc;
  bool first = true;
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long run = static_cast<long>(j - i) * letter_exponent(ls[i]);
    WordExpr g = generator(letter_index(ls[i]));
    WordExpr piece = run == 1 ? g : power(g, run);
    acc = first ? piece : product(acc, piece);
    first = false;
    i = j;
  }
  return acc;
}

WordExpr WordExpr::product(const WordExpr& a, const WordExpr& b) { return WordExpr(Kind::Product, {a, b}, -1, 0); }
WordExpr WordExpr::power(const WordExpr& a, long exponent) { return WordExpr(Kind::Power, {a}, -1, exponent); }
WordExpr WordExpr::commutator(const WordExpr& a, const WordExpr& b) {
  return WordExpr(Kind::Commutator, {a, b}, -1, 0);
}
WordExpr WordExpr::conjugate(const WordExpr& a, const WordExpr& b) {
  return product(product(inverse(b), a), b);
}

bool operator==(const WordExpr& a, const WordExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.generator_index() != b.generator_index() || a.exponent() != b.exponent())
    return false;
  return a.children() == b.children();
}

namespace {

std::string format_impl(const WordExpr& e, const Alphabet& al, bool in_product) {
  switch (e.kind()) {
    case WordExpr::Kind::Identity: return "1";
    case WordExpr::Kind::Generator: return al.name(e.generator_index());
    case WordExpr::Kind::Commutator:
      return "[" + format_impl(e.children()[0], al, false) + "," + format_impl(e.children()[1], al, false) + "]";
    case WordExpr::Kind::Power: {
      const auto& c = e.children()[0];
      std::string base = format_impl(c, al, false);
      if (c.kind() == WordExpr::Kind::Product || c.kind() == WordExpr::Kind::Power) base = "(" + base + ")";
      return base + "^" + std::to_string(e.exponent());
    }
    case WordExpr::Kind::Product: {
      // Products are left-associative; a product on the right needs parentheses.
      std::string lhs = format_impl(e.children()[0], al, true);
      std::string rhs = format_impl(e.children()[1], al, false);
      if (e.children()[1].kind() == WordExpr::Kind::Product) rhs = "(" + rhs + ")";
      (void)in_product;
      return lhs + "*" + rhs;
    }
  }
  return {};
}

class WordParser {
 public:
  WordParser(std::string_view text, const Alphabet& al) : text_(text), al_(al) {}

  WordExpr parse() {
    WordExpr e = product();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("word literal, column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  WordExpr product() {
    WordExpr acc = postfix();
    while (accept('*')) acc = WordExpr::product(acc, postfix());
    return acc;
  }

  WordExpr postfix() {
    WordExpr base = primary();
    while (accept('^')) base = WordExpr::power(base, integer());
    return base;
  }

  long integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view digits = text_.substr(start, pos_ - start);
    if (digits.empty() || digits == "-" || digits == "+") fail("expected integer exponent");
    return std::stol(std::string(digits));
  }

  WordExpr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      WordExpr e = product();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++pos_;
      WordExpr acc = product();
      expect(',');
      acc = WordExpr::commutator(acc, product());
      while (accept(',')) acc = WordExpr::commutator(acc, product());
      expect(']');
      return acc;
    }
    if (c == '1' && (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return WordExpr::identity();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      int idx = al_.index_of(name);
      if (idx < 0) {
        pos_ = start;
        fail("unknown generator '" + name + "'");
      }
      return WordExpr::generator(idx);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Alphabet& al_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string WordExpr::format(const Alphabet& alphabet) const { return format_impl(*this, alphabet, false); }

WordExpr parse_word_expr(std::string_view text, const Alphabet& alphabet) {
  return WordParser(text, alphabet).parse();
}

}  // namespace dimsub
