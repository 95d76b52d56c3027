#include "dimsub/ideal_expr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace dimsub {

std::string IdealAtom::format() const {
  switch (kind) {
    case Kind::Whole: return "f";
    case Kind::Subgroup: return name;
    case Kind::Derived: return name + "'";
    case Kind::Gamma: return "gamma" + std::to_string(weight) + "(" + name + ")";
  }
  return {};
}

IdealExpr IdealExpr::atom(IdealAtom a) {
  return IdealExpr(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}, 1}));
}

IdealExpr IdealExpr::product(std::vector<IdealExpr> factors) {
  if (factors.empty()) throw Error("empty ideal product");
  if (factors.size() == 1) return factors[0];
  return IdealExpr(std::make_shared<const Node>(Node{Kind::Product, {}, std::move(factors), 1}));
}

IdealExpr IdealExpr::sum(std::vector<IdealExpr> terms) {
  if (terms.empty()) throw Error("empty ideal sum");
  if (terms.size() == 1) return terms[0];
  return IdealExpr(std::make_shared<const Node>(Node{Kind::Sum, {}, std::move(terms), 1}));
}

IdealExpr IdealExpr::power(IdealExpr base, int k) {
  if (k < 1) throw Error("ideal power must be positive");
  if (k == 1) return base;
  return IdealExpr(std::make_shared<const Node>(Node{Kind::Power, {}, {std::move(base)}, k}));
}

IdealExpr IdealExpr::from_monomials(const std::vector<IdealMonomial>& ms) {
  std::vector<IdealExpr> terms;
  for (const auto& m : ms) {
    std::vector<IdealExpr> fs;
    for (const auto& a : m) fs.push_back(atom(a));
    terms.push_back(product(std::move(fs)));
  }
  return sum(std::move(terms));
}

std::vector<IdealMonomial> IdealExpr::monomials() const {
  switch (kind()) {
    case Kind::Atom: return {{atom_value()}};
    case Kind::Sum: {
      std::vector<IdealMonomial> out;
      for (const auto& c : children()) {
        auto m = c.monomials();
        out.insert(out.end(), m.begin(), m.end());
      }
      return out;
    }
    case Kind::Product:
    case Kind::Power: {
      std::vector<IdealMonomial> acc{{}};
      int reps = kind() == Kind::Power ? exponent() : 1;
      for (int r = 0; r < reps; ++r)
        for (const auto& c : children()) {
          std::vector<IdealMonomial> next;
          for (const auto& left : acc)
            for (const auto& right : c.monomials()) {
              IdealMonomial m = left;
              m.insert(m.end(), right.begin(), right.end());
              next.push_back(std::move(m));
            }
          acc = std::move(next);
        }
      return acc;
    }
  }
  return {};
}

IdealExpr IdealExpr::reversed() const {
  switch (kind()) {
    case Kind::Atom: return *this;
    case Kind::Power: return power(children()[0].reversed(), exponent());
    case Kind::Sum: {
      std::vector<IdealExpr> cs;
      for (const auto& c : children()) cs.push_back(c.reversed());
      return sum(std::move(cs));
    }
    case Kind::Product: {
      std::vector<IdealExpr> cs;
      for (auto it = children().rbegin(); it != children().rend(); ++it) cs.push_back(it->reversed());
      return product(std::move(cs));
    }
  }
  return *this;
}

std::string IdealExpr::format() const {
  switch (kind()) {
    case Kind::Atom: return atom_value().format();
    case Kind::Power: {
      const auto& b = children()[0];
      if (b.kind() != Kind::Atom) throw Error("only atoms can be raised to a power in the ideal grammar");
      return b.format() + "^" + std::to_string(exponent());
    }
    case Kind::Product: {
      std::string out;
      for (const auto& c : children()) {
        if (c.kind() == Kind::Sum) throw Error("sum inside a product cannot be printed in the ideal grammar");
        if (!out.empty()) out += " ";
        out += c.format();
      }
      return out;
    }
    case Kind::Sum: {
      std::string out;
      for (const auto& c : children()) {
        if (!out.empty()) out += " + ";
        out += c.format();
      }
      return out;
    }
  }
  return {};
}

bool operator==(const IdealExpr& a, const IdealExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.exponent() != b.exponent()) return false;
  if (a.kind() == IdealExpr::Kind::Atom) return a.atom_value() == b.atom_value();
  return a.children() == b.children();
}

const SubgroupHandle& GroupContext::subgroup(const std::string& name) const {
  auto it = subgroups.find(name);
  if (it == subgroups.end()) throw Error("unresolved subgroup name '" + name + "'");
  return it->second;
}

bool GroupContext::atom_contains(const IdealAtom& a, const Word& w) const {
  switch (a.kind) {
    case IdealAtom::Kind::Whole: return true;
    case IdealAtom::Kind::Subgroup: return subgroup(a.name).contains(w);
    default: throw Error("oracle membership is not available for atom " + a.format());
  }
}

void GroupContext::check_resolves(const IdealExpr& e) const {
  for (const auto& m : e.monomials())
    for (const auto& a : m)
      if (a.kind != IdealAtom::Kind::Whole) (void)subgroup(a.name);
}

namespace {

class IdealParser {
 public:
  IdealParser(std::string_view text, const std::vector<std::string>& names) : text_(text), names_(names) {}

  IdealExpr parse() {
    std::vector<IdealExpr> terms{term()};
    while (accept('+')) terms.push_back(term());
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return IdealExpr::sum(std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("ideal expression, column " + std::to_string(pos_ + 1) + ": " + msg);
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
  bool at_atom_start() {
    skip_ws();
    return pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_');
  }
  int integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }
  bool is_name(std::string_view n) const {
    return std::find(names_.begin(), names_.end(), n) != names_.end();
  }

  /// Splits an identifier into declared names (or "f"), longest prefix first.
  bool split(std::string_view id, std::vector<std::string>& out) const {
    if (id.empty()) return true;
    for (std::size_t len = id.size(); len > 0; --len) {
      std::string_view head = id.substr(0, len);
      if (is_name(head) || head == "f" || head == "F") {
        out.emplace_back(head);
        if (split(id.substr(len), out)) return true;
        out.pop_back();
      }
    }
    return false;
  }

  IdealExpr term() {
    std::vector<IdealExpr> factors;
    if (!at_atom_start()) fail("expected an ideal atom");
    while (at_atom_start()) {
      auto atoms = atom_group();
      factors.insert(factors.end(), atoms.begin(), atoms.end());
    }
    return IdealExpr::product(std::move(factors));
  }

  static IdealExpr make_atom(const std::string& n) {
    if (n == "f" || n == "F") return IdealExpr::atom(IdealAtom::whole());
    return IdealExpr::atom(IdealAtom::subgroup(n));
  }

  std::vector<IdealExpr> atom_group() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string id(text_.substr(start, pos_ - start));
    std::vector<IdealExpr> out;

    if (id.rfind("gamma", 0) == 0 && !is_name(id)) {
      std::string digits = id.substr(5);
      int k;
      if (digits.empty()) {
        k = integer();
      } else {
        if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          fail("malformed gamma atom '" + id + "'");
        k = std::stoi(digits);
      }
      if (k < 2) fail("gamma weight must be at least 2");
      if (!accept('(')) fail("expected '(' after gamma");
      skip_ws();
      std::size_t ns = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(ns, pos_ - ns));
      if (!is_name(name)) fail("unresolved subgroup name '" + name + "'");
      if (!accept(')')) fail("expected ')'");
      out.push_back(IdealExpr::atom(IdealAtom::gamma(k, name)));
    } else {
      std::vector<std::string> parts;
      if (is_name(id) || id == "f" || id == "F")
        parts.push_back(id);
      else if (!split(id, parts)) {
        pos_ = start;
        fail("unresolved ideal name '" + id + "'");
      }
      for (const auto& p : parts) out.push_back(make_atom(p));
    }
    // Postfix ' and ^k bind to the last atom of the group.
    while (true) {
      if (pos_ < text_.size() && text_[pos_] == '\'') {
        ++pos_;
        const auto& last = out.back();
        if (last.kind() != IdealExpr::Kind::Atom || last.atom_value().kind != IdealAtom::Kind::Subgroup)
          fail("derived marker applies to a subgroup name");
        out.back() = IdealExpr::atom(IdealAtom::derived(last.atom_value().name));
      } else if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        int k = integer();
        if (k < 1) fail("exponent must be positive");
        out.back() = IdealExpr::power(out.back(), k);
      } else {
        break;
      }
    }
    return out;
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

IdealExpr parse_ideal_expr(std::string_view text, const std::vector<std::string>& names) {
  for (const auto& n : names)
    if (n == "f" || n == "F") throw Error("subgroup name 'f' is reserved for the whole group");
  return IdealParser(text, names).parse();
}

}  // namespace dimsub
