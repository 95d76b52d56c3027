#include "dimsub/word.hpp"

#include <algorithm>
#include <set>

namespace dimsub {

Word Word::reduce(std::span<const Letter> raw, int rank) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) throw Error("letter 0 is not a generator");
    if (rank >= 0 && letter_index(l) >= rank)
      throw Error("generator index " + std::to_string(letter_index(l)) + " out of range for rank " +
                  std::to_string(rank));
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = -l;
  return Word(std::move(out));
}

Word Word::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  Word result;
  for (long i = 0; i < n; ++i) result = result * *this;
  return result;
}

int Word::max_index() const {
  int m = -1;
  for (Letter l : letters_) m = std::max(m, letter_index(l));
  return m;
}

Word operator*(const Word& a, const Word& b) {
  const auto& x = a.letters_;
  const auto& y = b.letters_;
  std::size_t cancel = 0;
  while (cancel < x.size() && cancel < y.size() && x[x.size() - 1 - cancel] == -y[cancel]) ++cancel;
  std::vector<Letter> out;
  out.reserve(x.size() + y.size() - 2 * cancel);
  out.insert(out.end(), x.begin(), x.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(cancel), y.end());
  return Word(std::move(out));
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() <=> b.length();
  for (std::size_t i = 0; i < a.length(); ++i) {
    int ra = letter_rank(a.letters_[i]);
    int rb = letter_rank(b.letters_[i]);
    if (ra != rb) return ra <=> rb;
  }
  return std::strong_ordering::equal;
}

Word commutator(const Word& a, const Word& b) { return a.inverse() * b.inverse() * a * b; }

Word commutator(std::span<const Word> ws) {
  if (ws.empty()) return {};
  Word acc = ws[0];
  for (std::size_t i = 1; i < ws.size(); ++i) acc = commutator(acc, ws[i]);
  return acc;
}

Word conjugate(const Word& a, const Word& g) { return g.inverse() * a * g; }

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw Error("duplicate generator name '" + n + "'");
}

Alphabet Alphabet::standard(int rank) {
  std::vector<std::string> names;
  for (int i = 1; i <= rank; ++i) names.push_back("x" + std::to_string(i));
  return Alphabet(std::move(names));
}

int Alphabet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long run = static_cast<long>(j - i) * letter_exponent(ls[i]);
    if (!out.empty()) out += '*';
    int idx = letter_index(ls[i]);
    out += idx < rank() ? name(idx) : "g" + std::to_string(idx + 1);
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

std::vector<Word> ball(std::span<const Word> gens, int radius, std::size_t cap) {
  std::vector<Word> steps;
  for (const auto& g : gens) {
    if (g.empty()) continue;
    steps.push_back(g);
    steps.push_back(g.inverse());
  }
  std::set<Word> seen{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int r = 0; r < radius; ++r) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& s : steps) {
        Word p = w * s;
        if (seen.insert(p).second) {
          next.push_back(std::move(p));
          if (seen.size() > cap) throw CapExceeded("ball exceeds cardinality cap");
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<Word> free_ball(int rank, int radius, std::size_t cap) {
  std::vector<Word> gens;
  for (int i = 0; i < rank; ++i) gens.push_back(Word::generator(i));
  return ball(gens, radius, cap);
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter l : w.letters()) h = (h ^ static_cast<std::size_t>(l + 64)) * 1099511628211ull;
  return h;
}

}  // namespace dimsub
