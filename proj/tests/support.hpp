#pragma once

#include <random>
#include <vector>

#include "dimsub/ring.hpp"
#include "dimsub/word.hpp"

namespace testsupport {

using dimsub::Letter;
using dimsub::Word;

inline Word random_word(std::mt19937_64& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, rank - 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> raw;
  int n = len(rng);
  for (int i = 0; i < n; ++i) raw.push_back(dimsub::gen_letter(gen(rng), sign(rng) ? 1 : -1));
  return Word::reduce(raw);
}

inline dimsub::RingElement random_element(std::mt19937_64& rng, int rank, int support, int max_len) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  dimsub::RingElement a;
  for (int i = 0; i < support; ++i) a.add_term(random_word(rng, rank, max_len), coeff(rng));
  return a;
}

// Naive reduction by a stack, kept separate from the library implementation.
inline std::vector<Letter> naive_reduce(const std::vector<Letter>& raw) {
  std::vector<Letter> out;
  for (Letter l : raw) {
    if (!out.empty() && out.back() == -l) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

inline Word w(std::initializer_list<Letter> letters) { return Word::reduce(std::vector<Letter>(letters)); }

}  // namespace testsupport
