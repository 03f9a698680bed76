#pragma once

#include <random>
#include <utility>
#include <vector>

#include "fhl/twist.hpp"

namespace fhl::sampling {

// Every index word of the given length over {1..n}^2, in lexicographic order.
inline std::vector<std::vector<std::pair<int, int>>> all_index_words(int length, int n) {
  std::vector<std::vector<std::pair<int, int>>> words;
  std::vector<std::pair<int, int>> word(static_cast<size_t>(length), {1, 1});
  while (true) {
    words.push_back(word);
    int pos = length - 1;
    while (pos >= 0) {
      auto& [i, j] = word[static_cast<size_t>(pos)];
      if (j < n) {
        ++j;
        break;
      }
      j = 1;
      if (i < n) {
        ++i;
        break;
      }
      i = 1;
      --pos;
    }
    if (pos < 0) break;
  }
  return words;
}

// Every transport word with the given letter count, indices in {1..idx_max}.
inline std::vector<std::vector<twist::UWordLetter>> all_transport_words(int letters, int idx_max) {
  std::vector<std::vector<twist::UWordLetter>> words;
  std::vector<int> digits(static_cast<size_t>(4 * letters), 1);
  while (true) {
    std::vector<twist::UWordLetter> word;
    for (int t = 0; t < letters; ++t) {
      word.push_back({digits[static_cast<size_t>(4 * t)], digits[static_cast<size_t>(4 * t + 1)],
                      digits[static_cast<size_t>(4 * t + 2)], digits[static_cast<size_t>(4 * t + 3)]});
    }
    words.push_back(std::move(word));
    int pos = 4 * letters - 1;
    while (pos >= 0 && digits[static_cast<size_t>(pos)] == idx_max) {
      digits[static_cast<size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++digits[static_cast<size_t>(pos)];
  }
  return words;
}

// Seeded random index words over {1..n}^2; the raw engine stream is used
// directly so samples are identical across standard libraries.
inline std::vector<std::vector<std::pair<int, int>>> sample_index_words(int count, int length,
                                                                        int n,
                                                                        unsigned long long seed) {
  std::mt19937_64 gen(seed);
  const auto draw = [&]() { return static_cast<int>(gen() % static_cast<unsigned>(n)) + 1; };
  std::vector<std::vector<std::pair<int, int>>> words;
  words.reserve(static_cast<size_t>(count));
  for (int w = 0; w < count; ++w) {
    std::vector<std::pair<int, int>> word;
    word.reserve(static_cast<size_t>(length));
    for (int t = 0; t < length; ++t) {
      const int i = draw();
      const int j = draw();
      word.emplace_back(i, j);
    }
    words.push_back(std::move(word));
  }
  return words;
}

// Seeded random transport words, letters of the form (i,j,k,l) in {1..n}^4.
inline std::vector<std::vector<twist::UWordLetter>> sample_transport_words(int count, int letters,
                                                                           int n,
                                                                           unsigned long long seed) {
  std::mt19937_64 gen(seed);
  const auto draw = [&]() { return static_cast<int>(gen() % static_cast<unsigned>(n)) + 1; };
  std::vector<std::vector<twist::UWordLetter>> words;
  words.reserve(static_cast<size_t>(count));
  for (int w = 0; w < count; ++w) {
    std::vector<twist::UWordLetter> word;
    word.reserve(static_cast<size_t>(letters));
    for (int t = 0; t < letters; ++t) {
      const int i = draw();
      const int j = draw();
      const int k = draw();
      const int l = draw();
      word.push_back({i, j, k, l});
    }
    words.push_back(std::move(word));
  }
  return words;
}

}  // namespace fhl::sampling
