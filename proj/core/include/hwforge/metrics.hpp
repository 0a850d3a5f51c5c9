// Copyright 2026 The hwforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Recognition and annotation metrics: optimal-string-alignment
// Damerau-Levenshtein distance, CER/WER over NFC codepoints and whitespace
// tokens, Cohen's kappa, and transcript character-class frequencies.

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hwforge::metrics {

// Optimal string alignment distance: insertions, deletions, substitutions
// and transpositions of adjacent symbols, no substring edited twice.
template <typename T>
std::size_t damerau_levenshtein(std::span<const T> a, std::span<const T> b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  // Three rolling rows: i-2, i-1, i.
  std::vector<std::size_t> two_back(m + 1), prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      std::size_t best = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        best = std::min(best, two_back[j - 2] + 1);
      }
      cur[j] = best;
    }
    std::swap(two_back, prev);
    std::swap(prev, cur);
  }
  return prev[m];
}

inline std::size_t damerau_levenshtein(std::u32string_view a, std::u32string_view b) {
  return damerau_levenshtein<char32_t>(std::span(a.data(), a.size()),
                                       std::span(b.data(), b.size()));
}

inline std::size_t damerau_levenshtein(std::span<const std::string> a,
                                       std::span<const std::string> b) {
  return damerau_levenshtein<std::string>(a, b);
}

struct EvalPair {
  std::string id;
  std::string reference;
  std::string hypothesis;
};

struct ScoreReport {
  double cer = 0.0;
  double wer = 0.0;
  std::size_t char_edits = 0;
  std::size_t char_total = 0;
  std::size_t word_edits = 0;
  std::size_t word_total = 0;
  std::size_t pair_count = 0;
};

// Edit counts for one pair; both texts are NFC-normalized first. Throws
// ValueError when the reference is empty or has no tokens.
struct PairCounts {
  std::size_t char_edits = 0;
  std::size_t char_total = 0;
  std::size_t word_edits = 0;
  std::size_t word_total = 0;
};
PairCounts count_edits(const EvalPair& pair);

double cer(const EvalPair& pair);
double wer(const EvalPair& pair);

// Micro-averaged: total edits over total reference units. Per-pair errors
// are rethrown with the pair id.
ScoreReport corpus_score(std::span<const EvalPair> pairs);

std::string to_json(const ScoreReport& report);

// (p_o - p_e) / (1 - p_e). When p_e == 1 and p_o == 1 the result is 1.
// Throws ValueError on length mismatch or empty input.
double cohen_kappa(std::span<const std::string> a, std::span<const std::string> b);

enum class CharClass { numeric, alphabetic, all };

// Frequencies over non-whitespace codepoints of NFC transcripts. Numeric
// covers Unicode decimal digits, plus the letters of a whitespace token
// that as a whole spells an uppercase Roman numeral (I, V, X, L, C, D, M).
// Alphabetic covers the remaining alphabetic codepoints.
struct CharFrequency {
  std::size_t total = 0;
  std::size_t numeric_count = 0;
  std::size_t alphabetic_count = 0;
  std::map<std::string, std::size_t> symbol_counts;

  double frequency(CharClass c) const;
  double symbol_frequency(std::string_view symbol) const;
};

// Throws ValueError when the corpus holds no non-whitespace codepoint.
CharFrequency char_frequency(std::span<const std::string> transcripts);

inline double class_frequency(std::span<const std::string> transcripts, CharClass c) {
  return char_frequency(transcripts).frequency(c);
}

bool is_roman_numeral(std::u32string_view token);

std::string to_json(const CharFrequency& freq);

}  // namespace hwforge::metrics
