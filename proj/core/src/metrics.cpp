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

#include "hwforge/metrics.hpp"

#include <regex>
#include <unordered_map>

#include "hwforge/error.hpp"
#include "hwforge/text.hpp"
#include "json.hpp"

namespace hwforge::metrics {

PairCounts count_edits(const EvalPair& pair) {
  const std::u32string ref = text::nfc_codepoints(pair.reference);
  const std::u32string hyp = text::nfc_codepoints(pair.hypothesis);
  if (ref.empty()) throw ValueError("pair \"" + pair.id + "\" has an empty reference");
  const auto ref_tokens = text::split_whitespace(text::nfc(pair.reference));
  const auto hyp_tokens = text::split_whitespace(text::nfc(pair.hypothesis));
  if (ref_tokens.empty()) throw ValueError("pair \"" + pair.id + "\" has no reference tokens");

  PairCounts counts;
  counts.char_edits = damerau_levenshtein(ref, hyp);
  counts.char_total = ref.size();
  counts.word_edits = damerau_levenshtein(std::span<const std::string>(ref_tokens),
                                          std::span<const std::string>(hyp_tokens));
  counts.word_total = ref_tokens.size();
  return counts;
}

double cer(const EvalPair& pair) {
  const std::u32string ref = text::nfc_codepoints(pair.reference);
  if (ref.empty()) throw ValueError("pair \"" + pair.id + "\" has an empty reference");
  return static_cast<double>(damerau_levenshtein(ref, text::nfc_codepoints(pair.hypothesis))) /
         static_cast<double>(ref.size());
}

double wer(const EvalPair& pair) {
  const auto ref = text::split_whitespace(text::nfc(pair.reference));
  if (ref.empty()) throw ValueError("pair \"" + pair.id + "\" has no reference tokens");
  const auto hyp = text::split_whitespace(text::nfc(pair.hypothesis));
  return static_cast<double>(damerau_levenshtein(std::span<const std::string>(ref),
                                                 std::span<const std::string>(hyp))) /
         static_cast<double>(ref.size());
}

ScoreReport corpus_score(std::span<const EvalPair> pairs) {
  if (pairs.empty()) throw ValueError("corpus score needs at least one pair");
  ScoreReport report;
  for (const auto& pair : pairs) {
    PairCounts c;
    try {
      c = count_edits(pair);
    } catch (const ValueError& e) {
      throw ValueError("pair \"" + pair.id + "\": " + e.what());
    }
    report.char_edits += c.char_edits;
    report.char_total += c.char_total;
    report.word_edits += c.word_edits;
    report.word_total += c.word_total;
    ++report.pair_count;
  }
  report.cer = static_cast<double>(report.char_edits) / static_cast<double>(report.char_total);
  report.wer = static_cast<double>(report.word_edits) / static_cast<double>(report.word_total);
  return report;
}

std::string to_json(const ScoreReport& report) {
  nlohmann::ordered_json out;
  out["cer"] = report.cer;
  out["wer"] = report.wer;
  out["char_edits"] = report.char_edits;
  out["char_total"] = report.char_total;
  out["word_edits"] = report.word_edits;
  out["word_total"] = report.word_total;
  out["pair_count"] = report.pair_count;
  return out.dump(2);
}

double cohen_kappa(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size()) {
    throw ValueError("kappa inputs differ in length: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
  if (a.empty()) throw ValueError("kappa needs at least one labeled item");

  std::unordered_map<std::string, std::size_t> count_a;
  std::unordered_map<std::string, std::size_t> count_b;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++count_a[a[i]];
    ++count_b[b[i]];
    agree += a[i] == b[i] ? 1 : 0;
  }
  // p_o = agree / n and p_e = chance / n^2, kept in integers.
  const auto n = static_cast<long double>(a.size());
  long double chance = 0.0L;
  for (const auto& [label, ca] : count_a) {
    if (const auto it = count_b.find(label); it != count_b.end()) {
      chance += static_cast<long double>(ca) * static_cast<long double>(it->second);
    }
  }
  const bool perfect = agree == a.size();
  if (chance == n * n) {
    if (perfect) return 1.0;
    throw ValueError("kappa undefined: chance agreement is 1 but observed agreement is not");
  }
  if (perfect) return 1.0;
  return static_cast<double>((agree * n - chance) / (n * n - chance));
}

bool is_roman_numeral(std::u32string_view token) {
  if (token.empty()) return false;
  std::string ascii;
  for (char32_t c : token) {
    switch (c) {
      case U'I': case U'V': case U'X': case U'L': case U'C': case U'D': case U'M':
        ascii += static_cast<char>(c);
        break;
      default:
        return false;
    }
  }
  static const std::regex pattern("M{0,3}(CM|CD|D?C{0,3})(XC|XL|L?X{0,3})(IX|IV|V?I{0,3})");
  return std::regex_match(ascii, pattern);
}

double CharFrequency::frequency(CharClass c) const {
  if (total == 0) return 0.0;
  switch (c) {
    case CharClass::numeric: return static_cast<double>(numeric_count) / total;
    case CharClass::alphabetic: return static_cast<double>(alphabetic_count) / total;
    case CharClass::all: return 1.0;
  }
  return 0.0;
}

double CharFrequency::symbol_frequency(std::string_view symbol) const {
  const auto it = symbol_counts.find(std::string(symbol));
  if (it == symbol_counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / total;
}

CharFrequency char_frequency(std::span<const std::string> transcripts) {
  CharFrequency freq;
  for (const auto& transcript : transcripts) {
    for (const auto& token : text::split_whitespace(text::nfc(transcript))) {
      const std::u32string cps = text::decode(token);
      const bool roman = is_roman_numeral(cps);
      for (char32_t c : cps) {
        ++freq.total;
        ++freq.symbol_counts[text::encode(c)];
        if (roman || text::is_decimal_digit(c)) {
          ++freq.numeric_count;
        } else if (text::is_alphabetic(c)) {
          ++freq.alphabetic_count;
        }
      }
    }
  }
  if (freq.total == 0) throw ValueError("character frequency over an empty corpus");
  return freq;
}

std::string to_json(const CharFrequency& freq) {
  nlohmann::ordered_json out;
  out["total"] = freq.total;
  out["numeric"] = freq.frequency(CharClass::numeric);
  out["alphabetic"] = freq.frequency(CharClass::alphabetic);
  out["all"] = freq.frequency(CharClass::all);
  out["numeric_count"] = freq.numeric_count;
  out["alphabetic_count"] = freq.alphabetic_count;
  nlohmann::ordered_json symbols = nlohmann::ordered_json::object();
  for (const auto& [symbol, count] : freq.symbol_counts) {
    symbols[symbol] = static_cast<double>(count) / freq.total;
  }
  out["symbols"] = std::move(symbols);
  return out.dump(2);
}

}  // namespace hwforge::metrics
