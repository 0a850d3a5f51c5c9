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

#include "hwforge/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "hwforge/error.hpp"

namespace hwforge::text {

std::u32string decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      throw ValueError("invalid UTF-8 at byte " + std::to_string(at));
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string encode(std::u32string_view codepoints) {
  std::string out;
  out.reserve(codepoints.size());
  for (char32_t c : codepoints) out += encode(c);
  return out;
}

std::string encode(char32_t codepoint) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(codepoint), error);
  if (error) {
    throw ValueError("codepoint out of range: " + std::to_string(codepoint));
  }
  return std::string(reinterpret_cast<const char*>(buf), static_cast<size_t>(n));
}

std::string nfc(std::string_view utf8) {
  (void)decode(utf8);  // validates
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(std::string("ICU NFC normalizer unavailable: ") + u_errorName(status));
  }
  const auto source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  if (normalizer->isNormalized(source, status) && U_SUCCESS(status)) {
    return std::string(utf8);
  }
  status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = normalizer->normalize(source, status);
  if (U_FAILURE(status)) {
    throw ValueError(std::string("NFC normalization failed: ") + u_errorName(status));
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

bool is_whitespace(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool is_decimal_digit(char32_t c) {
  return u_charType(static_cast<UChar32>(c)) == U_DECIMAL_DIGIT_NUMBER;
}

bool is_alphabetic(char32_t c) { return u_isUAlphabetic(static_cast<UChar32>(c)); }

bool is_blank(std::string_view utf8) {
  for (char32_t c : decode(utf8)) {
    if (!is_whitespace(c)) return false;
  }
  return true;
}

std::vector<std::string> split_whitespace(std::string_view utf8) {
  std::vector<std::string> tokens;
  std::u32string current;
  for (char32_t c : decode(utf8)) {
    if (is_whitespace(c)) {
      if (!current.empty()) {
        tokens.push_back(encode(current));
        current.clear();
      }
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(encode(current));
  return tokens;
}

}  // namespace hwforge::text
