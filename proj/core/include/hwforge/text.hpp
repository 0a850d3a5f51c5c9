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

// Unicode helpers backed by ICU. All text entering the library is UTF-8;
// transcripts are compared as NFC codepoint sequences.

#include <string>
#include <string_view>
#include <vector>

namespace hwforge::text {

// Returns the NFC form of `utf8`. Throws ValueError on invalid UTF-8.
std::string nfc(std::string_view utf8);

// Decodes UTF-8 into codepoints without normalizing.
std::u32string decode(std::string_view utf8);

std::string encode(std::u32string_view codepoints);
std::string encode(char32_t codepoint);

// NFC followed by decode; the unit that CER counts.
inline std::u32string nfc_codepoints(std::string_view utf8) {
  return decode(nfc(utf8));
}

bool is_whitespace(char32_t c);
bool is_decimal_digit(char32_t c);
bool is_alphabetic(char32_t c);

// True when the text is empty or contains only Unicode whitespace.
bool is_blank(std::string_view utf8);

// Splits on runs of Unicode whitespace. Punctuation stays attached.
std::vector<std::string> split_whitespace(std::string_view utf8);

}  // namespace hwforge::text
