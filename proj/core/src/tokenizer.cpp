// Copyright 2026 The dtrprof Authors.
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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dtrprof/corpus.hpp"

namespace dtrprof {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at pos and advances pos. Invalid or
// truncated sequences yield U+FFFD and consume a single byte.
char32_t decode(std::string_view s, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len;
  char32_t cp;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    ++pos;
    return kReplacement;
  }
  if (pos + len > s.size()) {
    ++pos;
    return kReplacement;
  }
  for (int i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kReplacement;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kReplacement;
  }
  pos += len;
  return cp;
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

bool is_space(char32_t cp) {
  return cp == ' ' || in(cp, 0x09, 0x0D) || cp == 0x85 || cp == 0xA0 || cp == 0x1680 ||
         in(cp, 0x2000, 0x200A) || cp == 0x2028 || cp == 0x2029 || cp == 0x202F ||
         cp == 0x205F || cp == 0x3000;
}

// Format characters that carry no visible content outside emoji sequences.
bool is_ignorable(char32_t cp) {
  return in(cp, 0x200B, 0x200D) || cp == 0xFEFF || cp == 0xFE0E || cp == 0xFE0F ||
         cp == 0x20E3 || in(cp, 0x0000, 0x0008) || in(cp, 0x000E, 0x001F) || cp == 0x7F;
}

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }

bool is_letter_or_digit(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  }
  if (in(cp, 0x00C0, 0x024F)) return cp != 0xD7 && cp != 0xF7;
  return in(cp, 0x00AA, 0x00AA) || in(cp, 0x00B5, 0x00B5) || in(cp, 0x00BA, 0x00BA) ||
         in(cp, 0x0250, 0x02AF) ||                                  // IPA
         in(cp, 0x0300, 0x036F) ||                                  // combining marks
         (in(cp, 0x0370, 0x03FF) && cp != 0x037E && cp != 0x0387) || // Greek
         in(cp, 0x0400, 0x052F) ||                                  // Cyrillic
         in(cp, 0x0531, 0x0587) ||                                  // Armenian
         in(cp, 0x05D0, 0x05EA) ||                                  // Hebrew
         in(cp, 0x0620, 0x064A) || in(cp, 0x0660, 0x0669) ||        // Arabic
         in(cp, 0x0671, 0x06D3) || in(cp, 0x06F0, 0x06F9) ||
         in(cp, 0x0900, 0x0DFF) ||                                  // Indic
         in(cp, 0x0E01, 0x0E3A) || in(cp, 0x0E40, 0x0E4E) ||        // Thai
         in(cp, 0x0E50, 0x0E59) || in(cp, 0x1E00, 0x1EFF) ||        // Latin additional
         in(cp, 0x3041, 0x309F) || in(cp, 0x30A1, 0x30FF) ||        // kana
         in(cp, 0x3400, 0x4DBF) || in(cp, 0x4E00, 0x9FFF) ||        // CJK
         in(cp, 0xAC00, 0xD7AF) ||                                  // Hangul
         in(cp, 0xFF10, 0xFF19) || in(cp, 0xFF21, 0xFF3A) || in(cp, 0xFF41, 0xFF5A);
}

bool is_emoji(char32_t cp) {
  return in(cp, 0x1F000, 0x1FAFF) || in(cp, 0x2600, 0x27BF) || in(cp, 0x2B00, 0x2BFF) ||
         in(cp, 0x2300, 0x23FF) || cp == 0x00A9 || cp == 0x00AE || cp == 0x203C ||
         cp == 0x2049 || cp == 0x2122 || cp == 0x2139 || in(cp, 0x2194, 0x21AA) ||
         cp == 0x3030 || cp == 0x303D || cp == 0x3297 || cp == 0x3299;
}

bool is_regional_indicator(char32_t cp) { return in(cp, 0x1F1E6, 0x1F1FF); }

bool is_emoji_modifier(char32_t cp) {
  return in(cp, 0x1F3FB, 0x1F3FF) || cp == 0xFE0E || cp == 0xFE0F || cp == 0x20E3 ||
         in(cp, 0xE0020, 0xE007F);  // tag sequences
}

char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 0x20 : cp;
  if (in(cp, 0x00C0, 0x00DE) && cp != 0xD7) return cp + 0x20;
  if (in(cp, 0x0100, 0x0137) || in(cp, 0x014A, 0x0177)) return (cp % 2 == 0) ? cp + 1 : cp;
  if (in(cp, 0x0139, 0x0148) || in(cp, 0x0179, 0x017E)) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp == 0x0178) return 0x00FF;
  if (in(cp, 0x0391, 0x03A9) && cp != 0x03A2) return cp + 0x20;
  if (cp == 0x0386) return 0x03AC;
  if (in(cp, 0x0388, 0x038A)) return cp + 0x25;
  if (cp == 0x038C) return 0x03CC;
  if (cp == 0x038E || cp == 0x038F) return cp + 0x3F;
  if (in(cp, 0x0410, 0x042F)) return cp + 0x20;
  if (in(cp, 0x0400, 0x040F)) return cp + 0x50;
  if (in(cp, 0x0460, 0x0481) || in(cp, 0x048A, 0x04BF)) return (cp % 2 == 0) ? cp + 1 : cp;
  if (in(cp, 0x1E00, 0x1E95) || in(cp, 0x1EA0, 0x1EFF)) return (cp % 2 == 0) ? cp + 1 : cp;
  if (in(cp, 0xFF21, 0xFF3A)) return cp + 0x20;
  return cp;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string word;
  auto flush_word = [&] {
    if (!word.empty()) {
      tokens.push_back(std::move(word));
      word.clear();
    }
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = decode(text, pos);
    if (is_letter_or_digit(cp) || is_apostrophe(cp)) {
      encode(is_apostrophe(cp) ? U'\'' : to_lower(cp), word);
      continue;
    }
    flush_word();
    if (is_space(cp) || is_ignorable(cp)) continue;

    std::string symbol;
    encode(cp, symbol);
    if (is_regional_indicator(cp)) {
      std::size_t next = pos;
      if (next < text.size() && is_regional_indicator(decode(text, next))) {
        encode(decode(text, pos), symbol);
      }
    } else if (is_emoji(cp)) {
      // Absorb modifiers and ZWJ-joined continuations.
      while (pos < text.size()) {
        std::size_t next = pos;
        const char32_t follow = decode(text, next);
        if (is_emoji_modifier(follow)) {
          encode(follow, symbol);
          pos = next;
          continue;
        }
        if (follow == 0x200D && next < text.size()) {
          std::size_t after = next;
          const char32_t joined = decode(text, after);
          if (is_emoji(joined)) {
            encode(follow, symbol);
            encode(joined, symbol);
            pos = after;
            continue;
          }
        }
        break;
      }
    }
    tokens.push_back(std::move(symbol));
  }
  flush_word();
  return tokens;
}

bool is_word_token(std::string_view token) {
  std::size_t pos = 0;
  while (pos < token.size()) {
    if (is_letter_or_digit(decode(token, pos))) return true;
  }
  return false;
}

std::size_t utf8_length(std::string_view text) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    decode(text, pos);
    ++n;
  }
  return n;
}

}  // namespace dtrprof
