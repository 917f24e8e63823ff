// SPDX-License-Identifier: Apache-2.0
#include "newscause/tokenize.hpp"

#include <cstdint>

namespace newscause {

namespace {

// Decodes one UTF-8 code point starting at i; advances i. Invalid bytes
// decode as U+FFFD and advance by one so tokenization never stalls.
std::uint32_t decode_utf8(std::string_view s, size_t& i) {
  unsigned char b0 = s[i];
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  std::uint32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    unsigned char b = s[i + k];
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_digit_cp(std::uint32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_letter_cp(std::uint32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  if (cp < 0x100)  // Latin-1 letters, excluding the multiply/divide signs
    return cp >= 0xC0 && cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
  if (cp == 0xFFFD || cp == 0xAB || cp == 0xBB) return false;
  return true;  // other non-ASCII code points count as letters
}

bool is_apostrophe(std::uint32_t cp) { return cp == '\'' || cp == 0x2019; }
bool is_hyphen(std::uint32_t cp) { return cp == '-' || cp == 0x2010; }

std::uint32_t lower_cp(std::uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  return cp;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  // decode once, classify per code point
  struct Cp {
    std::uint32_t value;
    enum { letter, digit, apostrophe, hyphen, other } cls;
  };
  std::vector<Cp> cps;
  cps.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    std::uint32_t cp = decode_utf8(text, i);
    Cp c{cp, Cp::other};
    if (is_digit_cp(cp)) c.cls = Cp::digit;
    else if (is_letter_cp(cp)) c.cls = Cp::letter;
    else if (is_apostrophe(cp)) c.cls = Cp::apostrophe;
    else if (is_hyphen(cp)) c.cls = Cp::hyphen;
    cps.push_back(c);
  }

  std::vector<Token> tokens;
  std::string surface;
  size_t n = cps.size();
  size_t pos = 0;
  auto flush = [&](size_t len, TokenKind kind) {
    if (len >= 2) tokens.push_back({surface, kind});
    surface.clear();
  };
  while (pos < n) {
    if (cps[pos].cls == Cp::digit) {
      size_t len = 0;
      while (pos < n && cps[pos].cls == Cp::digit) {
        append_utf8(surface, cps[pos].value);
        ++len;
        ++pos;
      }
      flush(len, TokenKind::number);
    } else if (cps[pos].cls == Cp::letter) {
      size_t len = 0;
      while (pos < n) {
        if (cps[pos].cls == Cp::letter) {
          append_utf8(surface, lower_cp(cps[pos].value));
          ++len;
          ++pos;
        } else if ((cps[pos].cls == Cp::apostrophe || cps[pos].cls == Cp::hyphen) &&
                   pos + 1 < n && cps[pos + 1].cls == Cp::letter) {
          // joiner only between letters
          append_utf8(surface, cps[pos].cls == Cp::apostrophe ? '\'' : '-');
          ++len;
          ++pos;
        } else {
          break;
        }
      }
      flush(len, TokenKind::word);
    } else {
      ++pos;
    }
  }
  return tokens;
}

std::vector<std::string> token_surfaces(std::string_view text) {
  std::vector<std::string> out;
  for (Token& t : tokenize(text)) out.push_back(std::move(t.surface));
  return out;
}

}  // namespace newscause
