// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace newscause {

enum class TokenKind { word, number };

struct Token {
  std::string surface;  // lowercase
  TokenKind kind = TokenKind::word;

  bool operator==(const Token&) const = default;
};

/// Lowercases and splits UTF-8 text into word and number tokens.
/// Words are maximal letter runs, keeping apostrophes and hyphens only
/// between letters; numbers are maximal digit runs. Tokens shorter than
/// 2 code points are dropped.
std::vector<Token> tokenize(std::string_view text);

/// Token surfaces only, in order.
std::vector<std::string> token_surfaces(std::string_view text);

}  // namespace newscause
