#pragma once

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "slco/diagnostic.hpp"

namespace slco {

enum class TokenKind { identifier, keyword, integer, string, symbol, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;  // unescaped contents for strings
  Location loc;
};

inline constexpr std::array<std::string_view, 33> keywords = {
    "model",   "classes",  "objects", "channels",    "variables", "ports", "state",
    "machines", "initial", "final",   "transitions", "from",      "to",    "trigger",
    "guard",   "effect",   "receive", "send",        "after",     "ms",    "sync",
    "async",   "lossless", "lossy",   "between",     "and",       "or",    "not",
    "true",    "false",    "Integer", "Boolean",     "String"};

inline bool is_keyword(std::string_view word) {
  for (auto k : keywords)
    if (k == word) return true;
  return false;
}

struct LexError {
  Location loc;
  std::string message;
};

/// Splits SLCO text into tokens. `//` starts a comment running to end of line.
/// Throws LexError on malformed input.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Location start{line_, col_};
      if (pos_ >= text_.size()) {
        out.push_back({TokenKind::end, "", start});
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          word += advance();
        out.push_back({is_keyword(word) ? TokenKind::keyword : TokenKind::identifier, word, start});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          digits += advance();
        out.push_back({TokenKind::integer, digits, start});
      } else if (c == '"') {
        out.push_back({TokenKind::string, read_string(start), start});
      } else {
        out.push_back({TokenKind::symbol, read_symbol(start), start});
      }
    }
  }

 private:
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string read_string(Location start) {
    advance();
    std::string s;
    for (;;) {
      if (pos_ >= text_.size() || text_[pos_] == '\n')
        throw LexError{start, "unterminated string literal"};
      char c = advance();
      if (c == '"') return s;
      if (c == '\\') {
        if (pos_ >= text_.size()) throw LexError{start, "unterminated string literal"};
        Location esc{line_, col_};
        char e = advance();
        switch (e) {
          case '"': s += '"'; break;
          case '\\': s += '\\'; break;
          case 'n': s += '\n'; break;
          case 't': s += '\t'; break;
          default: throw LexError{esc, std::string("unknown escape '\\") + e + "'"};
        }
      } else {
        s += c;
      }
    }
  }

  std::string read_symbol(Location start) {
    static constexpr std::array<std::string_view, 5> two = {":=", "<=", ">=", "==", "!="};
    if (pos_ + 1 < text_.size()) {
      std::string_view pair = text_.substr(pos_, 2);
      for (auto t : two)
        if (pair == t) {
          advance();
          advance();
          return std::string(t);
        }
    }
    char c = text_[pos_];
    if (std::string_view("{}(),:.+-*<>=").find(c) != std::string_view::npos) {
      advance();
      return std::string(1, c);
    }
    throw LexError{start, std::string("unexpected character '") + c + "'"};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace slco
