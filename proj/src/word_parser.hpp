// SPDX-License-Identifier: Apache-2.0
//
// Shared recursive-descent parser for the three word syntaxes (generator
// words, words with constants, HNN words). Each syntax supplies only its atom.

#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "thompson/error.hpp"

namespace thompson::detail {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("expected `") + c + "`");
  }
  std::size_t offset() const { return pos_; }
  std::string_view text() const { return text_; }
  void advance(std::size_t n) { pos_ += n; }

  bool digit_next() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  /// Digits immediately at the cursor (no leading space).
  unsigned long long unsigned_here() {
    if (!digit_next()) throw SyntaxError(pos_, "expected digits");
    unsigned long long v = 0;
    while (digit_next()) {
      if (v > 100000000000ULL) throw SyntaxError(pos_, "number too large");
      v = v * 10 + static_cast<unsigned long long>(text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  long long signed_integer() {
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    auto v = static_cast<long long>(unsigned_here());
    return negative ? -v : v;
  }

  /// Text up to the matching `}` (braces may nest); cursor ends past it.
  std::string_view braced() {
    expect('{');
    std::size_t start = pos_;
    int depth = 1;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '{') ++depth;
      if (c == '}' && --depth == 0) {
        std::string_view inner = text_.substr(start, pos_ - start);
        ++pos_;
        return inner;
      }
      ++pos_;
    }
    throw SyntaxError(start, "unterminated `{`");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Word must provide: default construction (empty), operator*, inverse(), pow(k).
/// Atom: std::optional<Word>(Lexer&) — returns nullopt when no atom starts here.
template <class Word, class Atom>
class WordParser {
 public:
  WordParser(std::string_view text, Atom atom) : lex_(text), atom_(std::move(atom)) {}

  Word parse_all() {
    Word w = sequence();
    if (!lex_.at_end()) throw SyntaxError(lex_.offset(), "unexpected character");
    return w;
  }

 private:
  Word sequence() {
    Word w;
    for (;;) {
      char c = lex_.peek();
      if (c == '\0' || c == ']' || c == ',' || c == ')') return w;
      w = w * factor();
    }
  }

  Word factor() {
    Word base = primary();
    if (lex_.accept('^')) {
      long long k = lex_.signed_integer();
      return base.pow(k);
    }
    return base;
  }

  Word primary() {
    if (lex_.accept('[')) {
      Word u = sequence();
      lex_.expect(',');
      Word v = sequence();
      lex_.expect(']');
      return u * v * u.inverse() * v.inverse();
    }
    if (lex_.accept('(')) {
      Word u = sequence();
      lex_.expect(')');
      return u;
    }
    std::size_t at = lex_.offset();
    if (auto w = atom_(lex_)) return std::move(*w);
    throw SyntaxError(at, "unexpected character");
  }

  Lexer lex_;
  Atom atom_;
};

template <class Word, class Atom>
Word parse_with(std::string_view text, Atom atom) {
  return WordParser<Word, Atom>(text, std::move(atom)).parse_all();
}

}  // namespace thompson::detail
