#pragma once

// Character-level scanner shared by the form, problem, certificate and LP
// readers. Tracks 1-based line/column and skips `#` comments.

#include <cctype>
#include <string>
#include <string_view>

#include "copylp/error.hpp"
#include "copylp/rational.hpp"

namespace copylp::detail {

class TextCursor {
 public:
  explicit TextCursor(std::string_view text, int line = 1, int column = 1)
      : text_(text), line_(line), column_(column) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  char peek_at(std::size_t offset) {
    skip_space();
    return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    for (std::size_t i = 0; i < token.size(); ++i) advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  bool at_identifier() { return ident_start(peek()); }

  std::string identifier() {
    if (!at_identifier()) fail("expected identifier");
    std::string out;
    while (pos_ < text_.size() && ident_char(text_[pos_])) {
      out += text_[pos_];
      advance();
    }
    return out;
  }

  /// Identifier, only if it is exactly `word` (not a longer identifier).
  bool accept_keyword(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    std::size_t end = pos_ + word.size();
    if (end < text_.size() && ident_char(text_[end])) return false;
    for (std::size_t i = 0; i < word.size(); ++i) advance();
    return true;
  }

  bool at_number() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) ||
           (c == '.' && std::isdigit(static_cast<unsigned char>(peek_at(1))));
  }

  /// Unsigned rational literal: `12`, `3/19`, `0.25`.
  Rational number() {
    skip_space();
    int line = line_, col = column_;
    std::string s;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        s += text_[pos_];
        advance();
      }
    };
    digits();
    if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.')) {
      s += text_[pos_];
      advance();
      digits();
    }
    try {
      return parse_rational(s);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), line, col);
    }
  }

  /// Signed rational literal.
  Rational signed_number() {
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Rational r = number();
    return neg ? Rational(-r) : r;
  }

  /// Raw text up to (not including) `stop`; consumes `stop`.
  std::string until(char stop) {
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != stop) {
      out += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size()) fail(std::string("expected '") + stop + "'");
    advance();
    return out;
  }

  /// Rest of the current line (without the newline), comments included.
  std::string rest_of_line() {
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '\n') {
      out += text_[pos_];
      advance();
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& message) {
    skip_space();
    throw ParseError(message, line_, column_);
  }

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
};

}  // namespace copylp::detail
