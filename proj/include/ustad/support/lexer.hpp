#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "ustad/support/errors.hpp"

namespace ustad {

// Shared token stream for every text format the library reads. Skips blanks
// and `//` / `#` line comments, tracks 1-based line and column.
struct Token {
  enum class Kind { ident, number, punct, end };
  Kind kind = Kind::end;
  std::string text;
  double num = 0.0;
  int line = 0;
  int col = 0;
};

class TokenStream {
 public:
  explicit TokenStream(const std::string& src) { tokenize(src); }

  const Token& peek(int ahead = 0) const {
    const size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& get() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::end; }

  // Checkpointing for the rare two-way ambiguity (parenthesized conditions
  // versus parenthesized subexpressions).
  size_t mark() const { return pos_; }
  void reset(size_t m) { pos_ = m; }

  bool accept(const std::string& punct) {
    const Token& t = peek();
    if (t.kind == Token::Kind::punct && t.text == punct) {
      get();
      return true;
    }
    return false;
  }
  bool accept_ident(const std::string& word) {
    const Token& t = peek();
    if (t.kind == Token::Kind::ident && t.text == word) {
      get();
      return true;
    }
    return false;
  }
  const Token& expect(const std::string& punct) {
    const Token& t = peek();
    if (t.kind != Token::Kind::punct || t.text != punct)
      fail("expected '" + punct + "'", t);
    return get();
  }

  [[noreturn]] static void fail(const std::string& msg, const Token& at) {
    std::string shown = at.kind == Token::Kind::end
                            ? std::string("end of input")
                            : "'" + at.text + "'";
    throw ParseError(msg + ", found " + shown, at.line, at.col);
  }

 private:
  void tokenize(const std::string& src) {
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; ++k) {
        if (src[i + k] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      i += n;
    };
    while (i < src.size()) {
      const char c = src[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
        continue;
      }
      if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
        while (i < src.size() && src[i] != '\n') advance(1);
        continue;
      }
      Token t;
      t.line = line;
      t.col = col;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[j])) ||
                src[j] == '_'))
          ++j;
        t.kind = Token::Kind::ident;
        t.text = src.substr(i, j - i);
        advance(j - i);
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && i + 1 < src.size() &&
                  std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
        const char* start = src.c_str() + i;
        char* endp = nullptr;
        t.num = std::strtod(start, &endp);
        const size_t len = static_cast<size_t>(endp - start);
        t.kind = Token::Kind::number;
        t.text = src.substr(i, len);
        advance(len);
      } else {
        static const char* two[] = {":=", "<=", ">=", "==", "!="};
        std::string text(1, c);
        for (const char* p : two) {
          if (src.compare(i, 2, p) == 0) {
            text = p;
            break;
          }
        }
        static const std::string singles = "+-*^();:{}=,<>[]";
        if (text.size() == 1 && singles.find(c) == std::string::npos)
          throw ParseError(std::string("unexpected character '") + c + "'",
                           line, col);
        t.kind = Token::Kind::punct;
        t.text = text;
        advance(text.size());
      }
      toks_.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::Kind::end;
    end.line = line;
    end.col = col;
    toks_.push_back(end);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace ustad
