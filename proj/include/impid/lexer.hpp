/*
 * Copyright 2026 The impid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Lossless tokenizer for the Java-like subset.
//
// Every byte of the input belongs to exactly one token, so concatenating the
// token texts reproduces the source. Comments and string literals are single
// opaque tokens.

#ifndef IMPID_LEXER_HPP
#define IMPID_LEXER_HPP

#include <array>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "impid/glyphs.hpp"
#include "impid/model.hpp"

namespace impid {

enum class TokenKind {
  identifier,
  keyword,
  annotation_marker,
  string_literal,
  char_literal,
  number_literal,
  comment,
  punctuation,
  whitespace,
};

inline std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::keyword: return "keyword";
    case TokenKind::annotation_marker: return "annotation-marker";
    case TokenKind::string_literal: return "string-literal";
    case TokenKind::char_literal: return "char-literal";
    case TokenKind::number_literal: return "number-literal";
    case TokenKind::comment: return "comment";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::whitespace: return "whitespace";
  }
  return "?";
}

struct Token {
  TokenKind kind = TokenKind::punctuation;
  Span span;
  std::string text;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(TokenKind::punctuation, t); }
  bool is_keyword(std::string_view t) const { return is(TokenKind::keyword, t); }
  bool significant() const { return kind != TokenKind::whitespace && kind != TokenKind::comment; }
};

inline bool is_java_keyword(std::string_view word) {
  static const std::unordered_set<std::string_view> kKeywords = {
      "abstract", "assert",       "boolean",   "break",      "byte",      "case",     "catch",
      "char",     "class",        "const",     "continue",   "default",   "do",       "double",
      "else",     "enum",         "extends",   "final",      "finally",   "float",    "for",
      "goto",     "if",           "implements", "import",    "instanceof", "int",     "interface",
      "long",     "native",       "new",       "package",    "private",   "protected", "public",
      "return",   "short",        "static",    "strictfp",   "super",     "switch",   "synchronized",
      "this",     "throw",        "throws",    "transient",  "try",       "void",     "volatile",
      "while",    "true",         "false",     "null"};
  return kKeywords.count(word) != 0;
}

namespace detail {

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  std::vector<Token> run() {
    if (!decode_utf8(src_)) throw TokenizeError("source is not valid UTF-8", 1, 1);
    std::vector<Token> out;
    while (pos_ < src_.size()) out.push_back(next());
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

  Token make(TokenKind kind, std::size_t start) {
    Token t;
    t.kind = kind;
    t.span = Span{start, pos_, line_, col_};
    t.text = std::string(src_.substr(start, pos_ - start));
    for (char c : t.text) {
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
        ++col_;
      }
    }
    return t;
  }

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    auto [line, col] = line_col_at(src_, at);
    throw TokenizeError(what, line, col);
  }

  Token next() {
    const std::size_t start = pos_;
    const char c = peek();
    const auto uc = static_cast<unsigned char>(c);

    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
      while (pos_ < src_.size() && (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n' || peek() == '\f'))
        ++pos_;
      return make(TokenKind::whitespace, start);
    }
    if (c == '/' && peek(1) == '/') {
      while (pos_ < src_.size() && peek() != '\n') ++pos_;
      return make(TokenKind::comment, start);
    }
    if (c == '/' && peek(1) == '*') {
      std::size_t close = src_.find("*/", pos_ + 2);
      if (close == std::string_view::npos) fail("unterminated comment", start);
      pos_ = close + 2;
      return make(TokenKind::comment, start);
    }
    if (c == '"' && peek(1) == '"' && peek(2) == '"') {
      pos_ += 3;
      while (true) {
        if (pos_ >= src_.size()) fail("unterminated text block", start);
        if (peek() == '\\') {
          pos_ += 2;
          continue;
        }
        if (peek() == '"' && peek(1) == '"' && peek(2) == '"') {
          pos_ += 3;
          break;
        }
        ++pos_;
      }
      return make(TokenKind::string_literal, start);
    }
    if (c == '"' || c == '\'') {
      ++pos_;
      while (true) {
        if (pos_ >= src_.size() || peek() == '\n')
          fail(c == '"' ? "unterminated string literal" : "unterminated char literal", start);
        if (peek() == '\\') {
          pos_ += 2;
          continue;
        }
        if (peek() == c) {
          ++pos_;
          break;
        }
        ++pos_;
      }
      return make(c == '"' ? TokenKind::string_literal : TokenKind::char_literal, start);
    }
    if ((c >= '0' && c <= '9') || (c == '.' && peek(1) >= '0' && peek(1) <= '9')) {
      bool hex = c == '0' && (peek(1) == 'x' || peek(1) == 'X');
      while (pos_ < src_.size()) {
        char d = peek();
        if ((d >= '0' && d <= '9') || (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || d == '_' || d == '.') {
          bool exponent = hex ? (d == 'p' || d == 'P') : (d == 'e' || d == 'E');
          ++pos_;
          if (exponent && (peek() == '+' || peek() == '-')) ++pos_;
        } else {
          break;
        }
      }
      return make(TokenKind::number_literal, start);
    }
    if (is_identifier_start(uc)) {
      while (pos_ < src_.size() && is_identifier_part(static_cast<unsigned char>(peek()))) ++pos_;
      Token t = make(TokenKind::identifier, start);
      if (is_java_keyword(t.text)) t.kind = TokenKind::keyword;
      return t;
    }
    if (c == '@') {
      ++pos_;
      return make(TokenKind::annotation_marker, start);
    }
    static constexpr std::array<std::string_view, 20> kMulti = {
        "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
        "<=",  ">=",  "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^="};
    for (std::string_view op : kMulti) {
      if (src_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        return make(TokenKind::punctuation, start);
      }
    }
    ++pos_;
    return make(TokenKind::punctuation, start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace detail

inline std::vector<Token> tokenize(std::string_view source) { return detail::Lexer(source).run(); }

}  // namespace impid

#endif  // IMPID_LEXER_HPP
