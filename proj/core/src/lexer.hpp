// Copyright 2026 The kpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tokenizer shared by the theory parser and the seed/model file reader.

#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "kpd/errors.hpp"

namespace kpd::detail {

enum class Tok {
  Ident,
  Int,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Dot,
  DotDot,
  Colon,
  Amp,
  Bar,
  Tilde,
  Eq,
  NotEq,
  Arrow,    // <-
  Implies,  // =>
  Iff,      // <=>
  Plus,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

inline const char* tokName(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::Colon: return "':'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Tilde: return "'~'";
    case Tok::Eq: return "'='";
    case Tok::NotEq: return "'~='";
    case Tok::Arrow: return "'<-'";
    case Tok::Implies: return "'=>'";
    case Tok::Iff: return "'<=>'";
    case Tok::Plus: return "'+'";
    case Tok::End: return "end of input";
  }
  return "?";
}

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%' || starts("//")) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourceLoc loc{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), loc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), loc});
      advance(j - i);
      continue;
    }
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    static constexpr Sym syms[] = {
        {"<=>", Tok::Iff}, {"<-", Tok::Arrow}, {"=>", Tok::Implies},
        {"~=", Tok::NotEq}, {"..", Tok::DotDot}, {"(", Tok::LParen},
        {")", Tok::RParen}, {"{", Tok::LBrace}, {"}", Tok::RBrace},
        {"[", Tok::LBracket}, {"]", Tok::RBracket}, {",", Tok::Comma},
        {".", Tok::Dot},    {":", Tok::Colon},  {"&", Tok::Amp},
        {"|", Tok::Bar},    {"~", Tok::Tilde},  {"=", Tok::Eq},
        {"+", Tok::Plus},
    };
    bool matched = false;
    for (const Sym& s : syms) {
      if (starts(s.text)) {
        out.push_back({s.kind, std::string(s.text), loc});
        advance(s.text.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw SyntaxError(std::string("unexpected character '") + c + "'", loc);
    }
  }
  out.push_back({Tok::End, "", SourceLoc{line, col}});
  return out;
}

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t k = pos_ + ahead;
    return k < toks_.size() ? toks_[k] : toks_.back();
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool atKeyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  Token expect(Tok k, std::string_view context) {
    if (!at(k)) {
      throw SyntaxError(std::string("expected ") + tokName(k) + " " +
                            std::string(context) + ", found " + describe(peek()),
                        peek().loc);
    }
    return next();
  }
  void expectKeyword(std::string_view kw) {
    if (!atKeyword(kw)) {
      throw SyntaxError("expected '" + std::string(kw) + "', found " + describe(peek()),
                        peek().loc);
    }
    next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + ", found " + describe(peek()), peek().loc);
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::Ident || t.kind == Tok::Int) return "'" + t.text + "'";
    return tokName(t.kind);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline bool isConstantName(std::string_view s) {
  return !s.empty() &&
         (std::isupper(static_cast<unsigned char>(s[0])) ||
          std::isdigit(static_cast<unsigned char>(s[0])));
}

}  // namespace kpd::detail
