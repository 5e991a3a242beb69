#ifndef EQLOGIC_FRONTEND_LEXER_HPP
#define EQLOGIC_FRONTEND_LEXER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "eqlogic/error.hpp"

namespace eqlogic::frontend {

enum class Tok { Word, LParen, RParen, LBracket, RBracket, Comma, Colon, Assign, Equals, Arrow, End };

inline std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Word: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Equals: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

/// Strips a `#` comment.
inline std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

inline bool is_word_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '\'' ||
         c == '-';
}

/// Appends the tokens of one line (comments already stripped). A word may
/// contain '-' but never "->", which always lexes as an arrow.
inline void lex_line(std::string_view line, std::size_t lineno, std::vector<Token>& out) {
  std::size_t i = 0;
  auto pos = [&](std::size_t col) { return SourcePos{lineno, col + 1}; };
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", pos(i)});
      i += 2;
      continue;
    }
    if (c == ':' && i + 1 < line.size() && line[i + 1] == '=') {
      out.push_back({Tok::Assign, ":=", pos(i)});
      i += 2;
      continue;
    }
    Tok single = Tok::End;
    switch (c) {
      case '(': single = Tok::LParen; break;
      case ')': single = Tok::RParen; break;
      case '[': single = Tok::LBracket; break;
      case ']': single = Tok::RBracket; break;
      case ',': single = Tok::Comma; break;
      case ':': single = Tok::Colon; break;
      case '=': single = Tok::Equals; break;
      default: break;
    }
    if (single != Tok::End) {
      out.push_back({single, std::string(1, c), pos(i)});
      ++i;
      continue;
    }
    if (is_word_char(c)) {
      std::size_t start = i;
      while (i < line.size() && is_word_char(line[i]) && !(line[i] == '-' && i + 1 < line.size() && line[i + 1] == '>')) {
        ++i;
      }
      out.push_back({Tok::Word, std::string(line.substr(start, i - start)), pos(start)});
      continue;
    }
    throw Error(ErrorKind::ParseError, "unexpected character '" + std::string(1, c) + "'", pos(i));
  }
}

/// Cursor over a token vector, always terminated by an End token.
class TokenStream {
 public:
  TokenStream(std::vector<Token> toks, SourcePos end) : toks_(std::move(toks)) { toks_.push_back({Tok::End, "", end}); }

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Word) && peek().text == w; }

  Token next() {
    Token t = peek();
    if (i_ < toks_.size() - 1) ++i_;
    return t;
  }

  Token expect(Tok k, std::string_view what = {}) {
    if (!at(k)) fail(what.empty() ? describe(k) : what);
    return next();
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("'" + std::string(w) + "'");
    next();
  }

  [[noreturn]] void fail(std::string_view expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorKind::ParseError, "expected " + std::string(expected) + ", found " + found, t.pos);
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace eqlogic::frontend

#endif  // EQLOGIC_FRONTEND_LEXER_HPP
