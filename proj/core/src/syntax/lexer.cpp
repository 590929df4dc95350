#include "syntax/lexer.hpp"

#include <cctype>

#include "psim/errors.hpp"

namespace psim::detail {

std::vector<Token> tokenize(std::string_view text, bool keep_newlines) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto emit = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(text.substr(i, len)), i});
    i += len;
  };
  while (i < n) {
    const char c = text[i];
    if (c == '\n') {
      if (keep_newlines) {
        emit(Tok::Newline, 1);
      } else {
        ++i;
      }
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      emit(Tok::Int, j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      // Lowercase keywords may contain '-' followed by a letter ("ax-down");
      // "X0->X1" still lexes as X0 -> X1.
      const bool keyword = std::islower(static_cast<unsigned char>(c)) != 0;
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '-')) {
        if (text[j] == '-' &&
            (!keyword || j + 1 >= n || !std::isalpha(static_cast<unsigned char>(text[j + 1])))) {
          break;
        }
        ++j;
      }
      emit(Tok::Ident, j - i);
      continue;
    }
    auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
    if (starts("<->")) { emit(Tok::Iff, 3); continue; }
    if (starts("<=")) { emit(Tok::Le, 2); continue; }
    if (starts(">=")) { emit(Tok::Ge, 2); continue; }
    if (starts("->")) { emit(Tok::Arrow, 2); continue; }
    if (starts(":=")) { emit(Tok::Assign, 2); continue; }
    switch (c) {
      case '<': emit(Tok::LAngle, 1); continue;
      case '>': emit(Tok::RAngle, 1); continue;
      case '=': emit(Tok::Eq, 1); continue;
      case '[': emit(Tok::LBracket, 1); continue;
      case ']': emit(Tok::RBracket, 1); continue;
      case '(': emit(Tok::LParen, 1); continue;
      case ')': emit(Tok::RParen, 1); continue;
      case '{': emit(Tok::LBrace, 1); continue;
      case '}': emit(Tok::RBrace, 1); continue;
      case '!': emit(Tok::Bang, 1); continue;
      case '&': emit(Tok::Amp, 1); continue;
      case '|': emit(Tok::Pipe, 1); continue;
      case '^': emit(Tok::Caret, 1); continue;
      case ',': emit(Tok::Comma, 1); continue;
      case '+': emit(Tok::Plus, 1); continue;
      case '-': emit(Tok::Minus, 1); continue;
      case '*': emit(Tok::Star, 1); continue;
      case '/': emit(Tok::Slash, 1); continue;
      case ';': emit(Tok::Semicolon, 1); continue;
      case ':': emit(Tok::Colon, 1); continue;
      default: break;
    }
    throw ParseError(i, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", n});
  return out;
}

std::optional<std::size_t> tape_index(const Token& tok) {
  if (tok.kind != Tok::Ident || tok.text.size() < 2 || tok.text[0] != 'X') return std::nullopt;
  std::size_t value = 0;
  for (std::size_t k = 1; k < tok.text.size(); ++k) {
    const char c = tok.text[k];
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

std::string describe(const Token& tok) {
  if (tok.kind == Tok::End) return "end of input";
  if (tok.kind == Tok::Newline) return "end of line";
  return "'" + tok.text + "'";
}

}  // namespace psim::detail
