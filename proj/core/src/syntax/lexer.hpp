#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace psim::detail {

enum class Tok {
  End,
  Int,
  Ident,
  LAngle,    // <
  RAngle,    // >
  Le,        // <=
  Ge,        // >=
  Eq,        // =
  LBracket,
  RBracket,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Bang,
  Amp,
  Pipe,
  Caret,
  Arrow,     // ->
  Iff,       // <->
  Comma,
  Assign,    // :=
  Plus,
  Minus,
  Star,
  Slash,
  Semicolon,
  Colon,
  Newline,   // emitted only when requested
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

// Splits `text` into tokens; `#` starts a comment running to end of line.
// Throws ParseError on an unexpected character.
std::vector<Token> tokenize(std::string_view text, bool keep_newlines = false);

// "X12" -> 12; nullopt for anything else.
std::optional<std::size_t> tape_index(const Token& tok);

std::string describe(const Token& tok);

}  // namespace psim::detail
