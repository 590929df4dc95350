#include <string>

#include "psim/errors.hpp"
#include "psim/vm.hpp"
#include "syntax/lexer.hpp"

namespace psim {
namespace {

using detail::Tok;
using detail::Token;

class ProgramParser {
 public:
  explicit ProgramParser(std::string_view text) : toks_(detail::tokenize(text)) {}

  Runnable model() {
    std::map<std::size_t, bool> holds;
    while (keyword("hold")) {
      take();
      const std::size_t pos = peek().pos;
      const std::size_t i = square();
      expect(Tok::Assign, "':='");
      const bool v = bit();
      if (!holds.emplace(i, v).second) throw ParseError(pos, "square held twice");
      accept(Tok::Semicolon);
    }
    Program p;
    p.body = block_until(Tok::End);
    return Runnable(std::move(p), std::move(holds));
  }

 private:
  const Token& peek() const { return toks_[at_]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token take() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    take();
    return true;
  }
  bool keyword(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + ", found " + detail::describe(peek()));
  }

  std::size_t square() {
    auto idx = detail::tape_index(peek());
    if (!idx) fail("expected a tape square Xn, found " + detail::describe(peek()));
    take();
    return *idx;
  }

  bool bit() {
    if (!at(Tok::Int) || (peek().text != "0" && peek().text != "1")) fail("expected 0 or 1");
    return take().text == "1";
  }

  Block block_until(Tok close) {
    Block out;
    while (!at(close)) {
      if (at(Tok::End)) fail("unterminated block");
      out.push_back(statement());
      accept(Tok::Semicolon);
    }
    return out;
  }

  Block braced() {
    expect(Tok::LBrace, "'{'");
    Block b = block_until(Tok::RBrace);
    expect(Tok::RBrace, "'}'");
    return b;
  }

  Stmt statement() {
    if (!at(Tok::Ident)) fail("expected a statement, found " + detail::describe(peek()));
    const std::string word = peek().text;
    if (word == "write") {
      take();
      const std::size_t i = square();
      expect(Tok::Assign, "':='");
      return Stmt::write(i, expr());
    }
    if (word == "flip") {
      take();
      return Stmt::flip(square());
    }
    if (word == "if") {
      take();
      Expr cond = expr();
      Block then_block = braced();
      Block else_block;
      if (keyword("else")) {
        take();
        if (keyword("if")) {
          else_block.push_back(statement());
        } else {
          else_block = braced();
        }
      }
      return Stmt::if_else(std::move(cond), std::move(then_block), std::move(else_block));
    }
    if (word == "while") {
      take();
      Expr cond = expr();
      return Stmt::while_loop(std::move(cond), braced());
    }
    if (word == "halt") {
      take();
      return Stmt::halt();
    }
    if (word == "loop") {
      take();
      return Stmt::loop();
    }
    if (word == "hold") fail("hold directives must precede all statements");
    fail("unknown statement '" + word + "'");
  }

  Expr expr() {
    Expr a = xor_expr();
    while (accept(Tok::Pipe)) a = Expr::disj(std::move(a), xor_expr());
    return a;
  }

  Expr xor_expr() {
    Expr a = and_expr();
    while (accept(Tok::Caret)) a = Expr::exclusive(std::move(a), and_expr());
    return a;
  }

  Expr and_expr() {
    Expr a = unary();
    while (accept(Tok::Amp)) a = Expr::conj(std::move(a), unary());
    return a;
  }

  Expr unary() {
    if (accept(Tok::Bang)) return Expr::negate(unary());
    if (accept(Tok::LParen)) {
      Expr e = expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (at(Tok::Int)) return Expr::constant(bit());
    return Expr::read(square());
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Or: return 1;
    case Expr::Kind::Xor: return 2;
    case Expr::Kind::And: return 3;
    default: return 4;
  }
}

void print_block(const Block& b, int depth, std::string& out);

void print_stmt(const Stmt& s, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (s.kind) {
    case Stmt::Kind::Write: out += pad + "write X" + std::to_string(s.index) + " := " + to_string(s.expr) + "\n"; break;
    case Stmt::Kind::Flip: out += pad + "flip X" + std::to_string(s.index) + "\n"; break;
    case Stmt::Kind::Halt: out += pad + "halt\n"; break;
    case Stmt::Kind::Loop: out += pad + "loop\n"; break;
    case Stmt::Kind::While:
      out += pad + "while " + to_string(s.expr) + " {\n";
      print_block(s.body, depth + 1, out);
      out += pad + "}\n";
      break;
    case Stmt::Kind::If:
      out += pad + "if " + to_string(s.expr) + " {\n";
      print_block(s.body, depth + 1, out);
      if (s.orelse.empty()) {
        out += pad + "}\n";
      } else {
        out += pad + "} else {\n";
        print_block(s.orelse, depth + 1, out);
        out += pad + "}\n";
      }
      break;
  }
}

void print_block(const Block& b, int depth, std::string& out) {
  for (const auto& s : b) print_stmt(s, depth, out);
}

}  // namespace

Runnable parse_model(std::string_view text) { return ProgramParser(text).model(); }

std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Const: return e.value ? "1" : "0";
    case Expr::Kind::Read: return "X" + std::to_string(e.index);
    case Expr::Kind::Not: {
      std::string inner = to_string(e.args[0]);
      return precedence(e.args[0]) < 4 ? "!(" + inner + ")" : "!" + inner;
    }
    default: break;
  }
  const int p = precedence(e);
  std::string l = to_string(e.args[0]);
  std::string r = to_string(e.args[1]);
  // Left-associative: the right operand needs parentheses at equal precedence.
  if (precedence(e.args[0]) < p) l = "(" + l + ")";
  if (precedence(e.args[1]) <= p) r = "(" + r + ")";
  const char* op = e.kind == Expr::Kind::And ? " & " : e.kind == Expr::Kind::Or ? " | " : " ^ ";
  return l + op + r;
}

std::string to_string(const Program& p) {
  std::string out;
  print_block(p.body, 0, out);
  return out;
}

std::string to_string(const Runnable& r) {
  std::string out;
  for (const auto& [i, v] : r.holds()) out += "hold X" + std::to_string(i) + " := " + (v ? "1" : "0") + "\n";
  return out + to_string(r.program());
}

}  // namespace psim
