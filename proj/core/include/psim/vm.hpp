#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "psim/syntax.hpp"

namespace psim {

// Boolean expression over tape squares. Evaluation costs no fuel.
struct Expr {
  enum class Kind : std::uint8_t { Const, Read, Not, And, Or, Xor };

  Kind kind = Kind::Const;
  bool value = false;     // Const
  std::size_t index = 0;  // Read
  std::vector<Expr> args; // Not: 1, And/Or/Xor: 2

  static Expr constant(bool b);
  static Expr read(std::size_t i);
  static Expr negate(Expr e);
  static Expr conj(Expr a, Expr b);
  static Expr disj(Expr a, Expr b);
  static Expr exclusive(Expr a, Expr b);
  // a == b, as !(a ^ b).
  static Expr same(Expr a, Expr b);

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Stmt;
using Block = std::vector<Stmt>;

struct Stmt {
  enum class Kind : std::uint8_t { Write, Flip, If, While, Halt, Loop };

  Kind kind = Kind::Halt;
  std::size_t index = 0;  // Write, Flip
  Expr expr;              // Write value; If/While condition
  Block body;             // If then-branch; While body
  Block orelse;           // If else-branch

  static Stmt write(std::size_t i, Expr value);
  static Stmt flip(std::size_t i);
  static Stmt if_else(Expr cond, Block then_block, Block else_block = {});
  static Stmt while_loop(Expr cond, Block body);
  static Stmt halt();
  // Never halts; behaves like `while 1 {}`.
  static Stmt loop();

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

// A probabilistic simulation program over binary tape squares. Every run
// starts from an all-zero tape; `flip` reads the next bit of the random
// stream.
struct Program {
  Block body;

  friend bool operator==(const Program&, const Program&) = default;
};

// Largest tape index the program reads or writes, if any.
std::optional<std::size_t> max_index(const Program& p);
std::optional<std::size_t> max_index(const Block& b);
std::size_t count_flips(const Block& b);
bool contains_loop(const Block& b);

// A program together with the squares an intervention holds fixed.
class Runnable {
 public:
  Runnable() : program_(std::make_shared<const Program>()) {}
  Runnable(Program p, std::map<std::size_t, bool> holds = {})  // NOLINT(google-explicit-constructor)
      : program_(std::make_shared<const Program>(std::move(p))), holds_(std::move(holds)) {}
  Runnable(std::shared_ptr<const Program> p, std::map<std::size_t, bool> holds)
      : program_(std::move(p)), holds_(std::move(holds)) {}

  const Program& program() const noexcept { return *program_; }
  const std::shared_ptr<const Program>& shared_program() const noexcept { return program_; }
  const std::map<std::size_t, bool>& holds() const noexcept { return holds_; }

 private:
  std::shared_ptr<const Program> program_;
  std::map<std::size_t, bool> holds_;
};

// The intervened machine: pre-writes the spec's values and ignores every
// later write to those squares. Applied to an already-intervened runnable,
// the new spec overrides on overlapping squares.
Runnable intervene(const Program& p, const InterventionSpec& spec);
Runnable intervene(const Runnable& r, const InterventionSpec& spec);

struct Halted {
  std::map<std::size_t, bool> tape;  // every square written or held; absent squares are 0
  std::size_t bits_consumed = 0;

  bool value(std::size_t i) const {
    auto it = tape.find(i);
    return it != tape.end() && it->second;
  }
  friend bool operator==(const Halted&, const Halted&) = default;
};

struct FuelExhausted {
  std::size_t bits_consumed = 0;
  friend bool operator==(const FuelExhausted&, const FuelExhausted&) = default;
};

// The run needed stream bit `position`, which lies past the supplied prefix.
struct BitDemand {
  std::size_t position = 0;
  friend bool operator==(const BitDemand&, const BitDemand&) = default;
};

using RunOutcome = std::variant<Halted, FuelExhausted, BitDemand>;
using Bits = std::vector<bool>;

// Runs `r` on the random-bit prefix. Each executed statement (and each
// further iteration test of a while loop) costs one unit of fuel.
RunOutcome run(const Runnable& r, const Bits& prefix, std::uint64_t fuel);

std::string to_string(const RunOutcome& o);
Bits parse_bits(std::string_view text);
std::string to_string(const Bits& bits);

// ---- program text --------------------------------------------------------
//
//   hold X0 := 1            (optional header, intervened programs only)
//   write X1 := X0 & !X2
//   flip X3
//   if X3 { ... } else { ... }
//   while !X3 { flip X3 }
//   halt
//   loop
//
// `#` starts a comment. Expression precedence: ! > & > ^ > |.

Runnable parse_model(std::string_view text);
std::string to_string(const Expr& e);
std::string to_string(const Program& p);
std::string to_string(const Runnable& r);

// Statements that record in `flag` whether square `index` is currently held
// by an intervention: try to toggle it, compare with the value saved in
// `scratch`, then restore. Unheld squares end with their original value.
Block held_test(std::size_t index, std::size_t scratch, std::size_t flag);

}  // namespace psim
