#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psim/nonprob_logic.hpp"
#include "psim/syntax.hpp"

namespace psim {

enum class Rule : std::uint8_t {
  Taut,
  MP,
  NonNeg,
  Norm,
  Add,
  Dist,
  Zero,
  Perm,
  AddIneq,
  Mult,
  Dichotomy,
  Mono,
};

std::string_view to_string(Rule r) noexcept;

struct Justification {
  Rule rule = Rule::Taut;
  // Cited line numbers, MP only.
  std::size_t first = 0;
  std::size_t second = 0;
};

struct ProofLine {
  std::size_t number = 0;
  ProbFormula formula;
  Justification justification;
};

// Mode::M checks against AX, Mode::MDown against the almost-surely halting
// variant; they differ only in the validity relation behind dist.
struct Proof {
  Mode mode = Mode::M;
  std::vector<ProofLine> lines;
};

//   mode: ax | ax-down
//   1. P(<>X0) >= 0 ; nonneg
//   2. ... ; mp 1 3
// Blank lines and `#` comments are ignored. Line numbers must increase.
// Throws ParseError with a byte offset into `text`.
Proof parse_proof(std::string_view text);
std::string to_string(const Proof& p);

enum class ProofErrorCode : std::uint8_t { BadSchema, SideCondition, BadMp, NotTaut };

std::string_view to_string(ProofErrorCode c) noexcept;

struct ProofError {
  std::size_t line = 0;  // the proof's own line number
  ProofErrorCode code = ProofErrorCode::BadSchema;
  std::string detail;
};

struct ProofCheckOptions {
  std::size_t max_taut_atoms = 20;
  NonProbCaps nonprob;
};

// First failing line, or nullopt when every line is justified.
std::optional<ProofError> check_proof(const Proof& p, const ProofCheckOptions& options = {});

// Whether `f` is a propositional tautology over its linear atoms. Throws
// ResourceError beyond max_atoms distinct atoms.
bool is_tautology(const ProbFormula& f, std::size_t max_atoms = 20);

}  // namespace psim
