#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psim/syntax.hpp"
#include "psim/tri.hpp"
#include "psim/vm.hpp"

namespace psim {

// Model class: M is every simulation model, MDown the ones that halt under
// every intervention.
enum class Mode : std::uint8_t { M, MDown };

std::string_view to_string(Mode m) noexcept;
// Accepts "m" / "m-down" (also "ax" / "ax-down").
std::optional<Mode> parse_mode(std::string_view text) noexcept;

using Assignment = std::map<std::size_t, bool>;

// Behaviour of a deterministic machine under one intervention: it never
// halts (no outcome) or halts with the given values on the mentioned squares.
struct WorldRow {
  InterventionSpec antecedent;
  std::optional<Assignment> outcome;

  bool halts() const noexcept { return outcome.has_value(); }
  friend bool operator==(const WorldRow&, const WorldRow&) = default;
};

struct WorldTable {
  std::vector<std::size_t> mentioned_vars;  // ascending
  std::vector<WorldRow> rows;               // one per distinct antecedent

  const WorldRow* find(const InterventionSpec& antecedent) const;
  // False for a non-halting row, Unknown when the antecedent has no row.
  Tri truth(const CondAtom& atom) const;
  Tri evaluate(const NonProbFormula& f) const;
  // Throws std::invalid_argument if a row contradicts its antecedent, assigns
  // an unmentioned square, or (in MDown) does not halt.
  void validate(Mode mode) const;

  friend bool operator==(const WorldTable&, const WorldTable&) = default;
};

// One row per line: `<X0,!X2> => X0=1 X1=0 X2=0` or `<> => nonhalt`,
// preceded by `vars: X0 X1 X2`.
std::string to_string(const WorldTable& t);
WorldTable parse_world_table(std::string_view text);

struct NonProbCaps {
  std::size_t max_vars = 16;
  std::size_t max_antecedents = 8;
};

// First satisfying table in enumeration order (rows ordered like the
// antecedents of cond_atoms_of; per row, nonhalt first in mode M, then
// assignments counting upward with the lowest free index as least
// significant bit), or nullopt when unsatisfiable. Throws ResourceError
// beyond the caps.
std::optional<WorldTable> sat_nonprob(const NonProbFormula& f, Mode mode, const NonProbCaps& caps = {});
bool valid_nonprob(const NonProbFormula& f, Mode mode, const NonProbCaps& caps = {});
bool equiv_nonprob(const NonProbFormula& f, const NonProbFormula& g, Mode mode, const NonProbCaps& caps = {});

// A flip-free program realizing the table: it detects which listed
// intervention is active by toggle tests, then loops (non-halting row) or
// writes the row's values and halts. Unlisted interventions fall back to
// the empty intervention's row when it halts, and otherwise halt at once.
// Scratch squares start at `scratch_base` (default: one past the largest
// mentioned index).
Program synth_world_program(const WorldTable& t, std::optional<std::size_t> scratch_base = std::nullopt);

// Scratch squares synth_world_program uses for a table.
std::size_t world_program_scratch_size(const WorldTable& t);

}  // namespace psim
