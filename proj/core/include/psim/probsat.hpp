#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "psim/linarith.hpp"
#include "psim/nonprob_logic.hpp"
#include "psim/numeric.hpp"
#include "psim/syntax.hpp"
#include "psim/tri.hpp"
#include "psim/vm.hpp"

namespace psim {

// A complete conjunction of literals over an ordered list of conditionals:
// signs[i] true means atoms[i], false means its negation.
struct DeltaAtom {
  std::vector<bool> signs;
  std::optional<WorldTable> sat_witness;  // present iff satisfiable in the mode

  bool satisfiable() const noexcept { return sat_witness.has_value(); }
};

// Delta j has sign i positive iff bit (n-1-i) of j is 0, so delta 0 is the
// all-positive conjunction and atoms[0] is the most significant position.
std::vector<bool> delta_signs(std::size_t j, std::size_t n);
NonProbFormula delta_formula(const std::vector<CondAtom>& atoms, const std::vector<bool>& signs);

// Truth of a formula over `atoms` under a sign assignment.
bool holds_under(const NonProbFormula& f, const std::vector<CondAtom>& atoms, const std::vector<bool>& signs);

struct ProbSatCaps {
  std::size_t max_atoms = 16;
  std::size_t max_clauses = 4096;
  NonProbCaps nonprob;
  FeasibilityOptions linear;
};

// A clause rewritten over the unknowns P(delta_0) .. P(delta_{2^n - 1}).
struct NormalForm {
  std::vector<CondAtom> atoms;
  std::vector<DeltaAtom> deltas;
  // Rows in order: one per literal, then -P(delta_j) <= 0 for every j, then
  // the two rows of sum_j P(delta_j) = 1, then P(delta_j) <= 0 for every
  // unsatisfiable delta.
  LinearSystem system;
};

// Throws ResourceError when the clause has more than caps.max_atoms
// distinct conditionals.
NormalForm normalize_clause(const Clause& clause, Mode mode, const ProbSatCaps& caps = {});

struct MixtureComponent {
  WorldTable table;
  Rational weight;
  NonProbFormula delta;  // the conjunction the table realizes; T if unnamed
};

struct MixtureBlock {
  Program program;
  Rational weight;
  WorldTable table;
  NonProbFormula delta;
};

struct MixtureModel {
  std::vector<MixtureBlock> blocks;
  Integer common_denominator = 1;
  // Largest square any block uses; the sampler works above it.
  std::size_t aux_base = 0;
  Program program;
};

// One program that draws a block with probability weight_i by rejection
// sampling a number below the common denominator, then runs that block.
// Zero-weight components are dropped. Throws std::invalid_argument unless
// the weights are nonnegative and sum to 1.
MixtureModel synth_model(const std::vector<MixtureComponent>& components);

// Program text preceded by `#` lines describing the blocks.
std::string to_string(const MixtureModel& m);

struct SatWitness {
  MixtureModel model;
  std::size_t clause_index = 0;
  NormalForm normal_form;
  std::vector<Rational> delta_weights;
};

struct DecideOptions {
  ProbSatCaps caps;
  // Drop deltas from the witness one at a time while the system stays
  // feasible.
  bool sparsify = true;
};

// Tries the DNF clauses in order; the first feasible one yields the witness.
std::optional<SatWitness> decide_sat(const ProbFormula& f, Mode mode, const DecideOptions& options = {});

Tri verify_witness(const MixtureModel& m, const ProbFormula& f, unsigned bit_budget, std::uint64_t fuel);

}  // namespace psim
