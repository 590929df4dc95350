#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "psim/formula.hpp"
#include "psim/numeric.hpp"

namespace psim {

// Propositional formulas over tape squares X_i.
using PropFormula = Formula<std::size_t>;

// A finite intervention: tape squares held to fixed bits. Entries are kept
// sorted by strictly increasing index; the empty spec is the empty
// intervention.
class InterventionSpec {
 public:
  using Entry = std::pair<std::size_t, bool>;

  InterventionSpec() = default;

  // Throws std::invalid_argument unless indices are strictly increasing.
  explicit InterventionSpec(std::vector<Entry> entries);

  // Sorts the entries; throws std::invalid_argument on a repeated index.
  static InterventionSpec from_unsorted(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  bool holds(std::size_t index) const noexcept;
  // Held value; only meaningful when holds(index).
  bool value(std::size_t index) const noexcept;

  // The spec as a conjunction of literals (T when empty).
  PropFormula as_formula() const;

  friend bool operator==(const InterventionSpec&, const InterventionSpec&) = default;
  friend auto operator<=>(const InterventionSpec&, const InterventionSpec&) = default;

 private:
  std::vector<Entry> entries_;
};

// <antecedent> consequent
struct CondAtom {
  InterventionSpec antecedent;
  PropFormula consequent;

  friend bool operator==(const CondAtom&, const CondAtom&) = default;
};

// Boolean combinations of conditionals (plus T and F).
using NonProbFormula = Formula<CondAtom>;

struct LinearTerm {
  Integer coeff;
  NonProbFormula formula;

  friend bool operator==(const LinearTerm& a, const LinearTerm& b) {
    return a.coeff == b.coeff && a.formula == b.formula;
  }
};

// sum_i coeff_i * P(formula_i) <= bound
struct LinearAtom {
  std::vector<LinearTerm> terms;
  Integer bound;

  // The atom with every coefficient and the bound negated: -sum <= -bound.
  LinearAtom negated() const;

  friend bool operator==(const LinearAtom& a, const LinearAtom& b) {
    return a.bound == b.bound && a.terms == b.terms;
  }
};

using ProbFormula = Formula<LinearAtom>;

// ---------------------------------------------------------------------------
// Printing. Output is canonical: parse(print(f)) == f.

std::string to_string(const InterventionSpec& spec);
std::string to_string(const PropFormula& f);
std::string to_string(const CondAtom& a);
std::string to_string(const NonProbFormula& f);
std::string to_string(const LinearAtom& a);
std::string to_string(const ProbFormula& f);

// ---------------------------------------------------------------------------
// Parsing. All parsers throw ParseError carrying a byte offset.

PropFormula parse_prop_formula(std::string_view text);
NonProbFormula parse_nonprob_formula(std::string_view text);
ProbFormula parse_prob_formula(std::string_view text);
// Comma-separated literals, e.g. "X0,!X2" or "X0:=1, X2:=0"; may be empty.
InterventionSpec parse_intervention_spec(std::string_view text);

// ---------------------------------------------------------------------------
// Normal forms.

struct Literal {
  LinearAtom atom;
  bool positive = true;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.positive == b.positive && a.atom == b.atom;
  }
};

using Clause = std::vector<Literal>;

// Disjunctive normal form over linear atoms. Clauses appear in source order;
// duplicate literals within a clause are merged. Throws ResourceError when
// more than `max_clauses` clauses would be produced.
std::vector<Clause> to_dnf(const ProbFormula& f,
                           std::size_t max_clauses = std::numeric_limits<std::size_t>::max());

// Distinct conditionals occurring anywhere in `f`, ordered by the printed
// form of the antecedent and then of the consequent.
std::vector<CondAtom> cond_atoms_of(const NonProbFormula& f);
std::vector<CondAtom> cond_atoms_of(const ProbFormula& f);
std::vector<CondAtom> cond_atoms_of(const Clause& clause);

// Ordering used by cond_atoms_of.
bool cond_atom_less(const CondAtom& a, const CondAtom& b);

// Every tape index mentioned by `f` (antecedents and consequents), ascending.
std::vector<std::size_t> mentioned_indices(const NonProbFormula& f);
std::vector<std::size_t> mentioned_indices(const PropFormula& f);

// Distinct linear atoms of `f` in first-occurrence order.
std::vector<LinearAtom> linear_atoms_of(const ProbFormula& f);

}  // namespace psim
