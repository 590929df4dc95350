#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "psim/numeric.hpp"
#include "psim/syntax.hpp"
#include "psim/tri.hpp"
#include "psim/vm.hpp"

namespace psim {

// Exact bounds lo <= P <= hi on the probability of a formula.
struct ProbInterval {
  Rational lo = 0;
  Rational hi = 1;

  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }

  friend bool operator==(const ProbInterval&, const ProbInterval&) = default;
};

std::string to_string(const ProbInterval& i);

inline constexpr unsigned kDefaultMaxBitBudget = 24;
// Leaf measures are accumulated in 64-bit units of 2^-budget.
inline constexpr unsigned kHardMaxBitBudget = 62;

// Truth of `f` when the random stream starts with `prefix`. True/False are
// final for every stream extending the prefix; Unknown means some needed
// run ran out of fuel or asked for a bit past the prefix.
Tri eval_fixed(const Runnable& p, const NonProbFormula& f, const Bits& prefix, std::uint64_t fuel);

// Interval for P(f) from the prefix tree of depth at most `bit_budget`.
// Throws ResourceError when bit_budget exceeds `max_bit_budget`.
ProbInterval prob_interval(const Runnable& p, const NonProbFormula& f, unsigned bit_budget, std::uint64_t fuel,
                           unsigned max_bit_budget = kDefaultMaxBitBudget);

// Same as calling prob_interval on each formula, sharing one prefix tree.
std::vector<ProbInterval> prob_intervals(const Runnable& p, std::span<const NonProbFormula> fs,
                                         unsigned bit_budget, std::uint64_t fuel,
                                         unsigned max_bit_budget = kDefaultMaxBitBudget);

struct MonteCarloEstimate {
  Rational p_hat;  // true_count / samples
  std::size_t samples = 0;
  std::size_t true_count = 0;
  std::size_t false_count = 0;
  std::size_t unknown_count = 0;
  // Two-sided 95% Hoeffding half-width: sqrt(ln(2/0.05) / (2 n)).
  double half_width = 0.0;
};

// Samples streams lazily from a seeded generator; each stream is extended
// one bit at a time, up to `bit_cap` bits, while the formula is undecided.
MonteCarloEstimate mc_estimate(const Runnable& p, const NonProbFormula& f, std::size_t samples,
                               std::uint64_t fuel, std::size_t bit_cap, std::uint64_t seed);

double hoeffding_half_width(std::size_t samples, double confidence = 0.95);

struct TermInterval {
  NonProbFormula formula;
  ProbInterval interval;
};

struct ModelReport {
  Tri verdict = Tri::Unknown;
  std::vector<TermInterval> terms;  // distinct P-terms in first-occurrence order
};

// Interval-arithmetic verdict of a linear atom, each P-term ranging
// independently over its interval.
Tri linear_verdict(const LinearAtom& atom, std::span<const TermInterval> terms);

ModelReport evaluate(const Runnable& p, const ProbFormula& f, unsigned bit_budget, std::uint64_t fuel,
                     unsigned max_bit_budget = kDefaultMaxBitBudget);

// Whether the program satisfies the L formula, soundly three-valued.
Tri models(const Runnable& p, const ProbFormula& f, unsigned bit_budget, std::uint64_t fuel,
           unsigned max_bit_budget = kDefaultMaxBitBudget);

// Distinct P-term formulas of `f`, first-occurrence order.
std::vector<NonProbFormula> probability_terms(const ProbFormula& f);

}  // namespace psim
