#include <algorithm>

#include "psim/errors.hpp"
#include "psim/semantics.hpp"
#include "semantics/board.hpp"

namespace psim {

std::string to_string(const ProbInterval& i) { return "[" + to_string(i.lo) + ", " + to_string(i.hi) + "]"; }

Tri eval_fixed(const Runnable& p, const NonProbFormula& f, const Bits& prefix, std::uint64_t fuel) {
  detail::Board board(p, std::span<const NonProbFormula>(&f, 1));
  board.refresh(prefix, fuel);
  return board.evaluate(f);
}

std::vector<NonProbFormula> probability_terms(const ProbFormula& f) {
  std::vector<NonProbFormula> out;
  f.for_each_leaf([&](const LinearAtom& a) {
    for (const auto& t : a.terms) {
      if (std::find(out.begin(), out.end(), t.formula) == out.end()) out.push_back(t.formula);
    }
  });
  return out;
}

Tri linear_verdict(const LinearAtom& atom, std::span<const TermInterval> terms) {
  Rational lowest = 0;
  Rational highest = 0;
  for (const auto& t : atom.terms) {
    auto it = std::find_if(terms.begin(), terms.end(), [&](const TermInterval& ti) { return ti.formula == t.formula; });
    if (it == terms.end()) return Tri::Unknown;
    const Rational a(t.coeff);
    if (t.coeff >= 0) {
      lowest += a * it->interval.lo;
      highest += a * it->interval.hi;
    } else {
      lowest += a * it->interval.hi;
      highest += a * it->interval.lo;
    }
  }
  const Rational bound(atom.bound);
  if (highest <= bound) return Tri::True;
  if (lowest > bound) return Tri::False;
  return Tri::Unknown;
}

ModelReport evaluate(const Runnable& p, const ProbFormula& f, unsigned bit_budget, std::uint64_t fuel,
                     unsigned max_bit_budget) {
  ModelReport report;
  const auto formulas = probability_terms(f);
  const auto intervals = prob_intervals(p, formulas, bit_budget, fuel, max_bit_budget);
  for (std::size_t k = 0; k < formulas.size(); ++k) report.terms.push_back({formulas[k], intervals[k]});
  report.verdict = f.evaluate([&](const LinearAtom& a) { return linear_verdict(a, report.terms); });
  return report;
}

Tri models(const Runnable& p, const ProbFormula& f, unsigned bit_budget, std::uint64_t fuel,
           unsigned max_bit_budget) {
  return evaluate(p, f, bit_budget, fuel, max_bit_budget).verdict;
}

}  // namespace psim
