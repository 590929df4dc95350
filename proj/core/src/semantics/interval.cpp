#include <string>

#include "psim/errors.hpp"
#include "psim/semantics.hpp"
#include "semantics/board.hpp"

namespace psim {
namespace {

// Depth-first walk of the stream-prefix tree. A node is a leaf for a formula
// once the formula is decided there; undecided nodes split on the next bit
// while some machine is waiting for it and the budget allows.
class PrefixTree {
 public:
  PrefixTree(std::span<const NonProbFormula> fs, unsigned budget, std::uint64_t fuel)
      : formulas_(fs), budget_(budget), fuel_(fuel), true_mass_(fs.size(), 0), false_mass_(fs.size(), 0) {}

  void explore(detail::Board board, Bits& prefix, std::vector<std::size_t> open) {
    board.refresh(prefix, fuel_);
    const unsigned depth = static_cast<unsigned>(prefix.size());
    const std::uint64_t mass = std::uint64_t{1} << (budget_ - depth);
    std::vector<std::size_t> still_open;
    for (std::size_t k : open) {
      switch (board.evaluate(formulas_[k])) {
        case Tri::True: true_mass_[k] += mass; break;
        case Tri::False: false_mass_[k] += mass; break;
        case Tri::Unknown: still_open.push_back(k); break;
      }
    }
    if (still_open.empty() || depth >= budget_ || !board.wants_bit()) return;
    for (bool bit : {false, true}) {
      prefix.push_back(bit);
      explore(board, prefix, still_open);
      prefix.pop_back();
    }
  }

  ProbInterval interval(std::size_t k) const {
    Integer total;
    mpz_ui_pow_ui(total.get_mpz_t(), 2, budget_);
    Rational lo(Integer(std::to_string(true_mass_[k])), total);
    Rational false_part(Integer(std::to_string(false_mass_[k])), total);
    lo.canonicalize();
    false_part.canonicalize();
    return {lo, Rational(1) - false_part};
  }

 private:
  std::span<const NonProbFormula> formulas_;
  unsigned budget_;
  std::uint64_t fuel_;
  std::vector<std::uint64_t> true_mass_;
  std::vector<std::uint64_t> false_mass_;
};

}  // namespace

std::vector<ProbInterval> prob_intervals(const Runnable& p, std::span<const NonProbFormula> fs,
                                         unsigned bit_budget, std::uint64_t fuel, unsigned max_bit_budget) {
  if (bit_budget > max_bit_budget || bit_budget > kHardMaxBitBudget) {
    throw ResourceError("bit budget " + std::to_string(bit_budget) + " exceeds the configured maximum " +
                        std::to_string(std::min(max_bit_budget, kHardMaxBitBudget)));
  }
  PrefixTree tree(fs, bit_budget, fuel);
  std::vector<std::size_t> open(fs.size());
  for (std::size_t k = 0; k < fs.size(); ++k) open[k] = k;
  Bits prefix;
  tree.explore(detail::Board(p, fs), prefix, std::move(open));
  std::vector<ProbInterval> out;
  out.reserve(fs.size());
  for (std::size_t k = 0; k < fs.size(); ++k) out.push_back(tree.interval(k));
  return out;
}

ProbInterval prob_interval(const Runnable& p, const NonProbFormula& f, unsigned bit_budget, std::uint64_t fuel,
                           unsigned max_bit_budget) {
  return prob_intervals(p, std::span<const NonProbFormula>(&f, 1), bit_budget, fuel, max_bit_budget).front();
}

}  // namespace psim
