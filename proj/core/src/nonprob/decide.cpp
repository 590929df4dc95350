#include <algorithm>
#include <set>

#include "psim/errors.hpp"
#include "psim/nonprob_logic.hpp"

namespace psim {
namespace {

// Candidate outcomes for one antecedent, one per distinct truth pattern of
// the conditionals that share it. The first outcome in enumeration order
// represents each pattern, so depth-first search over representatives finds
// the same first table as search over every outcome.
struct Choices {
  InterventionSpec antecedent;
  std::vector<std::optional<Assignment>> outcomes;
};

Choices choices_for(const InterventionSpec& antecedent, const std::vector<CondAtom>& atoms,
                    const std::vector<std::size_t>& vars, Mode mode) {
  std::vector<PropFormula> consequents;
  for (const auto& a : atoms) {
    if (a.antecedent == antecedent) consequents.push_back(a.consequent);
  }
  std::vector<std::size_t> free;
  for (auto i : vars) {
    if (!antecedent.holds(i)) free.push_back(i);
  }

  Choices out{antecedent, {}};
  std::set<std::vector<bool>> patterns;
  if (mode == Mode::M) {
    out.outcomes.emplace_back(std::nullopt);
    patterns.insert(std::vector<bool>(consequents.size(), false));
  }
  const std::uint64_t count = std::uint64_t{1} << free.size();
  for (std::uint64_t m = 0; m < count; ++m) {
    Assignment a;
    for (const auto& [i, v] : antecedent.entries()) a[i] = v;
    for (std::size_t k = 0; k < free.size(); ++k) a[free[k]] = ((m >> k) & 1U) != 0;
    std::vector<bool> pattern;
    pattern.reserve(consequents.size());
    for (const auto& c : consequents) pattern.push_back(c.holds([&](std::size_t i) { return a.at(i); }));
    if (patterns.insert(pattern).second) out.outcomes.emplace_back(std::move(a));
  }
  return out;
}

class Search {
 public:
  Search(const NonProbFormula& f, std::vector<Choices> choices, std::vector<std::size_t> vars)
      : f_(f), choices_(std::move(choices)) {
    table_.mentioned_vars = std::move(vars);
  }

  std::optional<WorldTable> run() {
    if (descend(0)) return table_;
    return std::nullopt;
  }

 private:
  bool descend(std::size_t level) {
    const Tri v = table_.evaluate(f_);
    if (v == Tri::False) return false;
    if (level == choices_.size()) return v == Tri::True;
    for (const auto& o : choices_[level].outcomes) {
      table_.rows.push_back(WorldRow{choices_[level].antecedent, o});
      if (descend(level + 1)) return true;
      table_.rows.pop_back();
    }
    return false;
  }

  const NonProbFormula& f_;
  std::vector<Choices> choices_;
  WorldTable table_;
};

}  // namespace

std::optional<WorldTable> sat_nonprob(const NonProbFormula& f, Mode mode, const NonProbCaps& caps) {
  const auto atoms = cond_atoms_of(f);
  const auto vars = mentioned_indices(f);
  std::vector<InterventionSpec> antecedents;
  for (const auto& a : atoms) {
    if (antecedents.empty() || !(antecedents.back() == a.antecedent)) antecedents.push_back(a.antecedent);
  }
  if (vars.size() > caps.max_vars) {
    throw ResourceError("formula mentions " + std::to_string(vars.size()) + " squares; cap is " +
                        std::to_string(caps.max_vars));
  }
  if (antecedents.size() > caps.max_antecedents) {
    throw ResourceError("formula has " + std::to_string(antecedents.size()) + " antecedents; cap is " +
                        std::to_string(caps.max_antecedents));
  }
  std::vector<Choices> choices;
  choices.reserve(antecedents.size());
  for (const auto& ante : antecedents) choices.push_back(choices_for(ante, atoms, vars, mode));
  return Search(f, std::move(choices), vars).run();
}

bool valid_nonprob(const NonProbFormula& f, Mode mode, const NonProbCaps& caps) {
  return !sat_nonprob(NonProbFormula::make_not(f), mode, caps).has_value();
}

bool equiv_nonprob(const NonProbFormula& f, const NonProbFormula& g, Mode mode, const NonProbCaps& caps) {
  return valid_nonprob(NonProbFormula::make_iff(f, g), mode, caps);
}

}  // namespace psim
