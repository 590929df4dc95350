#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "psim/semantics.hpp"

namespace psim::detail {

// The intervened machines a set of formulas needs, one per distinct
// antecedent, with their most recent outcome on a shared stream prefix.
class Board {
 public:
  Board(const Runnable& p, std::span<const NonProbFormula> fs) {
    for (const auto& f : fs) {
      f.for_each_leaf([&](const CondAtom& a) {
        if (slot_.emplace(a.antecedent, machines_.size()).second) machines_.push_back(intervene(p, a.antecedent));
      });
    }
    outcomes_.resize(machines_.size());
  }

  // Runs every machine whose outcome is missing or still waiting on a bit.
  void refresh(const Bits& prefix, std::uint64_t fuel) {
    for (std::size_t k = 0; k < machines_.size(); ++k) {
      if (!outcomes_[k] || std::holds_alternative<BitDemand>(*outcomes_[k])) {
        outcomes_[k] = run(machines_[k], prefix, fuel);
      }
    }
  }

  bool wants_bit() const {
    for (const auto& o : outcomes_) {
      if (o && std::holds_alternative<BitDemand>(*o)) return true;
    }
    return false;
  }

  Tri value(const CondAtom& a) const {
    const auto& o = outcomes_[slot_.at(a.antecedent)];
    const auto* h = o ? std::get_if<Halted>(&*o) : nullptr;
    if (h == nullptr) return Tri::Unknown;
    return from_bool(a.consequent.holds([h](std::size_t i) { return h->value(i); }));
  }

  Tri evaluate(const NonProbFormula& f) const {
    return f.evaluate([this](const CondAtom& a) { return value(a); });
  }

 private:
  std::map<InterventionSpec, std::size_t> slot_;
  std::vector<Runnable> machines_;
  std::vector<std::optional<RunOutcome>> outcomes_;
};

}  // namespace psim::detail
