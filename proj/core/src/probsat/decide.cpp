#include <algorithm>

#include "psim/probsat.hpp"

namespace psim {
namespace {

// Greedily pins nonzero deltas to zero while the system stays feasible.
std::vector<Rational> sparsify(LinearSystem system, std::vector<Rational> x, const FeasibilityOptions& options) {
  for (std::size_t j = 0; j < system.n_vars; ++j) {
    if (x[j] == 0) continue;
    LinearSystem trial = system;
    std::vector<Rational> coeffs(system.n_vars, Rational(0));
    coeffs[j] = 1;
    trial.add(std::move(coeffs), Rational(0));
    FeasibilityOptions relaxed = options;
    relaxed.max_rows = std::max(options.max_rows, trial.rows.size());
    if (auto y = feasible(trial, relaxed)) {
      system = std::move(trial);
      x = std::move(*y);
    }
  }
  return x;
}

}  // namespace

std::optional<SatWitness> decide_sat(const ProbFormula& f, Mode mode, const DecideOptions& options) {
  const auto clauses = to_dnf(f, options.caps.max_clauses);
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    NormalForm nf = normalize_clause(clauses[c], mode, options.caps);
    auto x = feasible(nf.system, options.caps.linear);
    if (!x) continue;
    if (options.sparsify) *x = sparsify(nf.system, std::move(*x), options.caps.linear);

    std::vector<MixtureComponent> components;
    for (std::size_t j = 0; j < nf.deltas.size(); ++j) {
      if ((*x)[j] == 0) continue;
      // Unsatisfiable deltas are pinned to zero by the system.
      components.push_back(
          MixtureComponent{*nf.deltas[j].sat_witness, (*x)[j], delta_formula(nf.atoms, nf.deltas[j].signs)});
    }
    SatWitness w{synth_model(components), c, std::move(nf), std::move(*x)};
    return w;
  }
  return std::nullopt;
}

}  // namespace psim
