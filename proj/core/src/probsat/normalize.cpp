#include "psim/errors.hpp"
#include "psim/probsat.hpp"

namespace psim {

std::vector<bool> delta_signs(std::size_t j, std::size_t n) {
  std::vector<bool> signs(n);
  for (std::size_t i = 0; i < n; ++i) signs[i] = ((j >> (n - 1 - i)) & 1U) == 0;
  return signs;
}

NonProbFormula delta_formula(const std::vector<CondAtom>& atoms, const std::vector<bool>& signs) {
  if (atoms.empty()) return NonProbFormula::make_top();
  auto literal = [&](std::size_t i) {
    auto a = NonProbFormula::make_atom(atoms[i]);
    return signs[i] ? a : NonProbFormula::make_not(a);
  };
  NonProbFormula out = literal(0);
  for (std::size_t i = 1; i < atoms.size(); ++i) out = NonProbFormula::make_and(out, literal(i));
  return out;
}

bool holds_under(const NonProbFormula& f, const std::vector<CondAtom>& atoms, const std::vector<bool>& signs) {
  return f.holds([&](const CondAtom& a) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i] == a) return static_cast<bool>(signs[i]);
    }
    return false;
  });
}

NormalForm normalize_clause(const Clause& clause, Mode mode, const ProbSatCaps& caps) {
  NormalForm nf;
  nf.atoms = cond_atoms_of(clause);
  const std::size_t n = nf.atoms.size();
  if (n > caps.max_atoms) {
    throw ResourceError("clause has " + std::to_string(n) + " conditionals; cap is " +
                        std::to_string(caps.max_atoms));
  }
  const std::size_t m = std::size_t{1} << n;
  nf.deltas.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    DeltaAtom d{delta_signs(j, n), std::nullopt};
    d.sat_witness = sat_nonprob(delta_formula(nf.atoms, d.signs), mode, caps.nonprob);
    nf.deltas.push_back(std::move(d));
  }

  nf.system.n_vars = m;
  for (const auto& lit : clause) {
    std::vector<Rational> coeffs(m, Rational(0));
    for (const auto& term : lit.atom.terms) {
      for (std::size_t j = 0; j < m; ++j) {
        if (holds_under(term.formula, nf.atoms, nf.deltas[j].signs)) coeffs[j] += term.coeff;
      }
    }
    if (lit.positive) {
      nf.system.add(std::move(coeffs), Rational(lit.atom.bound));
    } else {
      for (auto& c : coeffs) c = -c;
      nf.system.add(std::move(coeffs), Rational(-lit.atom.bound), true);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Rational> coeffs(m, Rational(0));
    coeffs[j] = -1;
    nf.system.add(std::move(coeffs), Rational(0));
  }
  nf.system.add_equality(std::vector<Rational>(m, Rational(1)), Rational(1));
  for (std::size_t j = 0; j < m; ++j) {
    if (nf.deltas[j].satisfiable()) continue;
    std::vector<Rational> coeffs(m, Rational(0));
    coeffs[j] = 1;
    nf.system.add(std::move(coeffs), Rational(0));
  }
  return nf;
}

}  // namespace psim
