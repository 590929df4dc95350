#include <algorithm>
#include <map>

#include "psim/errors.hpp"
#include "psim/proofcheck.hpp"

namespace psim {

std::string_view to_string(ProofErrorCode c) noexcept {
  switch (c) {
    case ProofErrorCode::BadSchema: return "BAD_SCHEMA";
    case ProofErrorCode::SideCondition: return "SIDE_CONDITION";
    case ProofErrorCode::BadMp: return "BAD_MP";
    case ProofErrorCode::NotTaut: return "NOT_TAUT";
  }
  return "?";
}

bool is_tautology(const ProbFormula& f, std::size_t max_atoms) {
  const auto atoms = linear_atoms_of(f);
  if (atoms.size() > max_atoms) {
    throw ResourceError("formula has " + std::to_string(atoms.size()) + " distinct inequalities; cap is " +
                        std::to_string(max_atoms));
  }
  const std::uint64_t count = std::uint64_t{1} << atoms.size();
  for (std::uint64_t m = 0; m < count; ++m) {
    const bool ok = f.holds([&](const LinearAtom& a) {
      const auto it = std::find(atoms.begin(), atoms.end(), a);
      return ((m >> static_cast<std::size_t>(it - atoms.begin())) & 1U) != 0;
    });
    if (!ok) return false;
  }
  return true;
}

namespace {

using Kind = ProbFormula::Kind;

struct Failure {
  ProofErrorCode code;
  std::string detail;
};

using Verdict = std::optional<Failure>;

Failure schema(std::string detail) { return {ProofErrorCode::BadSchema, std::move(detail)}; }
Failure side(std::string detail) { return {ProofErrorCode::SideCondition, std::move(detail)}; }

const LinearAtom* as_atom(const ProbFormula& f) { return f.is_leaf() ? &f.leaf() : nullptr; }

// `a -> b`, elaborated as `!a | b`.
bool split_implication(const ProbFormula& f, ProbFormula& a, ProbFormula& b) {
  if (f.kind() != Kind::Or || f.lhs().kind() != Kind::Not) return false;
  a = f.lhs().operand();
  b = f.rhs();
  return true;
}

// `a <-> b`, elaborated as `(a -> b) & (b -> a)`.
bool split_biconditional(const ProbFormula& f, ProbFormula& a, ProbFormula& b) {
  if (f.kind() != Kind::And) return false;
  ProbFormula a1, b1, a2, b2;
  if (!split_implication(f.lhs(), a1, b1) || !split_implication(f.rhs(), b2, a2)) return false;
  if (!(a1 == a2) || !(b1 == b2)) return false;
  a = a1;
  b = b1;
  return true;
}

// `t = c`, elaborated as `t <= c & -t <= -c`. Returns the first atom.
const LinearAtom* as_equality(const ProbFormula& f) {
  if (f.kind() != Kind::And) return nullptr;
  const LinearAtom* a = as_atom(f.lhs());
  const LinearAtom* b = as_atom(f.rhs());
  if (a == nullptr || b == nullptr || !(*b == a->negated())) return nullptr;
  return a;
}

// The equality's atom oriented so its first coefficient is positive.
std::optional<LinearAtom> oriented_equality(const ProbFormula& f) {
  const LinearAtom* a = as_equality(f);
  if (a == nullptr) return std::nullopt;
  if (!a->terms.empty() && a->terms.front().coeff < 0) return a->negated();
  return *a;
}

bool same_formulas(const LinearAtom& a, const LinearAtom& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (!(a.terms[i].formula == b.terms[i].formula)) return false;
  }
  return true;
}

Verdict check_nonneg(const ProbFormula& f) {
  const LinearAtom* a = as_atom(f);
  if (a == nullptr || a->terms.size() != 1 || a->terms[0].coeff != -1 || a->bound != 0) {
    return schema("expected P(phi) >= 0");
  }
  return std::nullopt;
}

Verdict check_norm(const ProbFormula& f) {
  auto e = oriented_equality(f);
  if (!e || e->terms.size() != 1 || e->terms[0].coeff != 1 || e->bound != 1 ||
      e->terms[0].formula.kind() != NonProbFormula::Kind::Top) {
    return schema("expected P(T) = 1");
  }
  return std::nullopt;
}

Verdict check_add(const ProbFormula& f) {
  auto e = oriented_equality(f);
  if (!e || e->bound != 0 || e->terms.size() != 3 || e->terms[0].coeff != 1 || e->terms[1].coeff != 1 ||
      e->terms[2].coeff != -1) {
    return schema("expected P(phi & psi) + P(phi & !psi) = P(phi)");
  }
  const NonProbFormula& both = e->terms[0].formula;
  const NonProbFormula& but = e->terms[1].formula;
  const NonProbFormula& phi = e->terms[2].formula;
  using NK = NonProbFormula::Kind;
  if (both.kind() != NK::And || but.kind() != NK::And || but.rhs().kind() != NK::Not || !(both.lhs() == phi) ||
      !(but.lhs() == phi) || !(but.rhs().operand() == both.rhs())) {
    return schema("expected P(phi & psi) + P(phi & !psi) = P(phi)");
  }
  return std::nullopt;
}

Verdict check_dist(const ProbFormula& f, Mode mode, const NonProbCaps& caps) {
  auto e = oriented_equality(f);
  if (!e || e->bound != 0 || e->terms.size() != 2 || e->terms[0].coeff != 1 || e->terms[1].coeff != -1) {
    return schema("expected P(phi) = P(psi)");
  }
  try {
    if (!equiv_nonprob(e->terms[0].formula, e->terms[1].formula, mode, caps)) {
      return side(to_string(e->terms[0].formula) + " and " + to_string(e->terms[1].formula) +
                  " are not equivalent in mode " + std::string(to_string(mode)));
    }
  } catch (const ResourceError& err) {
    return side(std::string("equivalence undecided: ") + err.what());
  }
  return std::nullopt;
}

Verdict check_zero(const ProbFormula& f) {
  ProbFormula x, y;
  const LinearAtom* a = nullptr;
  const LinearAtom* b = nullptr;
  if (split_biconditional(f, x, y)) {
    a = as_atom(x);
    b = as_atom(y);
  }
  if (a == nullptr || b == nullptr) return schema("expected an inequality <-> the same with one more term");
  if (a->terms.size() > b->terms.size()) std::swap(a, b);
  if (b->terms.size() != a->terms.size() + 1 || a->bound != b->bound ||
      !std::equal(a->terms.begin(), a->terms.end(), b->terms.begin())) {
    return schema("expected an inequality <-> the same with one more term");
  }
  if (b->terms.back().coeff != 0) return side("appended term must have coefficient 0");
  return std::nullopt;
}

Verdict check_perm(const ProbFormula& f) {
  ProbFormula x, y;
  const LinearAtom* a = nullptr;
  const LinearAtom* b = nullptr;
  if (split_biconditional(f, x, y)) {
    a = as_atom(x);
    b = as_atom(y);
  }
  if (a == nullptr || b == nullptr || a->terms.size() != b->terms.size() || a->bound != b->bound) {
    return schema("expected two inequalities with the same bound and term count");
  }
  std::vector<bool> used(b->terms.size(), false);
  for (const auto& t : a->terms) {
    bool matched = false;
    for (std::size_t j = 0; j < b->terms.size() && !matched; ++j) {
      if (!used[j] && b->terms[j] == t) matched = used[j] = true;
    }
    if (!matched) return side("terms are not a permutation of each other");
  }
  return std::nullopt;
}

Verdict check_addineq(const ProbFormula& f) {
  ProbFormula premise, conclusion;
  const Failure bad = schema("expected (s <= c & s' <= c') -> (s + s') <= c + c'");
  if (!split_implication(f, premise, conclusion) || premise.kind() != Kind::And) return bad;
  const LinearAtom* a = as_atom(premise.lhs());
  const LinearAtom* b = as_atom(premise.rhs());
  const LinearAtom* s = as_atom(conclusion);
  if (a == nullptr || b == nullptr || s == nullptr || !same_formulas(*a, *b) || !same_formulas(*a, *s)) return bad;
  for (std::size_t i = 0; i < a->terms.size(); ++i) {
    if (s->terms[i].coeff != a->terms[i].coeff + b->terms[i].coeff) return bad;
  }
  if (s->bound != a->bound + b->bound) return bad;
  return std::nullopt;
}

Verdict check_mult(const ProbFormula& f) {
  ProbFormula x, y;
  const Failure bad = schema("expected s <= c -> b*s <= b*c");
  if (!split_implication(f, x, y)) return bad;
  const LinearAtom* a = as_atom(x);
  const LinearAtom* s = as_atom(y);
  if (a == nullptr || s == nullptr || !same_formulas(*a, *s)) return bad;

  std::vector<std::pair<Integer, Integer>> pairs;
  for (std::size_t i = 0; i < a->terms.size(); ++i) pairs.emplace_back(a->terms[i].coeff, s->terms[i].coeff);
  pairs.emplace_back(a->bound, s->bound);
  std::optional<Rational> factor;
  for (const auto& [from, to] : pairs) {
    if (from == 0) {
      if (to != 0) return bad;
      continue;
    }
    Rational q(to, from);
    q.canonicalize();
    if (factor && *factor != q) return bad;
    factor = q;
  }
  if (factor && *factor <= 0) return side("multiplier must be positive, got " + to_string(*factor));
  return std::nullopt;
}

Verdict check_dichotomy(const ProbFormula& f) {
  const Failure bad = schema("expected s <= c | s >= c");
  if (f.kind() != Kind::Or) return bad;
  const LinearAtom* a = as_atom(f.lhs());
  const LinearAtom* b = as_atom(f.rhs());
  if (a == nullptr || b == nullptr || !(*b == a->negated())) return bad;
  return std::nullopt;
}

Verdict check_mono(const ProbFormula& f) {
  ProbFormula x, y;
  const Failure bad = schema("expected s <= c -> s < b");
  // s < b is elaborated as !(-s <= -b).
  if (!split_implication(f, x, y) || y.kind() != Kind::Not) return bad;
  const LinearAtom* a = as_atom(x);
  const LinearAtom* n = as_atom(y.operand());
  if (a == nullptr || n == nullptr || !same_formulas(*a, *n)) return bad;
  for (std::size_t i = 0; i < a->terms.size(); ++i) {
    if (n->terms[i].coeff != -a->terms[i].coeff) return bad;
  }
  const Integer b = -n->bound;
  if (!(b > a->bound)) return side("needs b > c, got b = " + b.get_str() + ", c = " + a->bound.get_str());
  return std::nullopt;
}

}  // namespace

std::optional<ProofError> check_proof(const Proof& p, const ProofCheckOptions& options) {
  std::map<std::size_t, const ProbFormula*> earlier;
  for (const auto& line : p.lines) {
    const ProbFormula& f = line.formula;
    Verdict v;
    switch (line.justification.rule) {
      case Rule::Taut:
        try {
          if (!is_tautology(f, options.max_taut_atoms)) v = Failure{ProofErrorCode::NotTaut, "not a tautology"};
        } catch (const ResourceError& e) {
          v = Failure{ProofErrorCode::NotTaut, e.what()};
        }
        break;
      case Rule::MP: {
        const auto i = earlier.find(line.justification.first);
        const auto j = earlier.find(line.justification.second);
        if (i == earlier.end() || j == earlier.end()) {
          v = Failure{ProofErrorCode::BadMp, "mp cites a line that does not precede it"};
          break;
        }
        auto follows = [&](const ProbFormula& premise, const ProbFormula& rule) {
          ProbFormula a, b;
          return split_implication(rule, a, b) && a == premise && b == f;
        };
        if (!follows(*i->second, *j->second) && !follows(*j->second, *i->second)) {
          v = Failure{ProofErrorCode::BadMp, "cited lines are not A and A -> this line"};
        }
        break;
      }
      case Rule::NonNeg: v = check_nonneg(f); break;
      case Rule::Norm: v = check_norm(f); break;
      case Rule::Add: v = check_add(f); break;
      case Rule::Dist: v = check_dist(f, p.mode, options.nonprob); break;
      case Rule::Zero: v = check_zero(f); break;
      case Rule::Perm: v = check_perm(f); break;
      case Rule::AddIneq: v = check_addineq(f); break;
      case Rule::Mult: v = check_mult(f); break;
      case Rule::Dichotomy: v = check_dichotomy(f); break;
      case Rule::Mono: v = check_mono(f); break;
    }
    if (v) return ProofError{line.number, v->code, std::move(v->detail)};
    earlier[line.number] = &line.formula;
  }
  return std::nullopt;
}

}  // namespace psim
