#include "support/generators.hpp"

#include <algorithm>

namespace psim::testing {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

long pick_signed(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

bool coin(Rng& rng) { return (rng() & 1U) != 0; }

PropFormula random_prop(Rng& rng, std::size_t vars, int depth) {
  if (depth <= 0 || pick(rng, 0, 3) == 0) {
    if (pick(rng, 0, 9) == 0) return coin(rng) ? PropFormula::make_top() : PropFormula::make_bottom();
    return PropFormula::make_atom(pick(rng, 0, vars - 1));
  }
  switch (pick(rng, 0, 2)) {
    case 0: return PropFormula::make_not(random_prop(rng, vars, depth - 1));
    case 1: return PropFormula::make_and(random_prop(rng, vars, depth - 1), random_prop(rng, vars, depth - 1));
    default: return PropFormula::make_or(random_prop(rng, vars, depth - 1), random_prop(rng, vars, depth - 1));
  }
}

InterventionSpec random_spec(Rng& rng, std::size_t vars, std::size_t max_size) {
  std::vector<std::size_t> idx(vars);
  for (std::size_t i = 0; i < vars; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  const std::size_t size = pick(rng, 0, std::min(max_size, vars));
  std::vector<InterventionSpec::Entry> entries;
  for (std::size_t k = 0; k < size; ++k) entries.emplace_back(idx[k], coin(rng));
  return InterventionSpec::from_unsorted(std::move(entries));
}

CondAtom random_cond(Rng& rng, std::size_t vars, std::size_t max_antecedent, int depth) {
  return CondAtom{random_spec(rng, vars, max_antecedent), random_prop(rng, vars, depth)};
}

std::vector<CondAtom> random_pool(Rng& rng, std::size_t count, std::size_t vars, std::size_t max_antecedent) {
  std::vector<CondAtom> pool;
  for (int attempts = 0; pool.size() < count && attempts < 1000; ++attempts) {
    CondAtom a = random_cond(rng, vars, max_antecedent);
    if (std::find(pool.begin(), pool.end(), a) == pool.end()) pool.push_back(std::move(a));
  }
  std::sort(pool.begin(), pool.end(), cond_atom_less);
  return pool;
}

NonProbFormula random_nonprob(Rng& rng, const std::vector<CondAtom>& pool, int depth, bool constants) {
  if (depth <= 0 || pick(rng, 0, 3) == 0) {
    if (constants && pick(rng, 0, 7) == 0) {
      return coin(rng) ? NonProbFormula::make_top() : NonProbFormula::make_bottom();
    }
    return NonProbFormula::make_atom(pool[pick(rng, 0, pool.size() - 1)]);
  }
  switch (pick(rng, 0, 2)) {
    case 0: return NonProbFormula::make_not(random_nonprob(rng, pool, depth - 1, constants));
    case 1:
      return NonProbFormula::make_and(random_nonprob(rng, pool, depth - 1, constants),
                                      random_nonprob(rng, pool, depth - 1, constants));
    default:
      return NonProbFormula::make_or(random_nonprob(rng, pool, depth - 1, constants),
                                     random_nonprob(rng, pool, depth - 1, constants));
  }
}

LinearAtom random_linear_atom(Rng& rng, const std::vector<CondAtom>& pool, const ProbShape& shape) {
  LinearAtom a;
  const std::size_t n = pick(rng, 1, shape.max_terms);
  for (std::size_t i = 0; i < n; ++i) {
    a.terms.push_back(LinearTerm{Integer(pick_signed(rng, shape.coeff_lo, shape.coeff_hi)),
                                 random_nonprob(rng, pool, shape.term_depth)});
  }
  a.bound = Integer(pick_signed(rng, shape.bound_lo, shape.bound_hi));
  return a;
}

ProbFormula random_prob(Rng& rng, const std::vector<CondAtom>& pool, const ProbShape& shape) {
  struct Build {
    Rng& rng;
    const std::vector<CondAtom>& pool;
    const ProbShape& shape;
    ProbFormula operator()(int depth) {
      if (depth <= 0 || pick(rng, 0, 2) == 0) {
        auto leaf = ProbFormula::make_atom(random_linear_atom(rng, pool, shape));
        return coin(rng) ? ProbFormula::make_not(leaf) : leaf;
      }
      switch (pick(rng, 0, 2)) {
        case 0: return ProbFormula::make_not((*this)(depth - 1));
        case 1: return ProbFormula::make_and((*this)(depth - 1), (*this)(depth - 1));
        default: return ProbFormula::make_or((*this)(depth - 1), (*this)(depth - 1));
      }
    }
  };
  return Build{rng, pool, shape}(shape.formula_depth);
}

Expr random_expr(Rng& rng, std::size_t vars, int depth) {
  if (depth <= 0 || pick(rng, 0, 2) == 0) {
    if (pick(rng, 0, 7) == 0) return Expr::constant(coin(rng));
    return Expr::read(pick(rng, 0, vars - 1));
  }
  switch (pick(rng, 0, 3)) {
    case 0: return Expr::negate(random_expr(rng, vars, depth - 1));
    case 1: return Expr::conj(random_expr(rng, vars, depth - 1), random_expr(rng, vars, depth - 1));
    case 2: return Expr::disj(random_expr(rng, vars, depth - 1), random_expr(rng, vars, depth - 1));
    default: return Expr::exclusive(random_expr(rng, vars, depth - 1), random_expr(rng, vars, depth - 1));
  }
}

namespace {

Block loop_free_block(Rng& rng, std::size_t vars, std::size_t& flips, std::size_t& budget, int depth) {
  Block b;
  const std::size_t n = pick(rng, 1, 4);
  for (std::size_t k = 0; k < n && budget > 0; ++k) {
    --budget;
    const std::size_t choice = pick(rng, 0, 9);
    if (choice < 4 && flips > 0) {
      --flips;
      b.push_back(Stmt::flip(pick(rng, 0, vars - 1)));
    } else if (choice < 7 || depth <= 0) {
      b.push_back(Stmt::write(pick(rng, 0, vars - 1), random_expr(rng, vars, 2)));
    } else if (choice < 9) {
      Block then_block = loop_free_block(rng, vars, flips, budget, depth - 1);
      Block else_block = coin(rng) ? loop_free_block(rng, vars, flips, budget, depth - 1) : Block{};
      b.push_back(Stmt::if_else(random_expr(rng, vars, 1), std::move(then_block), std::move(else_block)));
    } else {
      b.push_back(Stmt::halt());
      break;
    }
  }
  return b;
}

Block any_block(Rng& rng, std::size_t vars, std::size_t& budget, int depth) {
  Block b;
  const std::size_t n = pick(rng, 1, 4);
  for (std::size_t k = 0; k < n && budget > 0; ++k) {
    --budget;
    const std::size_t choice = pick(rng, 0, 11);
    if (choice < 4) {
      b.push_back(Stmt::flip(pick(rng, 0, vars - 1)));
    } else if (choice < 7 || depth <= 0) {
      b.push_back(Stmt::write(pick(rng, 0, vars - 1), random_expr(rng, vars, 2)));
    } else if (choice < 9) {
      Block then_block = any_block(rng, vars, budget, depth - 1);
      Block else_block = coin(rng) ? any_block(rng, vars, budget, depth - 1) : Block{};
      b.push_back(Stmt::if_else(random_expr(rng, vars, 1), std::move(then_block), std::move(else_block)));
    } else if (choice < 10) {
      b.push_back(Stmt::while_loop(random_expr(rng, vars, 1), any_block(rng, vars, budget, depth - 1)));
    } else if (choice < 11) {
      b.push_back(Stmt::halt());
    } else {
      b.push_back(Stmt::loop());
    }
  }
  return b;
}

}  // namespace

Program random_loop_free_program(Rng& rng, std::size_t vars, std::size_t max_flips, std::size_t max_statements) {
  std::size_t flips = max_flips;
  std::size_t budget = max_statements;
  Program p;
  while (budget > 0 && pick(rng, 0, 3) != 0) {
    for (auto& s : loop_free_block(rng, vars, flips, budget, 2)) p.body.push_back(std::move(s));
  }
  return p;
}

Program random_program(Rng& rng, std::size_t vars, std::size_t max_statements) {
  std::size_t budget = max_statements;
  Program p;
  p.body = any_block(rng, vars, budget, 2);
  return p;
}

LinearSystem random_system(Rng& rng, std::size_t max_vars, std::size_t max_rows, long coeff_range) {
  LinearSystem s;
  s.n_vars = pick(rng, 1, max_vars);
  const std::size_t rows = pick(rng, 1, max_rows);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Rational> coeffs(s.n_vars);
    for (auto& c : coeffs) c = pick_signed(rng, -coeff_range, coeff_range);
    s.add(std::move(coeffs), Rational(pick_signed(rng, -coeff_range, coeff_range)), coin(rng));
  }
  return s;
}

Bits random_bits(Rng& rng, std::size_t length) {
  Bits b(length);
  for (std::size_t i = 0; i < length; ++i) b[i] = coin(rng);
  return b;
}

}  // namespace psim::testing
