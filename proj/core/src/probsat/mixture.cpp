#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "psim/probsat.hpp"
#include "psim/semantics.hpp"

namespace psim {
namespace {

// Number of bits needed to write values 0 .. b-1.
std::size_t bits_for(const Integer& b) {
  std::size_t k = 0;
  Integer reach = 1;
  while (reach < b) {
    reach *= 2;
    ++k;
  }
  return k;
}

Expr fold_or(Expr a, Expr b) {
  if (a.kind == Expr::Kind::Const) return a.value ? a : b;
  if (b.kind == Expr::Kind::Const) return b.value ? b : a;
  return Expr::disj(std::move(a), std::move(b));
}

Expr fold_and(Expr a, Expr b) {
  if (a.kind == Expr::Kind::Const) return a.value ? b : a;
  if (b.kind == Expr::Kind::Const) return b.value ? a : b;
  return Expr::conj(std::move(a), std::move(b));
}

// r < c, where r is read most significant bit first from `squares`.
Expr less_than(const std::vector<std::size_t>& squares, const Integer& c) {
  const std::size_t k = squares.size();
  if (c >= (Integer(1) << static_cast<mp_bitcnt_t>(k))) return Expr::constant(true);
  Expr out = Expr::constant(false);
  for (std::size_t p = k; p-- > 0;) {
    const bool bit = mpz_tstbit(c.get_mpz_t(), static_cast<mp_bitcnt_t>(k - 1 - p)) != 0;
    Expr low = Expr::negate(Expr::read(squares[p]));
    out = bit ? fold_or(std::move(low), std::move(out)) : fold_and(std::move(low), std::move(out));
  }
  return out;
}

}  // namespace

MixtureModel synth_model(const std::vector<MixtureComponent>& components) {
  Rational total = 0;
  for (const auto& c : components) {
    if (c.weight < 0) throw std::invalid_argument("negative mixture weight");
    total += c.weight;
  }
  if (total != 1) throw std::invalid_argument("mixture weights sum to " + to_string(total) + ", not 1");

  MixtureModel m;
  std::size_t scratch_base = 0;
  for (const auto& c : components) {
    if (c.weight == 0) continue;
    for (auto v : c.table.mentioned_vars) scratch_base = std::max(scratch_base, v + 1);
    for (const auto& row : c.table.rows) {
      for (const auto& e : row.antecedent.entries()) scratch_base = std::max(scratch_base, e.first + 1);
    }
  }
  Integer denominator = 1;
  for (const auto& c : components) {
    if (c.weight == 0) continue;
    MixtureBlock block{synth_world_program(c.table, scratch_base), c.weight, c.table, c.delta};
    m.aux_base = std::max(m.aux_base, max_index(block.program).value_or(0));
    denominator = lcm(denominator, Integer(c.weight.get_den()));
    m.blocks.push_back(std::move(block));
  }
  m.common_denominator = denominator;

  if (m.blocks.size() == 1) {
    m.program = m.blocks.front().program;
    return m;
  }

  const std::size_t k = bits_for(denominator);
  std::vector<std::size_t> squares(k);
  for (std::size_t i = 0; i < k; ++i) squares[i] = m.aux_base + 1 + i;

  Block draw;
  for (auto s : squares) draw.push_back(Stmt::flip(s));
  for (auto& s : draw) m.program.body.push_back(s);
  if ((Integer(1) << static_cast<mp_bitcnt_t>(k)) != denominator) {
    m.program.body.push_back(Stmt::while_loop(Expr::negate(less_than(squares, denominator)), draw));
  }

  // Block i takes draws in [a_1 + .. + a_{i-1}, a_1 + .. + a_i).
  Block chain = m.blocks.back().program.body;
  Integer cumulative = denominator;
  for (std::size_t i = m.blocks.size() - 1; i-- > 0;) {
    cumulative -= Integer(m.blocks[i + 1].weight * denominator);
    Block next;
    next.push_back(Stmt::if_else(less_than(squares, cumulative), m.blocks[i].program.body, std::move(chain)));
    chain = std::move(next);
  }
  for (auto& s : chain) m.program.body.push_back(std::move(s));
  return m;
}

std::string to_string(const MixtureModel& m) {
  std::ostringstream out;
  out << "# mixture of " << m.blocks.size() << " block" << (m.blocks.size() == 1 ? "" : "s")
      << ", denominator " << m.common_denominator << ", sampler above X" << m.aux_base << "\n";
  for (std::size_t i = 0; i < m.blocks.size(); ++i) {
    const auto& b = m.blocks[i];
    out << "# block " << i << ": weight " << to_string(b.weight) << ", delta " << to_string(b.delta) << "\n";
    std::istringstream rows(to_string(b.table));
    for (std::string line; std::getline(rows, line);) out << "#   " << line << "\n";
  }
  out << to_string(m.program);
  return out.str();
}

Tri verify_witness(const MixtureModel& m, const ProbFormula& f, unsigned bit_budget, std::uint64_t fuel) {
  return models(m.program, f, bit_budget, fuel);
}

}  // namespace psim
