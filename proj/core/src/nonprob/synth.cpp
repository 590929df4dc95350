#include <set>

#include "psim/nonprob_logic.hpp"

namespace psim {
namespace {

std::vector<std::size_t> relevant_squares(const WorldTable& t) {
  std::set<std::size_t> out(t.mentioned_vars.begin(), t.mentioned_vars.end());
  for (const auto& row : t.rows) {
    for (const auto& e : row.antecedent.entries()) out.insert(e.first);
  }
  return {out.begin(), out.end()};
}

Block halting_body(const Assignment& a) {
  Block b;
  for (const auto& [i, v] : a) b.push_back(Stmt::write(i, Expr::constant(v)));
  b.push_back(Stmt::halt());
  return b;
}

}  // namespace

std::size_t world_program_scratch_size(const WorldTable& t) { return relevant_squares(t).size() + 1; }

Program synth_world_program(const WorldTable& t, std::optional<std::size_t> scratch_base) {
  const auto squares = relevant_squares(t);
  const std::size_t base = scratch_base.value_or(squares.empty() ? 0 : squares.back() + 1);
  const std::size_t saved = base;
  auto flag = [&](std::size_t k) { return base + 1 + k; };

  Program p;
  for (std::size_t k = 0; k < squares.size(); ++k) {
    for (auto& s : held_test(squares[k], saved, flag(k))) p.body.push_back(std::move(s));
  }

  // Fallback for interventions no row lists.
  Block chain;
  const WorldRow* empty_row = t.find(InterventionSpec{});
  if (empty_row != nullptr && empty_row->halts()) {
    chain = halting_body(*empty_row->outcome);
  } else {
    chain.push_back(Stmt::halt());
  }

  for (auto row = t.rows.rbegin(); row != t.rows.rend(); ++row) {
    // Exactly this intervention: the listed squares held at the listed
    // values and every other relevant square free.
    Expr match = Expr::constant(true);
    bool first = true;
    for (std::size_t k = 0; k < squares.size(); ++k) {
      const std::size_t i = squares[k];
      Expr term = row->antecedent.holds(i)
                      ? Expr::conj(Expr::read(flag(k)), row->antecedent.value(i) ? Expr::read(i)
                                                                                   : Expr::negate(Expr::read(i)))
                      : Expr::negate(Expr::read(flag(k)));
      match = first ? std::move(term) : Expr::conj(std::move(match), std::move(term));
      first = false;
    }
    Block body = row->halts() ? halting_body(*row->outcome) : Block{Stmt::loop()};
    Block next;
    next.push_back(Stmt::if_else(std::move(match), std::move(body), std::move(chain)));
    chain = std::move(next);
  }
  for (auto& s : chain) p.body.push_back(std::move(s));
  return p;
}

}  // namespace psim
