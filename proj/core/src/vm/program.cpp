#include <algorithm>

#include "psim/vm.hpp"

namespace psim {

Expr Expr::constant(bool b) {
  Expr e;
  e.kind = Kind::Const;
  e.value = b;
  return e;
}

Expr Expr::read(std::size_t i) {
  Expr e;
  e.kind = Kind::Read;
  e.index = i;
  return e;
}

Expr Expr::negate(Expr a) {
  Expr e;
  e.kind = Kind::Not;
  e.args.push_back(std::move(a));
  return e;
}

namespace {

Expr binary(Expr::Kind k, Expr a, Expr b) {
  Expr e;
  e.kind = k;
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

void collect_max(const Expr& e, std::optional<std::size_t>& best) {
  if (e.kind == Expr::Kind::Read) best = std::max(best.value_or(0), e.index);
  for (const auto& a : e.args) collect_max(a, best);
}

void collect_max(const Block& b, std::optional<std::size_t>& best) {
  for (const auto& s : b) {
    switch (s.kind) {
      case Stmt::Kind::Write:
        best = std::max(best.value_or(0), s.index);
        collect_max(s.expr, best);
        break;
      case Stmt::Kind::Flip: best = std::max(best.value_or(0), s.index); break;
      case Stmt::Kind::If:
        collect_max(s.expr, best);
        collect_max(s.body, best);
        collect_max(s.orelse, best);
        break;
      case Stmt::Kind::While:
        collect_max(s.expr, best);
        collect_max(s.body, best);
        break;
      default: break;
    }
  }
}

}  // namespace

Expr Expr::conj(Expr a, Expr b) { return binary(Kind::And, std::move(a), std::move(b)); }
Expr Expr::disj(Expr a, Expr b) { return binary(Kind::Or, std::move(a), std::move(b)); }
Expr Expr::exclusive(Expr a, Expr b) { return binary(Kind::Xor, std::move(a), std::move(b)); }
Expr Expr::same(Expr a, Expr b) { return negate(exclusive(std::move(a), std::move(b))); }

Stmt Stmt::write(std::size_t i, Expr value) {
  Stmt s;
  s.kind = Kind::Write;
  s.index = i;
  s.expr = std::move(value);
  return s;
}

Stmt Stmt::flip(std::size_t i) {
  Stmt s;
  s.kind = Kind::Flip;
  s.index = i;
  return s;
}

Stmt Stmt::if_else(Expr cond, Block then_block, Block else_block) {
  Stmt s;
  s.kind = Kind::If;
  s.expr = std::move(cond);
  s.body = std::move(then_block);
  s.orelse = std::move(else_block);
  return s;
}

Stmt Stmt::while_loop(Expr cond, Block body) {
  Stmt s;
  s.kind = Kind::While;
  s.expr = std::move(cond);
  s.body = std::move(body);
  return s;
}

Stmt Stmt::halt() { return Stmt{}; }

Stmt Stmt::loop() {
  Stmt s;
  s.kind = Kind::Loop;
  return s;
}

std::optional<std::size_t> max_index(const Block& b) {
  std::optional<std::size_t> best;
  collect_max(b, best);
  return best;
}

std::optional<std::size_t> max_index(const Program& p) { return max_index(p.body); }

std::size_t count_flips(const Block& b) {
  std::size_t n = 0;
  for (const auto& s : b) {
    if (s.kind == Stmt::Kind::Flip) ++n;
    n += count_flips(s.body) + count_flips(s.orelse);
  }
  return n;
}

bool contains_loop(const Block& b) {
  return std::any_of(b.begin(), b.end(), [](const Stmt& s) {
    return s.kind == Stmt::Kind::Loop || contains_loop(s.body) || contains_loop(s.orelse);
  });
}

Runnable intervene(const Program& p, const InterventionSpec& spec) {
  return intervene(Runnable(p), spec);
}

Runnable intervene(const Runnable& r, const InterventionSpec& spec) {
  auto holds = r.holds();
  for (const auto& [index, value] : spec.entries()) holds[index] = value;
  return Runnable(r.shared_program(), std::move(holds));
}

Block held_test(std::size_t index, std::size_t scratch, std::size_t flag) {
  Block b;
  b.push_back(Stmt::write(scratch, Expr::read(index)));
  b.push_back(Stmt::write(index, Expr::negate(Expr::read(index))));
  b.push_back(Stmt::write(flag, Expr::same(Expr::read(index), Expr::read(scratch))));
  b.push_back(Stmt::write(index, Expr::read(scratch)));
  return b;
}

}  // namespace psim
