#include <algorithm>

#include "psim/errors.hpp"
#include "psim/syntax.hpp"

namespace psim {
namespace {

class DnfBuilder {
 public:
  explicit DnfBuilder(std::size_t max_clauses) : max_clauses_(max_clauses) {}

  std::vector<Clause> build(const ProbFormula& f, bool positive) {
    using K = ProbFormula::Kind;
    switch (f.kind()) {
      case K::Leaf: return {Clause{Literal{f.leaf(), positive}}};
      case K::Top: return positive ? std::vector<Clause>{Clause{}} : std::vector<Clause>{};
      case K::Bottom: return positive ? std::vector<Clause>{} : std::vector<Clause>{Clause{}};
      case K::Not: return build(f.operand(), !positive);
      case K::And:
      case K::Or: {
        // Under negation the connective flips (De Morgan).
        const bool conjunctive = (f.kind() == K::And) == positive;
        auto lhs = build(f.lhs(), positive);
        auto rhs = build(f.rhs(), positive);
        return conjunctive ? product(lhs, rhs) : concat(std::move(lhs), std::move(rhs));
      }
    }
    return {};
  }

 private:
  void check(std::size_t n) const {
    if (n > max_clauses_) throw ResourceError("DNF exceeds " + std::to_string(max_clauses_) + " clauses");
  }

  std::vector<Clause> concat(std::vector<Clause> a, std::vector<Clause> b) const {
    check(a.size() + b.size());
    for (auto& c : b) a.push_back(std::move(c));
    return a;
  }

  std::vector<Clause> product(const std::vector<Clause>& a, const std::vector<Clause>& b) const {
    check(a.size() * b.size());
    std::vector<Clause> out;
    out.reserve(a.size() * b.size());
    for (const auto& ca : a) {
      for (const auto& cb : b) {
        Clause merged = ca;
        for (const auto& lit : cb) {
          if (std::find(merged.begin(), merged.end(), lit) == merged.end()) merged.push_back(lit);
        }
        out.push_back(std::move(merged));
      }
    }
    return out;
  }

  std::size_t max_clauses_;
};

}  // namespace

std::vector<Clause> to_dnf(const ProbFormula& f, std::size_t max_clauses) {
  return DnfBuilder(max_clauses).build(f, true);
}

}  // namespace psim
