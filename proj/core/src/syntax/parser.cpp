#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psim/errors.hpp"
#include "psim/syntax.hpp"
#include "syntax/lexer.hpp"

namespace psim {
namespace {

using detail::Tok;
using detail::Token;

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(detail::tokenize(text)) {}

  const Token& peek() const { return toks_[at_]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token take() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }

  bool accept(Tok k) {
    if (!at(k)) return false;
    take();
    return true;
  }

  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + ", found " + detail::describe(peek()));
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }

  void finish() {
    if (!at(Tok::End)) fail("unexpected " + detail::describe(peek()));
  }

  // iff := imp ("<->" imp)* ; imp := or ("->" imp)? ; or := and ("|" and)* ;
  // and := unary ("&" unary)*
  template <class F>
  F binary(const std::function<F()>& unary) {
    F a = implication(unary);
    while (accept(Tok::Iff)) {
      F b = implication(unary);
      a = F::make_iff(a, b);
    }
    return a;
  }

  template <class F>
  F implication(const std::function<F()>& unary) {
    F a = disjunction(unary);
    if (accept(Tok::Arrow)) return F::make_implies(a, implication(unary));
    return a;
  }

  template <class F>
  F disjunction(const std::function<F()>& unary) {
    F a = conjunction(unary);
    while (accept(Tok::Pipe)) a = F::make_or(a, conjunction(unary));
    return a;
  }

  template <class F>
  F conjunction(const std::function<F()>& unary) {
    F a = unary();
    while (accept(Tok::Amp)) a = F::make_and(a, unary());
    return a;
  }

  // ---- L_prop ----------------------------------------------------------

  PropFormula prop() { return binary<PropFormula>([this] { return prop_unary(); }); }

  PropFormula prop_unary() {
    if (accept(Tok::Bang)) return PropFormula::make_not(prop_unary());
    if (accept(Tok::LParen)) {
      PropFormula f = prop();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at(Tok::Ident)) {
      if (auto idx = detail::tape_index(peek())) {
        take();
        return PropFormula::make_atom(*idx);
      }
      if (peek().text == "T") {
        take();
        return PropFormula::make_top();
      }
      if (peek().text == "F") {
        take();
        return PropFormula::make_bottom();
      }
      if (peek().text == "P") fail("probability term inside a propositional formula");
    }
    fail("expected a propositional formula, found " + detail::describe(peek()));
  }

  // ---- L_int -----------------------------------------------------------

  // lit ("," lit)* ; lit := "X"n [":=" 0|1] | "!X"n. Stops before `close`.
  InterventionSpec antecedent(Tok close) {
    const std::size_t start = peek().pos;
    std::vector<InterventionSpec::Entry> entries;
    if (!at(close)) {
      do {
        const bool negated = accept(Tok::Bang);
        auto idx = detail::tape_index(peek());
        if (!idx) fail("expected an antecedent literal, found " + detail::describe(peek()));
        take();
        bool value = !negated;
        if (accept(Tok::Assign)) {
          if (negated) fail("':=' cannot follow a negated literal");
          if (!at(Tok::Int) || (peek().text != "0" && peek().text != "1")) fail("expected 0 or 1 after ':='");
          value = take().text == "1";
        }
        entries.emplace_back(*idx, value);
      } while (accept(Tok::Comma));
    }
    try {
      return InterventionSpec::from_unsorted(std::move(entries));
    } catch (const std::invalid_argument& e) {
      throw ParseError(start, e.what());
    }
  }

  // ---- L_non-prob ------------------------------------------------------

  NonProbFormula nonprob() { return binary<NonProbFormula>([this] { return nonprob_unary(); }); }

  NonProbFormula nonprob_unary() {
    if (accept(Tok::Bang)) return NonProbFormula::make_not(nonprob_unary());
    if (accept(Tok::LParen)) {
      NonProbFormula f = nonprob();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (accept(Tok::LAngle)) {
      InterventionSpec ante = antecedent(Tok::RAngle);
      expect(Tok::RAngle, "'>'");
      return NonProbFormula::make_atom(CondAtom{std::move(ante), prop_unary()});
    }
    if (accept(Tok::LBracket)) {
      // [a]b abbreviates !<a>!b
      InterventionSpec ante = antecedent(Tok::RBracket);
      expect(Tok::RBracket, "']'");
      PropFormula body = PropFormula::make_not(prop_unary());
      return NonProbFormula::make_not(NonProbFormula::make_atom(CondAtom{std::move(ante), std::move(body)}));
    }
    if (at(Tok::Ident)) {
      if (peek().text == "T") {
        take();
        return NonProbFormula::make_top();
      }
      if (peek().text == "F") {
        take();
        return NonProbFormula::make_bottom();
      }
      if (peek().text == "P") fail("nested probability term");
      if (detail::tape_index(peek())) {
        fail("bare tape atom " + peek().text + " is not a formula here; wrap it in a conditional such as <>" +
             peek().text);
      }
    }
    fail("expected a conditional formula, found " + detail::describe(peek()));
  }

  // ---- L ---------------------------------------------------------------

  ProbFormula prob() { return binary<ProbFormula>([this] { return prob_unary(); }); }

  ProbFormula prob_unary() {
    if (accept(Tok::Bang)) return ProbFormula::make_not(prob_unary());
    if (accept(Tok::LParen)) {
      ProbFormula f = prob();
      expect(Tok::RParen, "')'");
      return f;
    }
    return inequality();
  }

  struct Linear {
    std::vector<std::pair<Rational, NonProbFormula>> terms;
    Rational constant = 0;
  };

  Rational rational() {
    if (!at(Tok::Int)) fail("expected a number, found " + detail::describe(peek()));
    Rational q(Integer(take().text));
    if (accept(Tok::Slash)) {
      if (!at(Tok::Int)) fail("expected a denominator, found " + detail::describe(peek()));
      const std::size_t pos = peek().pos;
      Integer den(take().text);
      if (den == 0) throw ParseError(pos, "zero denominator");
      q /= Rational(den);
    }
    return q;
  }

  NonProbFormula probability_term() {
    expect(Tok::LParen, "'(' after P");
    NonProbFormula f = nonprob();
    expect(Tok::RParen, "')'");
    return f;
  }

  bool at_probability() const { return at(Tok::Ident) && peek().text == "P"; }

  // sum := ["+"|"-"] item (("+"|"-") item)* ; item := rat ["*"] P(..) | rat | P(..)
  Linear linear() {
    Linear out;
    int sign = 1;
    if (accept(Tok::Minus)) {
      sign = -1;
    } else {
      accept(Tok::Plus);
    }
    for (;;) {
      if (at(Tok::Int)) {
        Rational q = rational();
        q *= sign;
        if (accept(Tok::Star) || at_probability()) {
          if (!at_probability()) fail("expected P(...) after '*'");
          take();
          out.terms.emplace_back(q, probability_term());
        } else {
          out.constant += q;
        }
      } else if (at_probability()) {
        take();
        out.terms.emplace_back(Rational(sign), probability_term());
      } else {
        fail("expected a term, found " + detail::describe(peek()));
      }
      if (accept(Tok::Plus)) {
        sign = 1;
      } else if (accept(Tok::Minus)) {
        sign = -1;
      } else {
        break;
      }
    }
    return out;
  }

  ProbFormula inequality() {
    Linear lhs = linear();
    const Tok rel = peek().kind;
    if (rel != Tok::Le && rel != Tok::Ge && rel != Tok::Eq && rel != Tok::LAngle && rel != Tok::RAngle) {
      fail("expected one of <=, >=, =, <, >; found " + detail::describe(peek()));
    }
    take();
    Linear rhs = linear();

    // lhs REL rhs  ==>  terms REL constant, with terms = lhs - rhs(P part).
    std::vector<std::pair<Rational, NonProbFormula>> terms = std::move(lhs.terms);
    for (auto& [q, f] : rhs.terms) terms.emplace_back(-q, std::move(f));
    const Rational constant = rhs.constant - lhs.constant;

    Integer scale = 1;
    for (const auto& t : terms) scale = lcm(scale, t.first.get_den());
    scale = lcm(scale, constant.get_den());

    LinearAtom le;
    for (const auto& [q, f] : terms) {
      Rational scaled = q * scale;
      le.terms.push_back({scaled.get_num(), f});
    }
    le.bound = Rational(constant * scale).get_num();

    switch (rel) {
      case Tok::Le: return ProbFormula::make_atom(le);
      case Tok::Ge: return ProbFormula::make_atom(le.negated());
      case Tok::Eq: return ProbFormula::make_and(ProbFormula::make_atom(le), ProbFormula::make_atom(le.negated()));
      case Tok::LAngle: return ProbFormula::make_not(ProbFormula::make_atom(le.negated()));
      default: return ProbFormula::make_not(ProbFormula::make_atom(le));
    }
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

}  // namespace

PropFormula parse_prop_formula(std::string_view text) {
  Parser p(text);
  PropFormula f = p.prop();
  p.finish();
  return f;
}

NonProbFormula parse_nonprob_formula(std::string_view text) {
  Parser p(text);
  NonProbFormula f = p.nonprob();
  p.finish();
  return f;
}

ProbFormula parse_prob_formula(std::string_view text) {
  Parser p(text);
  ProbFormula f = p.prob();
  p.finish();
  return f;
}

InterventionSpec parse_intervention_spec(std::string_view text) {
  Parser p(text);
  InterventionSpec s = p.antecedent(Tok::End);
  p.finish();
  return s;
}

}  // namespace psim
