#include <gtest/gtest.h>

#include <cmath>

#include "psim/errors.hpp"
#include "psim/nonprob_logic.hpp"
#include "psim/semantics.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace psim {
namespace {

using testing::Rng;

const char* kCopy = "if X0 {\n  write X1 := 1\n}\nhalt\n";
const char* kGeometric = "flip X0\nwhile !X0 {\n  flip X0\n}\nhalt\n";
const char* kCoin = "flip X0\nhalt\n";

NonProbFormula np(const char* text) { return parse_nonprob_formula(text); }
ProbFormula pf(const char* text) { return parse_prob_formula(text); }
Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

TEST(EvalFixed, CopyProgram) {
  const Runnable copy = parse_model(kCopy);
  EXPECT_EQ(eval_fixed(copy, np("<X0>(X0 & X1)"), {}, 10), Tri::True);
  EXPECT_EQ(eval_fixed(copy, np("<>!X0 & <>!X1"), {}, 10), Tri::True);
  EXPECT_EQ(eval_fixed(copy, np("<>X1"), {}, 10), Tri::False);
}

TEST(EvalFixed, GeometricOnZerosNeedsMoreBits) {
  EXPECT_EQ(eval_fixed(parse_model(kGeometric), np("<>T"), parse_bits("000"), 100), Tri::Unknown);
  EXPECT_EQ(eval_fixed(parse_model(kGeometric), np("<>T"), parse_bits("001"), 100), Tri::True);
}

TEST(EvalFixed, ConstantsAndKleene) {
  const Runnable loop(Program{{Stmt::loop()}});
  EXPECT_EQ(eval_fixed(loop, np("T"), {}, 5), Tri::True);
  EXPECT_EQ(eval_fixed(loop, np("F"), {}, 5), Tri::False);
  EXPECT_EQ(eval_fixed(loop, np("<>T"), {}, 5), Tri::Unknown);
  EXPECT_EQ(eval_fixed(loop, np("<>T | T"), {}, 5), Tri::True);
  EXPECT_EQ(eval_fixed(loop, np("<>T & F"), {}, 5), Tri::False);
}

TEST(ProbInterval, Examples) {
  EXPECT_EQ(prob_interval(parse_model(kCopy), np("<X0>(X0 & X1)"), 0, 100), (ProbInterval{1, 1}));
  EXPECT_EQ(prob_interval(parse_model(kGeometric), np("<>T"), 3, 100), (ProbInterval{q(7, 8), 1}));
  EXPECT_EQ(prob_interval(parse_model(kCoin), np("<>X0"), 1, 100), (ProbInterval{q(1, 2), q(1, 2)}));
  EXPECT_EQ(prob_interval(parse_model(kCoin), np("<>X0"), 0, 100), (ProbInterval{0, 1}));
}

TEST(ProbInterval, BudgetCap) {
  EXPECT_THROW(prob_interval(parse_model(kCoin), np("<>X0"), 25, 100), ResourceError);
  EXPECT_NO_THROW(prob_interval(parse_model(kCoin), np("<>X0"), 30, 100, 40));
  EXPECT_THROW(prob_interval(parse_model(kCoin), np("<>X0"), 63, 100, 100), ResourceError);
}

TEST(ProbInterval, SharedTreeMatchesSeparateCalls) {
  const Runnable geo = parse_model(kGeometric);
  const std::vector<NonProbFormula> fs{np("<>T"), np("<>X0"), np("<X0:=0>T"), np("!<>X0")};
  const auto together = prob_intervals(geo, fs, 6, 200);
  for (std::size_t k = 0; k < fs.size(); ++k) EXPECT_EQ(together[k], prob_interval(geo, fs[k], 6, 200));
}

TEST(MonteCarlo, FairCoin) {
  const auto est = mc_estimate(parse_model(kCoin), np("<>X0"), 10000, 100, 64, 1);
  EXPECT_EQ(est.unknown_count, 0U);
  EXPECT_EQ(est.samples, 10000U);
  EXPECT_EQ(est.true_count + est.false_count, 10000U);
  EXPECT_LE(std::abs(est.p_hat.get_d() - 0.5), 0.02);
  EXPECT_NEAR(est.half_width, std::sqrt(std::log(40.0) / 20000.0), 1e-12);
}

TEST(MonteCarlo, TopIsCertain) {
  const auto est = mc_estimate(parse_model(kGeometric), np("T"), 100, 100, 64, 3);
  EXPECT_EQ(est.p_hat, 1);
}

TEST(MonteCarlo, LoopNeverCountsTrue) {
  const Runnable loop(Program{{Stmt::loop()}});
  for (const std::uint64_t fuel : {0U, 10U, 1000U}) {
    const auto est = mc_estimate(loop, np("<>T"), 50, fuel, 64, 4);
    EXPECT_EQ(est.p_hat, 0);
    EXPECT_EQ(est.true_count, 0U);
  }
}

TEST(MonteCarlo, ReproduciblePerSeed) {
  const Runnable geo = parse_model(kGeometric);
  const auto a = mc_estimate(geo, np("<>X0"), 500, 30, 10, 99);
  const auto b = mc_estimate(geo, np("<>X0"), 500, 30, 10, 99);
  EXPECT_EQ(a.p_hat, b.p_hat);
  EXPECT_EQ(a.unknown_count, b.unknown_count);
}

TEST(Models, Examples) {
  EXPECT_EQ(models(parse_model(kCoin), pf("2*P(<>X0) <= 1"), 1, 100), Tri::True);
  EXPECT_EQ(models(parse_model(kGeometric), pf("P(<>T) >= 1"), 8, 100), Tri::Unknown);
  EXPECT_EQ(models(parse_model(kGeometric), pf("P(T) = 1"), 0, 0), Tri::True);
  EXPECT_EQ(models(parse_model(kCopy), pf("P(<X0>(X0 & X1)) = 1"), 0, 100), Tri::True);
  EXPECT_EQ(models(parse_model(kCoin), pf("P(<>X0) > 1/2"), 4, 100), Tri::False);
}

TEST(Models, ReportListsDistinctTerms) {
  const auto report = evaluate(parse_model(kGeometric), pf("P(<>T) >= 1 | P(<>T) + P(<>X0) <= 3"), 8, 100);
  ASSERT_EQ(report.terms.size(), 2U);
  EXPECT_EQ(report.terms[0].interval, (ProbInterval{q(255, 256), 1}));
  EXPECT_EQ(report.verdict, Tri::True);
}

TEST(LinearVerdict, UsesIntervalEndpoints) {
  const NonProbFormula a = np("<>X0");
  const NonProbFormula b = np("<>X1");
  const std::vector<TermInterval> terms{{a, {q(1, 4), q(1, 2)}}, {b, {q(1, 4), q(3, 4)}}};
  const auto atom = [&](long ca, long cb, long bound) {
    return LinearAtom{{{Integer(ca), a}, {Integer(cb), b}}, Integer(bound)};
  };
  // a + b ranges over [1/2, 5/4]
  EXPECT_EQ(linear_verdict(atom(1, 1, 2), terms), Tri::True);
  EXPECT_EQ(linear_verdict(atom(1, 1, 1), terms), Tri::Unknown);
  EXPECT_EQ(linear_verdict(atom(2, 2, 0), terms), Tri::False);
  // a - b ranges over [-1/2, 1/4]
  EXPECT_EQ(linear_verdict(atom(4, -4, 1), terms), Tri::True);
  EXPECT_EQ(linear_verdict(atom(2, -2, -2), terms), Tri::False);
  EXPECT_EQ(linear_verdict(LinearAtom{{}, Integer(0)}, terms), Tri::True);
  EXPECT_EQ(linear_verdict(LinearAtom{{}, Integer(-1)}, terms), Tri::False);
}

class SemanticsProperties : public ::testing::Test {
 protected:
  Rng rng{31};

  NonProbFormula random_formula(std::size_t vars) {
    const auto pool = testing::random_pool(rng, testing::pick(rng, 1, 3), vars, 2);
    return testing::random_nonprob(rng, pool, 2, true);
  }
};

TEST_F(SemanticsProperties, AgreesWithBruteForceOverPrefixes) {
  for (int trial = 0; trial < 150; ++trial) {
    const Program p = testing::random_program(rng, 3, 12);
    const NonProbFormula f = random_formula(3);
    const unsigned budget = static_cast<unsigned>(testing::pick(rng, 0, 6));
    const std::uint64_t fuel = testing::pick(rng, 5, 80);
    ASSERT_EQ(prob_interval(p, f, budget, fuel), testing::brute_interval(p, f, budget, fuel))
        << to_string(p) << to_string(f);
  }
}

TEST_F(SemanticsProperties, IntervalsAreDyadicAndOrdered) {
  for (int trial = 0; trial < 200; ++trial) {
    const Program p = testing::random_program(rng, 3, 12);
    const auto i = prob_interval(p, random_formula(3), static_cast<unsigned>(testing::pick(rng, 0, 8)), 60);
    ASSERT_LE(0, i.lo);
    ASSERT_LE(i.lo, i.hi);
    ASSERT_LE(i.hi, 1);
    ASSERT_TRUE(is_dyadic(i.lo) && is_dyadic(i.hi));
  }
}

TEST_F(SemanticsProperties, Complementation) {
  for (int trial = 0; trial < 200; ++trial) {
    const Program p = testing::random_program(rng, 3, 12);
    const NonProbFormula f = random_formula(3);
    const unsigned budget = static_cast<unsigned>(testing::pick(rng, 0, 8));
    const auto i = prob_interval(p, f, budget, 60);
    const auto c = prob_interval(p, NonProbFormula::make_not(f), budget, 60);
    ASSERT_EQ(c, (ProbInterval{1 - i.hi, 1 - i.lo}));
  }
}

TEST_F(SemanticsProperties, MoreBudgetOrFuelNeverWidens) {
  for (int trial = 0; trial < 200; ++trial) {
    const Program p = testing::random_program(rng, 3, 12);
    const NonProbFormula f = random_formula(3);
    const unsigned budget = static_cast<unsigned>(testing::pick(rng, 0, 7));
    const std::uint64_t fuel = testing::pick(rng, 1, 60);
    const auto base = prob_interval(p, f, budget, fuel);
    for (const auto& wider : {prob_interval(p, f, budget + 1, fuel), prob_interval(p, f, budget, fuel * 2),
                              prob_interval(p, f, budget + 2, fuel + 30)}) {
      ASSERT_LE(base.lo, wider.lo);
      ASSERT_LE(wider.hi, base.hi);
    }
  }
}

TEST_F(SemanticsProperties, DecidedPrefixesStayDecided) {
  for (int trial = 0; trial < 300; ++trial) {
    const Program p = testing::random_program(rng, 3, 12);
    const NonProbFormula f = random_formula(3);
    const Bits prefix = testing::random_bits(rng, testing::pick(rng, 0, 5));
    const Tri t = eval_fixed(p, f, prefix, 200);
    if (t == Tri::Unknown) continue;
    Bits longer = prefix;
    for (const bool b : testing::random_bits(rng, 4)) longer.push_back(b);
    ASSERT_EQ(eval_fixed(p, f, longer, 400), t);
  }
}

// Valid formulas can be Unknown at finite fuel but never False.
TEST_F(SemanticsProperties, ValidFormulasAreNeverFalsified) {
  std::size_t checked = 0;
  for (int attempt = 0; attempt < 4000 && checked < 40; ++attempt) {
    const auto pool = testing::random_pool(rng, 2, 2, 1);
    const NonProbFormula f = testing::random_nonprob(rng, pool, 3);
    if (!valid_nonprob(f, Mode::M)) continue;
    ++checked;
    for (int k = 0; k < 20; ++k) {
      const Program p = testing::random_program(rng, 2, 10);
      const Bits prefix = testing::random_bits(rng, testing::pick(rng, 0, 6));
      ASSERT_NE(eval_fixed(p, f, prefix, testing::pick(rng, 0, 80)), Tri::False) << to_string(f);
    }
  }
  EXPECT_GE(checked, 40U);
}

TEST_F(SemanticsProperties, InterventionFixpointAtomsAreNeverTrue) {
  for (int trial = 0; trial < 200; ++trial) {
    const Program p = testing::random_program(rng, 3, 12);
    InterventionSpec a = testing::random_spec(rng, 3, 3);
    if (a.empty()) continue;
    const NonProbFormula f =
        NonProbFormula::make_atom(CondAtom{a, PropFormula::make_not(a.as_formula())});
    ASSERT_EQ(prob_interval(p, f, 6, 100).lo, 0);
    ASSERT_NE(eval_fixed(p, f, testing::random_bits(rng, 6), 100), Tri::True);
  }
}

TEST(SemanticsFaces, GeometricLowerBoundConverges) {
  const Runnable geo = parse_model(kGeometric);
  for (unsigned b = 0; b <= 16; ++b) {
    EXPECT_EQ(prob_interval(geo, np("<>T"), b, 1000), (ProbInterval{1 - dyadic(b), 1}));
  }
  for (std::uint64_t fuel = 0; fuel < 200; fuel += 7) {
    EXPECT_NE(eval_fixed(geo, np("<>T"), Bits(20, false), fuel), Tri::True);
  }
}

TEST_F(SemanticsProperties, CoherenceOnLoopFreePrograms) {
  for (int trial = 0; trial < 100; ++trial) {
    const Program p = testing::random_loop_free_program(rng, 3, 5, 10);
    const auto pool = testing::random_pool(rng, 3, 3, 1);
    const NonProbFormula f = testing::random_nonprob(rng, pool, 2);
    const NonProbFormula g = testing::random_nonprob(rng, pool, 2);
    const std::vector<NonProbFormula> fs{f, NonProbFormula::make_and(f, g),
                                         NonProbFormula::make_and(f, NonProbFormula::make_not(g)), g};
    const auto i = prob_intervals(p, fs, 5, 1000);
    for (const auto& x : i) ASSERT_TRUE(x.is_point());
    ASSERT_EQ(i[0].lo, i[1].lo + i[2].lo);
    if (valid_nonprob(NonProbFormula::make_implies(f, g), Mode::MDown)) {
      ASSERT_LE(i[0].lo, i[3].lo);
    }
    if (valid_nonprob(f, Mode::MDown)) {
      ASSERT_EQ(i[0].lo, 1);
    }
  }
}

// The estimate stays within a very conservative Hoeffding band of the exact value.
TEST_F(SemanticsProperties, MonteCarloAgreesWithExactIntervals) {
  for (int trial = 0; trial < 40; ++trial) {
    const Program p = testing::random_loop_free_program(rng, 3, 6, 10);
    const NonProbFormula f = random_formula(3);
    const auto exact = prob_interval(p, f, 6, 1000);
    const auto est = mc_estimate(p, f, 2000, 1000, 6, rng());
    ASSERT_EQ(est.unknown_count, 0U);
    const double band = hoeffding_half_width(2000, 1.0 - 1e-9);
    ASSERT_GE(est.p_hat.get_d(), exact.lo.get_d() - band);
    ASSERT_LE(est.p_hat.get_d(), exact.hi.get_d() + band);
  }
}

}  // namespace
}  // namespace psim
