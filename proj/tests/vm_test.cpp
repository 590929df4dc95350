#include <gtest/gtest.h>

#include "psim/errors.hpp"
#include "psim/vm.hpp"
#include "support/generators.hpp"

namespace psim {
namespace {

using testing::Rng;

const char* kCopy = "if X0 {\n  write X1 := 1\n}\nhalt\n";
const char* kGeometric = "flip X0\nwhile !X0 {\n  flip X0\n}\nhalt\n";

TEST(Run, EmptyProgramHaltsAtOnce) {
  EXPECT_EQ(run(Program{}, {}, 10), RunOutcome(Halted{{}, 0}));
}

TEST(Run, LoopExhaustsFuel) {
  Program p{{Stmt::loop()}};
  EXPECT_EQ(run(p, {}, 5), RunOutcome(FuelExhausted{0}));
}

TEST(Run, GeometricOnPrefix001) {
  const auto out = run(parse_model(kGeometric), parse_bits("001"), 100);
  ASSERT_TRUE(std::holds_alternative<Halted>(out));
  EXPECT_EQ(std::get<Halted>(out).bits_consumed, 3U);
  EXPECT_TRUE(std::get<Halted>(out).value(0));
}

// Hand trace of the geometric program on every 3-bit prefix: it halts after
// the first 1, and asks for bit 3 on 000.
TEST(Run, GeometricOnAllThreeBitPrefixes) {
  const Runnable geo = parse_model(kGeometric);
  for (unsigned m = 0; m < 8; ++m) {
    Bits prefix{(m & 4U) != 0, (m & 2U) != 0, (m & 1U) != 0};
    const auto out = run(geo, prefix, 100);
    std::size_t first_one = 3;
    for (std::size_t k = 0; k < 3; ++k) {
      if (prefix[k]) {
        first_one = k;
        break;
      }
    }
    if (first_one == 3) {
      EXPECT_EQ(out, RunOutcome(BitDemand{3}));
    } else {
      ASSERT_TRUE(std::holds_alternative<Halted>(out)) << to_string(out);
      EXPECT_EQ(std::get<Halted>(out).bits_consumed, first_one + 1);
    }
  }
}

TEST(Run, FuelCountsStatementsAndLoopTests) {
  // flip, then two while tests and one body flip for prefix 01, then halt.
  const Runnable geo = parse_model(kGeometric);
  EXPECT_TRUE(std::holds_alternative<FuelExhausted>(run(geo, parse_bits("01"), 4)));
  EXPECT_TRUE(std::holds_alternative<Halted>(run(geo, parse_bits("01"), 5)));
}

TEST(Intervene, CopyProgramUnderX0) {
  const auto out = run(intervene(parse_model(kCopy).program(), InterventionSpec({{0, true}})), {}, 100);
  ASSERT_TRUE(std::holds_alternative<Halted>(out));
  EXPECT_TRUE(std::get<Halted>(out).value(0));
  EXPECT_TRUE(std::get<Halted>(out).value(1));
}

TEST(Intervene, WritesToHeldSquaresAreMasked) {
  Program p{{Stmt::write(0, Expr::constant(false)), Stmt::halt()}};
  const auto out = run(intervene(p, InterventionSpec({{0, true}})), {}, 10);
  ASSERT_TRUE(std::holds_alternative<Halted>(out));
  EXPECT_TRUE(std::get<Halted>(out).value(0));
}

TEST(Intervene, FlipIntoHeldSquareStillConsumesABit) {
  Program p{{Stmt::flip(0), Stmt::flip(1), Stmt::halt()}};
  const auto out = run(intervene(p, InterventionSpec({{0, false}})), parse_bits("11"), 10);
  ASSERT_TRUE(std::holds_alternative<Halted>(out));
  EXPECT_EQ(std::get<Halted>(out).bits_consumed, 2U);
  EXPECT_FALSE(std::get<Halted>(out).value(0));
  EXPECT_TRUE(std::get<Halted>(out).value(1));
}

TEST(Intervene, LaterSpecWinsOnOverlap) {
  const Runnable r = intervene(intervene(Program{}, InterventionSpec({{0, true}, {1, true}})),
                               InterventionSpec({{1, false}}));
  EXPECT_EQ(r.holds(), (std::map<std::size_t, bool>{{0, true}, {1, false}}));
}

TEST(ModelText, ParsesAndPrintsCanonically) {
  const Runnable r = parse_model("# demo\nhold X1 := 0\nwrite X0 := X1 | X2 & !X3 ^ 1; flip X4\n"
                                 "if X0 { halt } else if X4 { loop } else { while X2 { write X2 := 0 } }\n");
  const std::string text = to_string(r);
  EXPECT_EQ(to_string(parse_model(text)), text);
  EXPECT_EQ(r.holds(), (std::map<std::size_t, bool>{{1, false}}));
  EXPECT_EQ(parse_model(text).program(), r.program());
}

TEST(ModelText, RejectsMalformedInput) {
  EXPECT_THROW(parse_model("write X0 = 1"), ParseError);
  EXPECT_THROW(parse_model("flip Y0"), ParseError);
  EXPECT_THROW(parse_model("if X0 { halt"), ParseError);
  EXPECT_THROW(parse_bits("01a"), ParseError);
}

TEST(ModelText, RoundTripOnRandomPrograms) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const Program p = testing::random_program(rng, 5, 20);
    const std::string text = to_string(p);
    ASSERT_EQ(parse_model(text).program(), p) << text;
  }
}

TEST(Helpers, MaxIndexFlipsAndLoops) {
  const Program p = parse_model("flip X3\nif X1 { loop } else { write X7 := X2 }\n").program();
  EXPECT_EQ(max_index(p), 7U);
  EXPECT_EQ(count_flips(p.body), 1U);
  EXPECT_TRUE(contains_loop(p.body));
  EXPECT_FALSE(max_index(Program{}).has_value());
}

// Properties over random programs, prefixes and fuels.
class RunProperties : public ::testing::Test {
 protected:
  Rng rng{22};
};

TEST_F(RunProperties, Deterministic) {
  for (int trial = 0; trial < 300; ++trial) {
    const Program p = testing::random_program(rng, 4, 16);
    const Bits prefix = testing::random_bits(rng, testing::pick(rng, 0, 8));
    const std::uint64_t fuel = testing::pick(rng, 0, 200);
    ASSERT_EQ(run(p, prefix, fuel), run(p, prefix, fuel));
  }
}

TEST_F(RunProperties, HaltingIsStableUnderPrefixExtension) {
  for (int trial = 0; trial < 300; ++trial) {
    const Program p = testing::random_program(rng, 4, 16);
    const Bits prefix = testing::random_bits(rng, testing::pick(rng, 0, 6));
    const auto out = run(p, prefix, 500);
    if (!std::holds_alternative<Halted>(out)) continue;
    Bits longer = prefix;
    for (const bool b : testing::random_bits(rng, 5)) longer.push_back(b);
    ASSERT_EQ(run(p, longer, 500), out) << to_string(p);
  }
}

TEST_F(RunProperties, HaltingIsStableUnderMoreFuel) {
  for (int trial = 0; trial < 300; ++trial) {
    const Program p = testing::random_program(rng, 4, 16);
    const Bits prefix = testing::random_bits(rng, 8);
    const std::uint64_t fuel = testing::pick(rng, 1, 60);
    const auto out = run(p, prefix, fuel);
    if (!std::holds_alternative<Halted>(out)) continue;
    ASSERT_EQ(run(p, prefix, fuel + testing::pick(rng, 1, 1000)), out);
  }
}

TEST_F(RunProperties, BitDemandOnlyPastThePrefix) {
  for (int trial = 0; trial < 300; ++trial) {
    const Program p = testing::random_program(rng, 4, 16);
    const Bits prefix = testing::random_bits(rng, testing::pick(rng, 0, 6));
    const auto out = run(p, prefix, 500);
    if (const auto* d = std::get_if<BitDemand>(&out)) {
      ASSERT_GE(d->position, prefix.size());
    }
  }
}

TEST_F(RunProperties, InterventionIsAFixpoint) {
  for (int trial = 0; trial < 300; ++trial) {
    const Program p = testing::random_program(rng, 4, 16);
    const InterventionSpec spec = testing::random_spec(rng, 4, 3);
    const Bits prefix = testing::random_bits(rng, 8);
    const auto out = run(intervene(p, spec), prefix, 500);
    if (const auto* h = std::get_if<Halted>(&out)) {
      for (const auto& [i, v] : spec.entries()) ASSERT_EQ(h->value(i), v);
    }
  }
}

TEST_F(RunProperties, InterventionIsIdempotent) {
  for (int trial = 0; trial < 300; ++trial) {
    const Program p = testing::random_program(rng, 4, 16);
    const InterventionSpec spec = testing::random_spec(rng, 4, 3);
    const Bits prefix = testing::random_bits(rng, testing::pick(rng, 0, 8));
    const std::uint64_t fuel = testing::pick(rng, 0, 300);
    ASSERT_EQ(run(intervene(intervene(p, spec), spec), prefix, fuel), run(intervene(p, spec), prefix, fuel));
  }
}

TEST_F(RunProperties, EmptyInterventionChangesNothing) {
  for (int trial = 0; trial < 200; ++trial) {
    const Program p = testing::random_program(rng, 4, 16);
    const Bits prefix = testing::random_bits(rng, testing::pick(rng, 0, 8));
    ASSERT_EQ(run(intervene(p, InterventionSpec{}), prefix, 300), run(p, prefix, 300));
  }
}

// The toggle test reports exactly the held squares and restores the rest.
TEST_F(RunProperties, ToggleTestDetectsHeldSquares) {
  constexpr std::size_t kVars = 4;
  constexpr std::size_t kScratch = 10;
  constexpr std::size_t kFlag = 11;
  for (int trial = 0; trial < 300; ++trial) {
    Program p;
    std::map<std::size_t, bool> start;
    for (std::size_t i = 0; i < kVars; ++i) {
      start[i] = testing::coin(rng);
      p.body.push_back(Stmt::write(i, Expr::constant(start[i])));
    }
    const InterventionSpec spec = testing::random_spec(rng, kVars, kVars);
    const std::size_t target = testing::pick(rng, 0, kVars - 1);
    for (auto& s : held_test(target, kScratch, kFlag)) p.body.push_back(std::move(s));
    const auto out = run(intervene(p, spec), {}, 100);
    ASSERT_TRUE(std::holds_alternative<Halted>(out));
    const auto& h = std::get<Halted>(out);
    ASSERT_EQ(h.value(kFlag), spec.holds(target));
    for (std::size_t i = 0; i < kVars; ++i) {
      ASSERT_EQ(h.value(i), spec.holds(i) ? spec.value(i) : start[i]);
    }
  }
}

}  // namespace
}  // namespace psim
