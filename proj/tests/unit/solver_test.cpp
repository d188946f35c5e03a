#include <gtest/gtest.h>

#include "emu/errors.hpp"
#include "emu/io.hpp"
#include "emu/reduction.hpp"
#include "emu/solver.hpp"
#include "test_support.hpp"

namespace emu {
namespace {

using testing::g1;

const Assertion y = Assertion::variable("y");

TEST(SufficientBound, Examples) {
  const auto g = g1();
  const BoundBreakdown s = bound_breakdown(g, builtin::safety());
  EXPECT_EQ(s.num_states, 4U);
  EXPECT_EQ(s.max_weight, 1);
  EXPECT_EQ(s.length, 3U);
  EXPECT_EQ(s.alternation_depth, 1);
  EXPECT_EQ(s.bound, 118U);
  EXPECT_EQ(s.variant, "general");
  EXPECT_EQ(s.credit_cap, 59U);
  EXPECT_EQ(sufficient_bound(g, builtin::buchi(y)), 38U);
  const auto gp = with_priorities(g, testing::g1_buchi_priorities());
  const BoundBreakdown p = bound_breakdown(gp, builtin::safety());
  EXPECT_EQ(p.bound, 38U);
  EXPECT_EQ(p.variant, "parity");
  EXPECT_EQ(p.candidates.front().first, "parity");
  EXPECT_EQ(p.candidates.back(), (std::pair<std::string, std::uint64_t>{"general", 118}));
}

TEST(SufficientBound, ClampedToK) {
  const VariableSet v({"x"}, {"x"});
  const WeightedGameStructure g(v, Assertion(), Assertion(), {{Assertion(), 5}});
  const WeightedGameStructure flat(v, Assertion(), Assertion(), {{Assertion(), 0}});
  EXPECT_GE(sufficient_bound(g, builtin::safety()), 5U);
  EXPECT_EQ(sufficient_bound(flat, builtin::safety()), 0U);
  EXPECT_EQ(sufficient_bound(g, Formula::parse("x")), 25U);
}

TEST(Solve, G1Buchi) {
  const auto g = g1();
  SolveReport r = solve({g, builtin::buchi(y), CreditBound::finite(2), Assertion::parse("x & y")});
  EXPECT_EQ(r.min_credits, EnergyFunction::zeros(2, 4));
  EXPECT_TRUE(r.system_wins());
  EXPECT_EQ(r.query_states, (std::vector<StateBits>{3}));
  EXPECT_EQ(r.sys_region, StateSet::full(4));

  r = solve({g, builtin::buchi(y), CreditBound::finite(0), std::nullopt});
  EXPECT_EQ(r.min_credits, EnergyFunction::infinities(0, 4));
  EXPECT_FALSE(r.system_wins());
  EXPECT_EQ(r.env_region, StateSet::full(4));

  r = solve({g, builtin::buchi(y), CreditBound::infinite(), std::nullopt});
  EXPECT_TRUE(r.unbounded());
  EXPECT_EQ(r.effective_bound, 38U);
  EXPECT_TRUE(r.min_credits.is_constant(EnergyValue::zero()));
  EXPECT_EQ(r.breakdown.variant, "buchi");
  const SolveReport twice = solve({g, builtin::buchi(y), CreditBound::finite(76), std::nullopt});
  EXPECT_EQ(twice.sys_region, r.sys_region);
}

TEST(Solve, RejectsUnsupportedFormulas) {
  const auto g = g1();
  EXPECT_THROW(solve({g, Formula::parse("nu X . []X"), CreditBound::finite(1), std::nullopt}), FormulaError);
  EXPECT_THROW(solve({g, Formula::parse("<>a | []b"), CreditBound::finite(1), std::nullopt}), FormulaError);
  EXPECT_THROW(solve({g, Formula::parse("<>X"), CreditBound::finite(1), std::nullopt}), FormulaError);
  EXPECT_THROW(solve({g, Formula::parse("mu X . !<>X"), CreditBound::finite(1), std::nullopt}), FormulaError);
  EXPECT_NO_THROW(solve({g, Formula::parse("!(nu X . []X)"), CreditBound::finite(1), std::nullopt}));
  EXPECT_THROW(solve({g, builtin::safety(), CreditBound::finite(1), Assertion::parse("y'")}), MalformedAssertion);
}

TEST(EnvMaxCredit, G1) {
  const auto g = g1();
  const EnvCredit two = env_max_credit(g, 2, builtin::buchi(y));
  EXPECT_EQ(two.dual, EnergyFunction::infinities(2, 4));
  EXPECT_EQ(two.recovered, EnergyFunction::zeros(2, 4));
  for (const auto& m : two.max_env_credit) EXPECT_FALSE(m);
  const EnvCredit zero = env_max_credit(g, 0, builtin::buchi(y));
  EXPECT_EQ(zero.dual, EnergyFunction::zeros(0, 4));
  EXPECT_EQ(zero.recovered, EnergyFunction::infinities(0, 4));
  for (const auto& m : zero.max_env_credit) EXPECT_EQ(m, 0U);
}

TEST(EnvMaxCredit, RecoveryMatchesDirectPath) {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_game(rng);
    const auto c = static_cast<std::uint64_t>(rng.uniform(0, 8));
    const Formula psi = random_builtin(rng, g.vars(), i % 4);
    const EnvCredit e = env_max_credit(g, c, psi);
    const EnergyFunction direct = eval_energy(g, c, psi);
    EXPECT_EQ(e.recovered, direct);
    for (std::size_t s = 0; s < direct.size(); ++s) {
      if (direct[s].is_infinite()) {
        EXPECT_EQ(e.max_env_credit[s], c);
      } else if (direct[s] == EnergyValue::zero()) {
        EXPECT_FALSE(e.max_env_credit[s]);
      } else {
        EXPECT_EQ(e.max_env_credit[s], direct[s].value() - 1);
      }
    }
  }
}

TEST(WinningRegions, Examples) {
  const auto g = g1();
  Regions r = winning_regions(g, 2, builtin::buchi(y));
  EXPECT_EQ(r.sys, StateSet::full(4));
  EXPECT_TRUE(r.env.is_empty());
  r = winning_regions(g, 0, builtin::buchi(y));
  EXPECT_TRUE(r.sys.is_empty());
  EXPECT_EQ(r.env, StateSet::full(4));
  const WeightedGameStructure dead(g.vars(), Assertion::constant(false), Assertion(), g.weight_rules());
  r = winning_regions(dead, 0, builtin::safety());
  EXPECT_EQ(r.sys, StateSet::full(4));
}

TEST(Crosscheck, G1) {
  const auto g = with_priorities(g1(), testing::g1_buchi_priorities());
  ParityCrosscheck x = crosscheck_parity(g, 2);
  EXPECT_TRUE(x.ok());
  EXPECT_EQ(x.symbolic, EnergyFunction::zeros(2, 4));
  x = crosscheck_parity(g, 0);
  EXPECT_TRUE(x.ok());
  EXPECT_EQ(x.symbolic, EnergyFunction::infinities(0, 4));
}

TEST(Crosscheck, RandomBatch) {
  Rng rng(33);
  RandomGameOptions opt;
  opt.priorities = true;
  opt.max_priority = 3;
  for (int i = 0; i < 60; ++i) {
    const auto g = random_game(rng, opt);
    const auto c = static_cast<std::uint64_t>(rng.uniform(0, 5));
    const ParityCrosscheck x = crosscheck_parity(g, c);
    EXPECT_TRUE(x.ok()) << game_to_json(g) << " c=" << c;
  }
}

TEST(Solve, BoundMonotonicityAndStabilization) {
  Rng rng(34);
  for (int i = 0; i < 60; ++i) {
    const auto g = random_game(rng, RandomGameOptions{2, 3});
    const Formula psi = random_builtin(rng, g.vars(), i % 4);
    const BoundBreakdown b = bound_breakdown(g, psi);
    const SolveReport at_b = solve({g, psi, CreditBound::finite(b.bound), std::nullopt});
    const SolveReport at_2b = solve({g, psi, CreditBound::finite(2 * b.bound), std::nullopt});
    const SolveReport at_2bk = solve({g, psi, CreditBound::finite(2 * b.bound + static_cast<std::uint64_t>(b.max_weight)), std::nullopt});
    EXPECT_EQ(at_b.sys_region, at_2b.sys_region);
    EXPECT_EQ(at_b.sys_region, at_2bk.sys_region);
    for (std::size_t s = 0; s < at_b.min_credits.size(); ++s) {
      if (at_b.min_credits[s].is_finite()) EXPECT_LE(at_b.min_credits[s].value(), b.credit_cap);
    }
    EnergyFunction prev;
    StateSet prev_region;
    for (std::uint64_t c = 0; c <= 6; ++c) {
      const SolveReport r = solve({g, psi, CreditBound::finite(c), std::nullopt});
      if (c > 0) {
        for (std::size_t s = 0; s < prev.size(); ++s) EXPECT_GE(prev[s], r.min_credits[s]);
        EXPECT_TRUE(prev_region.is_subset_of(r.sys_region));
      }
      prev = r.min_credits;
      prev_region = r.sys_region;
    }
  }
}

TEST(DefaultFormula, Fallbacks) {
  const auto g = g1();
  EXPECT_THROW(default_formula(g), FormulaError);
  const auto gp = with_priorities(g, testing::g1_buchi_priorities());
  EXPECT_TRUE(alpha_equivalent(default_formula(gp), parity_formula(gp.priority_rules())));
  const WeightedGameStructure gf(g.vars(), g.rho_e(), g.rho_s(), g.weight_rules(), {}, builtin::safety());
  EXPECT_TRUE(alpha_equivalent(default_formula(gf), builtin::safety()));
}

TEST(ParityFormula, G1IsBuchi) {
  const Formula f = parity_formula(testing::g1_buchi_priorities());
  const auto g = g1();
  for (std::uint64_t c : {0, 1, 2, 5}) EXPECT_EQ(eval_energy(g, c, f), eval_energy(g, c, builtin::buchi(y)));
}

}  // namespace
}  // namespace emu
