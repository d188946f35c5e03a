#include <gtest/gtest.h>

#include "emu/classical.hpp"
#include "emu/errors.hpp"
#include "emu/formula.hpp"
#include "emu/random.hpp"
#include "test_support.hpp"

namespace emu {
namespace {

using testing::g1;

TEST(StateSet, Operations) {
  StateSet a(70);
  a.insert(0);
  a.insert(69);
  EXPECT_EQ(a.count(), 2U);
  EXPECT_EQ((~a).count(), 68U);
  EXPECT_EQ(a.elements(), (std::vector<std::size_t>{0, 69}));
  StateSet b = StateSet::full(70);
  EXPECT_TRUE(a.is_subset_of(b));
  EXPECT_FALSE(b.is_subset_of(a));
  EXPECT_EQ((a & b), a);
  EXPECT_EQ((a | b), b);
  a.erase(0);
  EXPECT_EQ(a.count(), 1U);
  EXPECT_TRUE(StateSet::empty(5).is_empty());
}

TEST(Cpre, SystemExamples) {
  const auto g = g1();
  const Arena a = Arena::from_game(g);
  EXPECT_EQ(cpre_sys(a, StateSet::full(4)), StateSet::full(4));
  EXPECT_EQ(cpre_sys(a, StateSet::empty(4)), StateSet::empty(4));
  EXPECT_EQ(cpre_sys(a, satisfying_states(g.vars(), Assertion::parse("y"))), StateSet::full(4));
  EXPECT_EQ(cpre_sys(a, satisfying_states(g.vars(), Assertion::parse("x"))), StateSet::empty(4));
}

TEST(Cpre, EnvironmentExamples) {
  const auto g = g1();
  const Arena a = Arena::from_game(g);
  EXPECT_EQ(cpre_env(a, StateSet::full(4)), StateSet::full(4));
  EXPECT_EQ(cpre_env(a, satisfying_states(g.vars(), Assertion::parse("y"))), StateSet::empty(4));
  EXPECT_EQ(cpre_env(a, satisfying_states(g.vars(), Assertion::parse("x"))), StateSet::full(4));
  const WeightedGameStructure dead(g.vars(), Assertion::constant(false), Assertion(), {{Assertion(), 0}});
  const Arena d = Arena::from_game(dead);
  EXPECT_EQ(cpre_env(d, StateSet::full(4)), StateSet::empty(4));
  EXPECT_EQ(cpre_sys(d, StateSet::empty(4)), StateSet::full(4));
}

TEST(EvalClassical, G1) {
  const auto g = g1();
  const Arena a = Arena::from_game(g);
  EXPECT_EQ(eval_classical(g.vars(), a, builtin::safety()), StateSet::full(4));
  EXPECT_EQ(eval_classical(g.vars(), a, Formula::parse("mu X . false | <>X")), StateSet::empty(4));
  EXPECT_EQ(eval_classical(g.vars(), a, builtin::buchi(Assertion::variable("y"))), StateSet::full(4));
}

TEST(EvalClassical, Errors) {
  const auto g = g1();
  const Arena a = Arena::from_game(g);
  EXPECT_THROW(eval_classical(g.vars(), a, Formula::parse("mu X . !X")), FormulaError);
  EXPECT_THROW(eval_classical(g.vars(), a, Formula::parse("<>X")), FormulaError);
  SetValuation v{{"X", StateSet::full(4)}};
  EXPECT_EQ(eval_classical(g.vars(), a, Formula::parse("<>X"), v), StateSet::full(4));
  SetValuation wrong{{"X", StateSet::full(8)}};
  EXPECT_THROW(eval_classical(g.vars(), a, Formula::parse("<>X"), wrong), DomainError);
}

TEST(EvalClassical, IterationStatistics) {
  const auto g = g1();
  const Arena a = Arena::from_game(g);
  EvalStats stats;
  eval_classical(g.vars(), a, builtin::buchi(Assertion::variable("y")), {}, &stats);
  EXPECT_GE(stats.fixpoint_runs, 2U);
  EXPECT_LE(stats.max_changes, stats.iteration_cap);
  EXPECT_EQ(stats.iteration_cap, 4U);
}

TEST(EvalClassical, NegationIsComplement) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_game(rng);
    const Arena a = Arena::from_game(g);
    const Formula f = random_formula(rng, g.vars(), 4, rng.chance(0.5));
    const StateSet pos = eval_classical(g.vars(), a, f);
    EXPECT_EQ(eval_classical(g.vars(), a, Formula::negation(f)), ~pos) << f.to_string();
    EXPECT_EQ(eval_classical(g.vars(), a, push_negations(Formula::negation(f))), ~pos) << f.to_string();
  }
}

TEST(EvalClassical, BuchiLoopAgrees) {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_game(rng);
    const Arena a = Arena::from_game(g);
    const Assertion j = random_state_assertion(rng, g.vars());
    EXPECT_EQ(testing::buchi_loop_classical(a, satisfying_states(g.vars(), j)),
              eval_classical(g.vars(), a, builtin::buchi(j)));
  }
}

TEST(EvalClassical, DeterminacyOfBuiltins) {
  Rng rng(10);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_game(rng);
    const Arena a = Arena::from_game(g);
    const Formula f = random_builtin(rng, g.vars(), i % 4);
    const StateSet sys = eval_classical(g.vars(), a, f);
    const StateSet env = eval_classical(g.vars(), a, push_negations(Formula::negation(f)));
    EXPECT_TRUE((sys & env).is_empty());
    EXPECT_EQ((sys | env), StateSet::full(a.num_states()));
  }
}

TEST(Arena, StructureMatchesGame) {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_game(rng);
    const Arena a = Arena::from_game(g);
    ASSERT_EQ(a.num_states(), g.num_states());
    for (StateBits s = 0; s < g.num_states(); ++s) {
      const auto inputs = g.env_choices(State{s});
      ASSERT_EQ(a.num_groups(s), inputs.size());
      for (std::size_t k = 0; k < inputs.size(); ++k) {
        const std::size_t grp = a.groups_begin(s) + k;
        EXPECT_EQ(a.group_input(grp), inputs[k]);
        EXPECT_EQ(a.moves(grp).size(), g.sys_choices(State{s}, inputs[k]).size());
        for (const Move& m : a.moves(grp)) EXPECT_EQ(m.weight, g.weight(State{s}, State{m.target}));
      }
    }
  }
}

}  // namespace
}  // namespace emu
