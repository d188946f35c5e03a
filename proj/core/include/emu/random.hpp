#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "emu/assertion.hpp"
#include "emu/formula.hpp"
#include "emu/game.hpp"
#include "emu/parity.hpp"

namespace emu {

/// Seeded generator; draws are reproducible across platforms because the
/// distributions are implemented here rather than taken from <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool chance(double p);
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(items.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

struct RandomGameOptions {
  int min_vars = 2;
  int max_vars = 4;
  std::int64_t max_weight = 2;
  double restrict_env = 0.3;   // probability that rho_e is not `true`
  double restrict_sys = 0.5;   // probability that rho_s is not `true`
  bool priorities = false;
  std::uint32_t max_priority = 2;
};

/// Random assertion over the given atoms (each atom a variable name, primed
/// when `primed` is set for that slot).
Assertion random_assertion(Rng& rng, const std::vector<Assertion>& atoms, int depth);
/// Random pure-state assertion over `vars`.
Assertion random_state_assertion(Rng& rng, const VariableSet& vars, int depth = 2);

WeightedGameStructure random_game(Rng& rng, const RandomGameOptions& opt = {});

/// Priority rules assigning each state a random priority in [0, max_priority];
/// guards are disjunctions of minterms and so partition 2^V.
std::vector<PriorityRule> random_priorities(Rng& rng, const VariableSet& vars, std::uint32_t max_priority);

/// Random explicit energy parity game with 1..max_states states, priorities in
/// [0, max_priority - 1] and weights in [-max_weight, max_weight].
EnergyParityGame random_energy_parity_game(Rng& rng, std::size_t max_states, std::uint32_t max_priority,
                                           std::int64_t max_weight);

/// Closed monotone formula of bounded depth built from state atoms, And, Or,
/// one modality kind (Diamond when `sys`, Box otherwise), fixpoints and
/// negations of closed subformulas.
Formula random_formula(Rng& rng, const VariableSet& vars, int depth, bool sys = true, bool allow_not = true);

/// One of safety, reach(p), buchi(J), cobuchi(J) with random state parameters;
/// `which` selects the builtin (0..3).
Formula random_builtin(Rng& rng, const VariableSet& vars, int which);

}  // namespace emu
