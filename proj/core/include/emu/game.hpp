#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emu/assertion.hpp"
#include "emu/energy_value.hpp"
#include "emu/formula.hpp"
#include "emu/variables.hpp"

namespace emu {

struct WeightRule {
  Assertion guard;  // over V and V'
  std::int64_t weight = 0;
};

struct PriorityRule {
  Assertion guard;  // pure-state
  std::uint32_t priority = 0;
};

/// Symbolic weighted game structure: inputs X and outputs Y, the environment
/// and system transition assertions, first-match weight rules, an optional
/// priority annotation and an optional winning formula.
class WeightedGameStructure {
 public:
  /// Validates assertion supports: rho_e may read V and X', rho_s and weight
  /// guards V and V', priority guards only V. Throws MalformedAssertion.
  WeightedGameStructure(VariableSet vars, Assertion rho_e, Assertion rho_s, std::vector<WeightRule> weights,
                        std::vector<PriorityRule> priorities = {}, std::optional<Formula> formula = std::nullopt);

  const VariableSet& vars() const { return vars_; }
  const Assertion& rho_e() const { return rho_e_; }
  const Assertion& rho_s() const { return rho_s_; }
  const std::vector<WeightRule>& weight_rules() const { return weights_; }
  const std::vector<PriorityRule>& priority_rules() const { return priorities_; }
  bool has_priorities() const { return !priorities_.empty(); }
  const std::optional<Formula>& formula() const { return formula_; }

  std::uint64_t num_states() const { return vars_.num_states(); }
  /// K: maximum absolute rule weight.
  std::int64_t max_abs_weight() const { return max_abs_weight_; }

  bool env_allows(StateBits s, StateBits next) const { return rho_e_c_.eval(s, next); }
  bool sys_allows(StateBits s, StateBits next) const { return rho_s_c_.eval(s, next); }
  /// Weight of the first matching rule, or nullopt when no rule matches.
  std::optional<std::int64_t> find_weight(StateBits s, StateBits next) const;

  /// { t | (s, p(t)) |= rho_e & rho_s }, in increasing order.
  std::vector<State> successors(State s) const;
  /// Valid inputs as X-assignments (bits inside the input mask).
  std::vector<StateBits> env_choices(State s) const;
  /// Valid outputs for input `input` as Y-assignments.
  std::vector<StateBits> sys_choices(State s, StateBits input) const;
  bool is_env_deadlock(State s) const { return env_choices(s).empty(); }
  bool is_sys_deadlock(State s, StateBits input) const { return sys_choices(s, input).empty(); }

  /// Throws DomainError when (s, p(next)) is not a rho_s transition and
  /// WeightCoverError when no rule matches.
  std::int64_t weight(State s, State next) const;

  /// Priority of the unique matching guard. Throws DomainError when no guard or
  /// several guards with different priorities match.
  std::uint32_t priority_of(State s) const;
  /// Throws DomainError unless the priority guards partition 2^V.
  void check_priority_partition() const;
  /// Distinct priorities in ascending order.
  std::vector<std::uint32_t> distinct_priorities() const;

  /// Human-readable warnings: weight rules whose guards overlap with different
  /// weights on some rho_s transition (first match wins).
  std::vector<std::string> lint() const;

 private:
  VariableSet vars_;
  Assertion rho_e_;
  Assertion rho_s_;
  std::vector<WeightRule> weights_;
  std::vector<PriorityRule> priorities_;
  std::optional<Formula> formula_;

  CompiledAssertion rho_e_c_;
  CompiledAssertion rho_s_c_;
  std::vector<CompiledAssertion> weight_c_;
  std::vector<CompiledAssertion> priority_c_;
  std::int64_t max_abs_weight_ = 0;
};

/// A finite play prefix; `trailing_input` records the input of a prefix that
/// ends in a system deadlock.
struct PlayPrefix {
  std::vector<State> states;
  std::optional<StateBits> trailing_input;
};

/// r_0 = c0, r_i = min(c, r_{i-1} + w(s_{i-1}, s_i)). The result may be
/// negative. Throws InvalidCredit when c0 > c, DomainError on a non-transition
/// and OverflowError when an unbounded sum leaves int64.
std::int64_t energy_level(const WeightedGameStructure& g, CreditBound c, std::uint64_t c0, const PlayPrefix& prefix);

/// True iff every prefix of `prefix` has non-negative energy level.
bool wins_energy_objective(const WeightedGameStructure& g, CreditBound c, std::uint64_t c0,
                           const PlayPrefix& prefix);

/// Min-even parity condition as a sys-fragment formula over the priority
/// guards: sigma_1 Z_1 ... sigma_k Z_k . OR_i (P_i & <>Z_i), with nu for even
/// and mu for odd priorities, smallest priority outermost.
Formula parity_formula(const std::vector<PriorityRule>& priorities);

}  // namespace emu
