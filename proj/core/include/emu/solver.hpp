#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emu/classical.hpp"
#include "emu/energy.hpp"
#include "emu/formula.hpp"
#include "emu/game.hpp"

namespace emu {

/// Inputs of the sufficient-bound formula and which variant applied.
struct BoundBreakdown {
  std::uint64_t num_states = 0;   // N
  std::int64_t max_weight = 0;    // K
  std::size_t length = 0;         // m
  int alternation_depth = 0;      // d of the formula
  std::size_t num_priorities = 0; // d of the priority annotation, 0 if none
  std::string variant;            // "parity", "buchi" or "general"
  std::uint64_t bound = 0;
  std::uint64_t credit_cap = 0;   // finite winning credits never need to exceed this
  /// Every applicable variant with its bound, the chosen one first.
  std::vector<std::pair<std::string, std::uint64_t>> candidates;
};

/// Sufficient bound for unbounded energy accumulation:
///   parity annotation: d(N^2+N-1)K with d the number of priorities
///   Buchi-shaped formula: 2(N^2+N-1)K
///   otherwise: (d+1)((N^2+N)m-1)K
/// clamped below by K. Throws OverflowError when the bound leaves uint64.
BoundBreakdown bound_breakdown(const WeightedGameStructure& g, const Formula& psi);
std::uint64_t sufficient_bound(const WeightedGameStructure& g, const Formula& psi);

struct SolveRequest {
  WeightedGameStructure game;
  Formula formula;
  CreditBound bound = CreditBound::finite(0);
  std::optional<Assertion> query;  // pure-state assertion selecting states of interest
};

struct SolveReport {
  CreditBound requested_bound;
  std::uint64_t effective_bound = 0;
  EnergyFunction min_credits;
  StateSet sys_region;
  StateSet env_region;
  FormulaMetrics metrics;
  BoundBreakdown breakdown;
  std::vector<StateBits> query_states;  // empty selection means every state
  EvalStats stats;

  bool unbounded() const { return requested_bound.is_infinite(); }
  /// Whether the system wins every queried state (some state without a query).
  bool system_wins() const;
};

/// P1/P2 at a finite bound, or at the sufficient bound when the request is
/// unbounded. Requires a closed, monotone formula whose negation-normal form
/// uses no Box. Throws InternalError when the regions fail to partition 2^V.
SolveReport solve(const SolveRequest& req);

/// Environment-side view of the same game: the dual values g of the negated
/// formula and the system credits recovered from them.
struct EnvCredit {
  EnergyFunction dual;           // values of push_negations(!psi)
  EnergyFunction recovered;      // 0 -> +inf, +inf -> 0, x -> c+1-x
  /// Largest credit for which the environment wins; nullopt when it never does.
  std::vector<std::optional<std::uint64_t>> max_env_credit;
};

EnvCredit env_max_credit(const WeightedGameStructure& g, std::uint64_t c, const Formula& psi);

struct Regions {
  StateSet sys;
  StateSet env;
};

/// W_sys = {psi != +inf}, W_env = {push_negations(!psi) = 0}. Throws
/// InternalError when they do not partition 2^V.
Regions winning_regions(const WeightedGameStructure& g, std::uint64_t c, const Formula& psi);

struct ParityCrosscheck {
  EnergyFunction symbolic;  // energy mu-calculus on the parity formula
  EnergyFunction explicit_game;  // explicit game, restricted to environment states
  std::vector<StateBits> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Compares the symbolic parity solve with the explicit energy parity game.
ParityCrosscheck crosscheck_parity(const WeightedGameStructure& g, std::uint64_t c);

/// Formula a request falls back to: the game's own formula, else the parity
/// formula of its priorities. Throws FormulaError when neither exists.
Formula default_formula(const WeightedGameStructure& g);

}  // namespace emu
