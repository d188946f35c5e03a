#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emu/arena.hpp"
#include "emu/classical.hpp"
#include "emu/energy.hpp"
#include "emu/formula.hpp"
#include "emu/game.hpp"

namespace emu {

/// The energy-to-plain game reduction G* at a finite bound c. States of G*
/// pair an original state with a credit counter stored in extra output bits
/// (yDom), encoded as s | (credit << |V|). Counter codes above c never occur
/// as successors.
class ReducedGame {
 public:
  ReducedGame(const WeightedGameStructure& g, std::uint64_t c);

  const VariableSet& vars() const { return vars_; }
  const VariableSet& original_vars() const { return game_.vars(); }
  std::uint64_t bound() const { return bound_; }
  int ydom_bits() const { return static_cast<int>(ydom_names_.size()); }
  const std::vector<std::string>& ydom_names() const { return ydom_names_; }
  const Arena& arena() const { return arena_; }

  StateBits encode(StateBits s, std::uint64_t credit) const;
  StateBits state_of(StateBits star) const { return star & game_.vars().full_mask(); }
  std::uint64_t credit_of(StateBits star) const { return star >> game_.vars().size(); }

  /// ρe lifted to V*: the counter bits are ignored.
  bool env_transition(StateBits a, StateBits b) const;
  /// ρs*: ρs on the projections, both counters in [0, c], and c1 + w >= c2.
  bool sys_transition(StateBits a, StateBits b) const;

 private:
  WeightedGameStructure game_;
  std::uint64_t bound_;
  std::vector<std::string> ydom_names_;
  VariableSet vars_;
  Arena arena_;
};

inline ReducedGame reduce(const WeightedGameStructure& g, std::uint64_t c) { return ReducedGame(g, c); }

/// Minimum credits of a sys-fragment formula read off the classical winning
/// set of G*: min{val | (s, val) wins}, +inf when none. Throws FormulaError
/// on a wrong fragment or open formula and InternalError when the witness
/// set is not upward closed in val.
EnergyFunction oracle_min_credit_sys(const WeightedGameStructure& g, std::uint64_t c, const Formula& psi,
                                     EvalStats* stats = nullptr);

/// Environment-side values of an env-fragment formula: g(s) = min{val |
/// (s, c - val) wins}, +inf when none. Env-winning credits must be downward
/// closed, otherwise InternalError.
EnergyFunction oracle_max_credit_env(const WeightedGameStructure& g, std::uint64_t c, const Formula& psi_bar,
                                     EvalStats* stats = nullptr);

}  // namespace emu
