#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emu/arena.hpp"
#include "emu/classical.hpp"
#include "emu/energy_value.hpp"
#include "emu/formula.hpp"
#include "emu/game.hpp"

namespace emu {

/// Total map from states to E(c), an element of the lattice EFL(c).
class EnergyFunction {
 public:
  EnergyFunction() = default;
  EnergyFunction(std::uint64_t bound, std::size_t n, EnergyValue fill = EnergyValue::zero());

  /// f_0, the lattice top.
  static EnergyFunction zeros(std::uint64_t bound, std::size_t n) { return {bound, n, EnergyValue::zero()}; }
  /// f_{+inf}, the lattice bottom.
  static EnergyFunction infinities(std::uint64_t bound, std::size_t n) { return {bound, n, EnergyValue::infinity()}; }

  std::uint64_t bound() const { return bound_; }
  std::size_t size() const { return values_.size(); }
  EnergyValue operator[](std::size_t s) const { return values_[s]; }
  EnergyValue at(std::size_t s) const { return values_.at(s); }
  /// Throws DomainError when `v` is finite and exceeds the bound.
  void set(std::size_t s, EnergyValue v);
  const std::vector<EnergyValue>& values() const { return values_; }

  bool is_constant(EnergyValue v) const;
  /// "[0, 1, inf, 0]"
  std::string to_string() const;

  bool operator==(const EnergyFunction&) const = default;

 private:
  std::uint64_t bound_ = 0;
  std::vector<EnergyValue> values_;
};

using EnergyValuation = std::map<std::string, EnergyFunction>;

/// EC_c(s, s', e) of the system operator, cases tested in order.
EnergyValue ec(const WeightedGameStructure& g, std::uint64_t c, State s, State next, EnergyValue e);
/// Dual operator value used by the environment predecessor.
EnergyValue ec_env(const WeightedGameStructure& g, std::uint64_t c, State s, State next, EnergyValue e);

/// Single-move cores of ec/ec_env for a transition satisfying ρe and ρs.
EnergyValue ec_move(std::uint64_t c, std::int64_t w, EnergyValue e);
EnergyValue ec_env_move(std::uint64_t c, std::int64_t w, EnergyValue e);

/// max over valid inputs (0 if none) of min over valid moves (+inf if none).
EnergyFunction ecpre(const Arena& arena, const EnergyFunction& f);
/// min over valid inputs (+inf if none) of max over valid moves (0 if none).
EnergyFunction ecpre_env(const Arena& arena, const EnergyFunction& f);

/// Pointwise ~: 0 <-> +inf, x -> c+1-x.
EnergyFunction neg(const EnergyFunction& f);
/// Lattice join (pointwise integer min) and meet (pointwise integer max).
/// Both throw BoundMismatch on different bounds or sizes.
EnergyFunction join(const EnergyFunction& f, const EnergyFunction& g);
EnergyFunction meet(const EnergyFunction& f, const EnergyFunction& g);
/// f ⪯ g, i.e. f pointwise integer-greater-or-equal than g.
bool leq(const EnergyFunction& f, const EnergyFunction& g);

/// Atom semantics: 0 on satisfying states, +inf elsewhere.
EnergyFunction atom_function(const VariableSet& vars, std::size_t n, std::uint64_t c, const Assertion& a);

/// Energy mu-calculus semantics at finite bound c. mu iterates from f_{+inf},
/// nu from f_0; a run may change at most 2^|V|(c+1) times and iterates must
/// form a ⪯-monotone chain, otherwise InternalError. Throws FormulaError for
/// non-monotone formulas or unbound variables.
EnergyFunction eval_energy(const VariableSet& vars, const Arena& arena, std::uint64_t c, const Formula& f,
                           const EnergyValuation& v = {}, EvalStats* stats = nullptr);

/// Convenience overload compiling the arena from `g`.
EnergyFunction eval_energy(const WeightedGameStructure& g, std::uint64_t c, const Formula& f,
                           const EnergyValuation& v = {}, EvalStats* stats = nullptr);

}  // namespace emu
