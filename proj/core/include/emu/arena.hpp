#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "emu/game.hpp"
#include "emu/variables.hpp"

namespace emu {

struct Move {
  StateBits target = 0;
  std::int64_t weight = 0;
};

/// Explicit compilation of a game structure: for every state the valid inputs
/// (ρe holds), and for every valid input the valid system completions (ρs
/// holds) with their weights. A state without inputs is an environment
/// deadlock; an input without moves is a system deadlock.
class Arena {
 public:
  using Predicate = std::function<bool(StateBits, StateBits)>;
  using WeightFn = std::function<std::int64_t(StateBits, StateBits)>;

  /// Throws WeightCoverError when a ρs transition has no weight rule.
  static Arena from_game(const WeightedGameStructure& g);

  /// Generic builder over `num_vars` variables with the given input mask.
  /// `weight` may be empty (all weights 0). Throws CapacityError when the
  /// game is too large to enumerate.
  static Arena build(int num_vars, StateBits input_mask, const Predicate& rho_e, const Predicate& rho_s,
                     const WeightFn& weight = {});

  int num_vars() const { return num_vars_; }
  std::size_t num_states() const { return state_offsets_.size() - 1; }
  StateBits input_mask() const { return input_mask_; }

  std::size_t groups_begin(StateBits s) const { return state_offsets_[s]; }
  std::size_t groups_end(StateBits s) const { return state_offsets_[s + 1]; }
  std::size_t num_groups(StateBits s) const { return groups_end(s) - groups_begin(s); }
  /// Input assignment of group `g`.
  StateBits group_input(std::size_t g) const { return group_inputs_[g]; }
  std::span<const Move> moves(std::size_t g) const {
    return {moves_.data() + group_offsets_[g], group_offsets_[g + 1] - group_offsets_[g]};
  }

  std::size_t total_moves() const { return moves_.size(); }
  std::int64_t max_abs_weight() const { return max_abs_weight_; }

 private:
  int num_vars_ = 0;
  StateBits input_mask_ = 0;
  std::vector<std::size_t> state_offsets_{0};
  std::vector<std::size_t> group_offsets_{0};
  std::vector<StateBits> group_inputs_;
  std::vector<Move> moves_;
  std::int64_t max_abs_weight_ = 0;
};

}  // namespace emu
