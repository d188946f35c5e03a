#include "emu/arena.hpp"

#include <algorithm>

#include "emu/errors.hpp"

namespace emu {

namespace {

constexpr std::uint64_t kMaxPairs = std::uint64_t{1} << 34;
constexpr std::size_t kMaxMoves = std::size_t{1} << 28;

}  // namespace

Arena Arena::build(int num_vars, StateBits input_mask, const Predicate& rho_e, const Predicate& rho_s,
                   const WeightFn& weight) {
  if (num_vars < 0 || num_vars > kMaxVariables) {
    throw CapacityError("at most " + std::to_string(kMaxVariables) + " variables are supported");
  }
  const std::uint64_t n = std::uint64_t{1} << num_vars;
  if (n * n > kMaxPairs) {
    throw CapacityError("explicit arena over " + std::to_string(num_vars) + " variables is too large to enumerate");
  }
  const StateBits full = static_cast<StateBits>(n - 1);
  const StateBits output_mask = full & ~input_mask;

  Arena a;
  a.num_vars_ = num_vars;
  a.input_mask_ = input_mask;
  a.state_offsets_.reserve(n + 1);
  for (StateBits s = 0; s < n; ++s) {
    for_each_submask(input_mask, [&](StateBits x) {
      if (!rho_e(s, x)) return;
      a.group_inputs_.push_back(x);
      for_each_submask(output_mask, [&](StateBits y) {
        const StateBits t = x | y;
        if (!rho_s(s, t)) return;
        const std::int64_t w = weight ? weight(s, t) : 0;
        a.moves_.push_back({t, w});
        a.max_abs_weight_ = std::max(a.max_abs_weight_, w < 0 ? -w : w);
        if (a.moves_.size() > kMaxMoves) throw CapacityError("explicit arena exceeds the move limit");
      });
      a.group_offsets_.push_back(a.moves_.size());
    });
    a.state_offsets_.push_back(a.group_inputs_.size());
  }
  return a;
}

Arena Arena::from_game(const WeightedGameStructure& g) {
  const auto& vars = g.vars();
  return build(
      vars.size(), vars.input_mask(), [&](StateBits s, StateBits t) { return g.env_allows(s, t); },
      [&](StateBits s, StateBits t) { return g.sys_allows(s, t); },
      [&](StateBits s, StateBits t) {
        const auto w = g.find_weight(s, t);
        if (!w) {
          throw WeightCoverError("no weight rule matches transition (" + vars.describe(State{s}) + ") -> (" +
                                 vars.describe(State{t}) + ")");
        }
        return *w;
      });
}

}  // namespace emu
