#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emu {

/// Hard cap on |V| for explicit state enumeration.
inline constexpr int kMaxVariables = 24;

/// Truth assignment to V packed as a bit vector; bit i is variable i.
using StateBits = std::uint32_t;

/// A state of a game structure. Width is implied by the owning VariableSet.
struct State {
  StateBits bits = 0;

  bool get(int var) const { return (bits >> var) & 1U; }
  State with(int var, bool value) const {
    return State{value ? (bits | (StateBits{1} << var)) : (bits & ~(StateBits{1} << var))};
  }
  bool operator==(const State&) const = default;
  auto operator<=>(const State&) const = default;
};

/// Ordered, duplicate-free Boolean variables partitioned into inputs X
/// (environment) and outputs Y (system).
class VariableSet {
 public:
  VariableSet() = default;
  /// Throws DomainError on duplicate or unknown input names, and
  /// CapacityError above kMaxVariables.
  VariableSet(std::vector<std::string> names, const std::vector<std::string>& inputs);

  int size() const { return static_cast<int>(names_.size()); }
  std::uint64_t num_states() const { return std::uint64_t{1} << names_.size(); }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index_of(std::string_view name) const;
  bool is_input(int i) const { return (input_mask_ >> i) & 1U; }

  StateBits input_mask() const { return input_mask_; }
  StateBits output_mask() const { return full_mask() & ~input_mask_; }
  StateBits full_mask() const {
    return names_.empty() ? 0 : static_cast<StateBits>((std::uint64_t{1} << names_.size()) - 1);
  }
  std::vector<std::string> input_names() const;

  /// Appends fresh output variables (used by the energy-to-safety reduction).
  VariableSet with_outputs(const std::vector<std::string>& extra) const;

  /// "x=1 y=0" style rendering of a state.
  std::string describe(State s) const;
  /// Conjunction of literals characterising exactly `s`, e.g. "x & !y".
  std::string to_assertion_text(State s) const;

  bool operator==(const VariableSet&) const = default;

 private:
  std::vector<std::string> names_;
  StateBits input_mask_ = 0;
};

/// Calls `fn(sub)` for every submask of `mask`, in increasing numeric order.
template <typename Fn>
void for_each_submask(StateBits mask, Fn&& fn) {
  StateBits sub = 0;
  while (true) {
    fn(sub);
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

}  // namespace emu
