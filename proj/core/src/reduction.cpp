#include "emu/reduction.hpp"

#include <bit>

#include "emu/errors.hpp"

namespace emu {

namespace {

std::vector<std::string> fresh_names(const VariableSet& vars, int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) {
    std::string name = "ydom" + std::to_string(i);
    while (vars.index_of(name)) name += "_";
    out.push_back(std::move(name));
  }
  return out;
}

int counter_bits(std::uint64_t c) { return c == 0 ? 1 : static_cast<int>(std::bit_width(c)); }

void require_fragment(const Formula& f, Fragment want, const char* what) {
  if (!is_closed(f)) throw FormulaError(std::string(what) + " requires a closed formula");
  const Fragment got = classify_fragment(f);
  if (got != want && got != Fragment::Both) {
    throw FormulaError(std::string(what) + " requires a " + to_string(want) + "-fragment formula, got " +
                       to_string(got));
  }
}

}  // namespace

ReducedGame::ReducedGame(const WeightedGameStructure& g, std::uint64_t c) : game_(g), bound_(c) {
  const int bits = counter_bits(c);
  if (g.vars().size() + bits > kMaxVariables) {
    throw CapacityError("bound " + std::to_string(c) + " needs " + std::to_string(bits) +
                        " counter bits, exceeding the variable cap");
  }
  ydom_names_ = fresh_names(g.vars(), bits);
  vars_ = g.vars().with_outputs(ydom_names_);
  arena_ = Arena::build(
      vars_.size(), vars_.input_mask(), [this](StateBits a, StateBits b) { return env_transition(a, b); },
      [this](StateBits a, StateBits b) { return sys_transition(a, b); });
}

StateBits ReducedGame::encode(StateBits s, std::uint64_t credit) const {
  if (credit > bound_) throw DomainError("credit " + std::to_string(credit) + " exceeds bound");
  return s | static_cast<StateBits>(credit << game_.vars().size());
}

bool ReducedGame::env_transition(StateBits a, StateBits b) const {
  return game_.env_allows(state_of(a), state_of(b));
}

bool ReducedGame::sys_transition(StateBits a, StateBits b) const {
  const std::uint64_t c1 = credit_of(a);
  const std::uint64_t c2 = credit_of(b);
  if (c1 > bound_ || c2 > bound_) return false;
  const StateBits s1 = state_of(a);
  const StateBits s2 = state_of(b);
  if (!game_.sys_allows(s1, s2)) return false;
  const std::int64_t w = game_.weight(State{s1}, State{s2});
  __extension__ typedef __int128 Wide;
  return static_cast<Wide>(c1) + w >= static_cast<Wide>(c2);
}

EnergyFunction oracle_min_credit_sys(const WeightedGameStructure& g, std::uint64_t c, const Formula& psi,
                                     EvalStats* stats) {
  require_fragment(psi, Fragment::Sys, "the system oracle");
  const ReducedGame star(g, c);
  const StateSet win = eval_classical(star.vars(), star.arena(), psi, {}, stats);
  EnergyFunction out(c, g.num_states());
  for (StateBits s = 0; s < g.num_states(); ++s) {
    std::optional<std::uint64_t> least;
    for (std::uint64_t val = 0; val <= c; ++val) {
      const bool wins = win.contains(star.encode(s, val));
      if (wins && !least) least = val;
      if (!wins && least) {
        throw InternalError("system witness set is not upward closed at state " + g.vars().describe(State{s}));
      }
    }
    out.set(s, least ? EnergyValue(*least) : EnergyValue::infinity());
  }
  return out;
}

EnergyFunction oracle_max_credit_env(const WeightedGameStructure& g, std::uint64_t c, const Formula& psi_bar,
                                     EvalStats* stats) {
  require_fragment(psi_bar, Fragment::Env, "the environment oracle");
  const ReducedGame star(g, c);
  const StateSet win = eval_classical(star.vars(), star.arena(), psi_bar, {}, stats);
  EnergyFunction out(c, g.num_states());
  for (StateBits s = 0; s < g.num_states(); ++s) {
    std::uint64_t winning = 0;  // env wins exactly for credits 0 .. winning-1
    bool closed = true;
    for (std::uint64_t val = 0; val <= c; ++val) {
      if (win.contains(star.encode(s, val))) {
        if (winning != val) closed = false;
        ++winning;
      }
    }
    if (!closed) {
      throw InternalError("environment witness set is not downward closed at state " +
                          g.vars().describe(State{s}));
    }
    out.set(s, winning == 0 ? EnergyValue::infinity() : EnergyValue(c + 1 - winning));
  }
  return out;
}

}  // namespace emu
