#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "emu/arena.hpp"
#include "emu/classical.hpp"
#include "emu/energy.hpp"
#include "emu/game.hpp"
#include "emu/parity.hpp"
#include "emu/random.hpp"

namespace emu::testing {

/// V = {x, y}, X = {x}, rho_e = rho_s = true, w = -1 on y' else +1.
inline WeightedGameStructure g1() {
  return WeightedGameStructure(VariableSet({"x", "y"}, {"x"}), Assertion(), Assertion(),
                               {{Assertion::parse("y'"), -1}, {Assertion(), 1}});
}

inline std::vector<PriorityRule> g1_buchi_priorities() {
  return {{Assertion::parse("y"), 0}, {Assertion::parse("!y"), 1}};
}

inline EnergyFunction random_energy_function(Rng& rng, std::uint64_t c, std::size_t n) {
  EnergyFunction f(c, n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto r = rng.uniform(0, static_cast<std::int64_t>(c) + 1);
    f.set(s, r > static_cast<std::int64_t>(c) ? EnergyValue::infinity() : EnergyValue(static_cast<std::uint64_t>(r)));
  }
  return f;
}

/// Buchi game by the classical nested loop: Z from all states, recurrJ =
/// J & cpre(Z), Y the least fixpoint of recurrJ | cpre(Y).
inline StateSet buchi_loop_classical(const Arena& arena, const StateSet& j) {
  const std::size_t n = arena.num_states();
  StateSet z = StateSet::full(n);
  while (true) {
    const StateSet recurr = j & cpre_sys(arena, z);
    StateSet y = StateSet::empty(n);
    while (true) {
      const StateSet next = recurr | cpre_sys(arena, y);
      if (next == y) break;
      y = next;
    }
    if (y == z) return z;
    z = y;
  }
}

/// Energy counterpart: recurrJ = max(f_J, ecpre(Z)), Y = min(recurrJ, ecpre(Y)).
inline EnergyFunction buchi_loop_energy(const Arena& arena, const EnergyFunction& f_j) {
  const std::uint64_t c = f_j.bound();
  const std::size_t n = arena.num_states();
  EnergyFunction z = EnergyFunction::zeros(c, n);
  while (true) {
    const EnergyFunction recurr = meet(f_j, ecpre(arena, z));
    EnergyFunction y = EnergyFunction::infinities(c, n);
    while (true) {
      const EnergyFunction next = join(recurr, ecpre(arena, y));
      if (next == y) break;
      y = next;
    }
    if (y == z) return z;
    z = y;
  }
}

/// Player 0 winning region by enumerating every memoryless player 0 strategy
/// and checking whether player 1 can still win against it.
inline std::vector<bool> brute_force_parity(const ParityGame& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> choice_states;
  for (std::size_t v = 0; v < n; ++v) {
    if (g.owner(v) == Player::Zero && !g.edges(v).empty()) choice_states.push_back(v);
  }
  std::vector<bool> win0(n, false);
  std::vector<std::size_t> pick(choice_states.size(), 0);
  while (true) {
    std::vector<std::vector<std::size_t>> succ(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (g.owner(v) == Player::One) {
        for (const Edge& e : g.edges(v)) succ[v].push_back(e.target);
      }
    }
    for (std::size_t i = 0; i < choice_states.size(); ++i) {
      succ[choice_states[i]].push_back(g.edges(choice_states[i])[pick[i]].target);
    }
    auto reach = [&](std::size_t from, const std::function<bool(std::size_t)>& allowed) {
      std::vector<bool> seen(n, false);
      std::vector<std::size_t> stack;
      for (std::size_t t : succ[from]) {
        if (allowed(t) && !seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t t : succ[u]) {
          if (allowed(t) && !seen[t]) {
            seen[t] = true;
            stack.push_back(t);
          }
        }
      }
      return seen;
    };
    // Player 1 wins from v iff v reaches a player 0 deadlock or an odd-minimum cycle.
    std::vector<bool> good_for_1(n, false);
    for (std::size_t u = 0; u < n; ++u) {
      if (g.owner(u) == Player::Zero && g.edges(u).empty()) good_for_1[u] = true;
      if (g.priority(u) % 2 == 1) {
        const std::uint32_t p = g.priority(u);
        const auto loop = reach(u, [&](std::size_t t) { return g.priority(t) >= p; });
        if (loop[u]) good_for_1[u] = true;
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (win0[v]) continue;
      bool lose = good_for_1[v];
      if (!lose) {
        const auto r = reach(v, [](std::size_t) { return true; });
        for (std::size_t u = 0; u < n && !lose; ++u) lose = r[u] && good_for_1[u];
      }
      if (!lose) win0[v] = true;
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == g.edges(choice_states[i]).size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return win0;
}

}  // namespace emu::testing
