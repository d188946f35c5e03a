#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "emu/classical.hpp"
#include "emu/energy.hpp"
#include "emu/game.hpp"

namespace emu {

enum class Player : std::uint8_t { Zero = 0, One = 1 };

inline Player opponent(Player p) { return p == Player::Zero ? Player::One : Player::Zero; }

struct Edge {
  std::size_t target = 0;
  std::int64_t weight = 0;

  bool operator==(const Edge&) const = default;
};

/// Explicit turn-based game graph with owners, priorities and weighted edges.
/// Player 0 wins a play whose minimal infinitely-often priority is even, or
/// which ends in a deadlock of player 1; symmetrically for player 1. With
/// weights, player 0 must additionally keep the energy level non-negative.
class EnergyParityGame {
 public:
  std::size_t add_state(Player owner, std::uint32_t priority);
  void add_edge(std::size_t from, std::size_t to, std::int64_t weight = 0);

  std::size_t size() const { return owners_.size(); }
  Player owner(std::size_t v) const { return owners_[v]; }
  std::uint32_t priority(std::size_t v) const { return priorities_[v]; }
  const std::vector<Edge>& edges(std::size_t v) const { return edges_[v]; }
  std::size_t num_edges() const;

  /// K: maximum absolute edge weight.
  std::int64_t max_abs_weight() const;
  /// d: number of distinct priorities.
  std::size_t num_priorities() const;

  bool operator==(const EnergyParityGame&) const = default;

 private:
  std::vector<Player> owners_;
  std::vector<std::uint32_t> priorities_;
  std::vector<std::vector<Edge>> edges_;
};

/// A parity game is an energy parity game whose weights are ignored.
using ParityGame = EnergyParityGame;

/// Explicit game of a parity-annotated WGS. States 0 .. N-1 are the player 1
/// (environment) states, one per assignment; they are followed by one player 0
/// state per pair (s, u) of a state and a valid input, ordered by s then u.
/// Environment edges weigh 0; (s, u) inherits the priority of s. Throws
/// DomainError when the priority guards are not a partition.
EnergyParityGame from_parity_wgs(const WeightedGameStructure& g);

/// Credit unfolding at bound c: state (v, e) has index v * (c + 2) + e, where
/// e = c + 1 stands for +inf; +inf states are player 0 deadlocks. An edge of
/// weight w leads from (v, e) to (u, min(c, e + w)), or to (u, +inf) when
/// e + w < 0.
ParityGame unfold_with_bound(const EnergyParityGame& g, std::uint64_t c);

/// Least set from which `player` forces a visit to `target`; opponent states
/// without successors are attracted.
StateSet attractor(const ParityGame& g, Player player, const StateSet& target);

struct ParityResult {
  StateSet win0;
  StateSet win1;
};

/// Zielonka's recursive algorithm, min-even convention.
ParityResult solve_parity(const ParityGame& g);

/// Minimum initial credit per state at bound c (+inf when player 0 loses
/// for every credit), via the unfolding.
EnergyFunction solve_energy_parity(const EnergyParityGame& g, std::uint64_t c);

/// d(n-1)K and d(n-1)K + 1. Throw OverflowError when the result leaves uint64.
std::uint64_t bound_ep(std::uint64_t n, std::uint64_t d, std::uint64_t k);
std::uint64_t memory_bound(std::uint64_t n, std::uint64_t d, std::uint64_t k);

/// Line format: `state <id> <owner 0|1> <priority>` and
/// `edge <src> <dst> <weight>`; ids are dense and declared in order. Blank
/// lines and `#` comments are skipped by the reader.
void write_parity_game(std::ostream& os, const EnergyParityGame& g);
std::string to_text(const EnergyParityGame& g);
/// Throws ParseError with the 1-based line number as position.
EnergyParityGame read_parity_game(std::istream& is);
EnergyParityGame parse_parity_game(const std::string& text);

}  // namespace emu
