#include "emu/parity.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <set>
#include <sstream>

#include "emu/arena.hpp"
#include "emu/errors.hpp"

namespace emu {

std::size_t EnergyParityGame::add_state(Player owner, std::uint32_t priority) {
  owners_.push_back(owner);
  priorities_.push_back(priority);
  edges_.emplace_back();
  return owners_.size() - 1;
}

void EnergyParityGame::add_edge(std::size_t from, std::size_t to, std::int64_t weight) {
  if (from >= size() || to >= size()) throw DomainError("edge endpoint out of range");
  if (weight == INT64_MIN) throw DomainError("edge weight out of range");
  edges_[from].push_back({to, weight});
}

std::size_t EnergyParityGame::num_edges() const {
  std::size_t n = 0;
  for (const auto& es : edges_) n += es.size();
  return n;
}

std::int64_t EnergyParityGame::max_abs_weight() const {
  std::int64_t k = 0;
  for (const auto& es : edges_) {
    for (const auto& e : es) k = std::max(k, e.weight < 0 ? -e.weight : e.weight);
  }
  return k;
}

std::size_t EnergyParityGame::num_priorities() const {
  return std::set<std::uint32_t>(priorities_.begin(), priorities_.end()).size();
}

EnergyParityGame from_parity_wgs(const WeightedGameStructure& g) {
  g.check_priority_partition();
  const Arena arena = Arena::from_game(g);
  EnergyParityGame out;
  const std::size_t n = arena.num_states();
  for (StateBits s = 0; s < n; ++s) out.add_state(Player::One, g.priority_of(State{s}));
  for (StateBits s = 0; s < n; ++s) {
    for (std::size_t grp = arena.groups_begin(s); grp < arena.groups_end(s); ++grp) {
      const std::size_t su = out.add_state(Player::Zero, out.priority(s));
      out.add_edge(s, su, 0);
      for (const Move& m : arena.moves(grp)) out.add_edge(su, m.target, m.weight);
    }
  }
  return out;
}

ParityGame unfold_with_bound(const EnergyParityGame& g, std::uint64_t c) {
  if (c > (std::uint64_t{1} << 24)) throw CapacityError("unfolding bound too large");
  const std::size_t layers = static_cast<std::size_t>(c) + 2;
  const std::size_t inf = layers - 1;
  ParityGame out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (std::size_t e = 0; e < layers; ++e) out.add_state(e == inf ? Player::Zero : g.owner(v), g.priority(v));
  }
  const auto cw = static_cast<std::int64_t>(c);
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (std::size_t e = 0; e < inf; ++e) {
      for (const Edge& edge : g.edges(v)) {
        const std::int64_t level = static_cast<std::int64_t>(e) + std::clamp<std::int64_t>(edge.weight, -cw - 1, cw);
        const std::size_t to = level < 0 ? inf : static_cast<std::size_t>(std::min(level, cw));
        out.add_edge(v * layers + e, edge.target * layers + to, 0);
      }
    }
  }
  return out;
}

namespace {

std::vector<std::vector<std::size_t>> predecessors(const ParityGame& g) {
  std::vector<std::vector<std::size_t>> preds(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (const Edge& e : g.edges(v)) preds[e.target].push_back(v);
  }
  return preds;
}

// Attractor inside the subgame `arena`; `target` must be a subset of it.
StateSet attract(const ParityGame& g, const std::vector<std::vector<std::size_t>>& preds, const StateSet& arena,
                 Player player, const StateSet& target) {
  StateSet attr = target;
  std::vector<std::size_t> remaining(g.size(), 0);
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!arena.contains(v)) continue;
    if (attr.contains(v)) {
      queue.push_back(v);
      continue;
    }
    if (g.owner(v) == player) continue;
    for (const Edge& e : g.edges(v)) remaining[v] += arena.contains(e.target) ? 1 : 0;
    if (remaining[v] == 0) {
      attr.insert(v);
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t u : preds[v]) {
      if (!arena.contains(u) || attr.contains(u)) continue;
      if (g.owner(u) == player || --remaining[u] == 0) {
        attr.insert(u);
        queue.push_back(u);
      }
    }
  }
  return attr;
}

class Zielonka {
 public:
  explicit Zielonka(const ParityGame& g) : g_(g), preds_(predecessors(g)) {}

  ParityResult solve(const StateSet& arena) {
    const std::size_t n = g_.size();
    if (arena.is_empty()) return {StateSet(n), StateSet(n)};
    std::uint32_t p = UINT32_MAX;
    for (std::size_t v : arena.elements()) p = std::min(p, g_.priority(v));
    const Player me = p % 2 == 0 ? Player::Zero : Player::One;
    StateSet top(n);
    for (std::size_t v : arena.elements()) top.set(v, g_.priority(v) == p);

    const StateSet a = attract(g_, preds_, arena, me, top);
    ParityResult sub = solve(arena & ~a);
    StateSet& sub_opp = me == Player::Zero ? sub.win1 : sub.win0;
    if (sub_opp.is_empty()) return me == Player::Zero ? ParityResult{arena, StateSet(n)} : ParityResult{StateSet(n), arena};

    const StateSet b = attract(g_, preds_, arena, opponent(me), sub_opp);
    ParityResult rest = solve(arena & ~b);
    if (me == Player::Zero) rest.win1 = rest.win1 | b;
    else rest.win0 = rest.win0 | b;
    return rest;
  }

 private:
  const ParityGame& g_;
  std::vector<std::vector<std::size_t>> preds_;
};

}  // namespace

StateSet attractor(const ParityGame& g, Player player, const StateSet& target) {
  return attract(g, predecessors(g), StateSet::full(g.size()), player, target);
}

ParityResult solve_parity(const ParityGame& g) {
  // Deadlocks are redirected to two fresh self-looping sinks: player 1
  // deadlocks to an even sink, player 0 deadlocks to an odd one.
  ParityGame ext = g;
  const std::size_t n = g.size();
  const std::size_t sink0 = ext.add_state(Player::Zero, 0);
  const std::size_t sink1 = ext.add_state(Player::One, 1);
  ext.add_edge(sink0, sink0);
  ext.add_edge(sink1, sink1);
  for (std::size_t v = 0; v < n; ++v) {
    if (!g.edges(v).empty()) continue;
    ext.add_edge(v, g.owner(v) == Player::One ? sink0 : sink1);
  }
  Zielonka z(ext);
  const ParityResult full = z.solve(StateSet::full(ext.size()));
  ParityResult out{StateSet(n), StateSet(n)};
  for (std::size_t v = 0; v < n; ++v) {
    out.win0.set(v, full.win0.contains(v));
    out.win1.set(v, full.win1.contains(v));
  }
  return out;
}

EnergyFunction solve_energy_parity(const EnergyParityGame& g, std::uint64_t c) {
  const ParityGame unfolded = unfold_with_bound(g, c);
  const ParityResult r = solve_parity(unfolded);
  const std::size_t layers = static_cast<std::size_t>(c) + 2;
  EnergyFunction out(c, g.size(), EnergyValue::infinity());
  for (std::size_t v = 0; v < g.size(); ++v) {
    bool seen = false;
    for (std::size_t e = 0; e + 1 < layers; ++e) {
      const bool wins = r.win0.contains(v * layers + e);
      if (wins && !seen) {
        out.set(v, EnergyValue(e));
        seen = true;
      } else if (!wins && seen) {
        throw InternalError("winning credits of state " + std::to_string(v) + " are not upward closed");
      }
    }
  }
  return out;
}

std::uint64_t bound_ep(std::uint64_t n, std::uint64_t d, std::uint64_t k) {
  if (n == 0) throw DomainError("bound_ep needs at least one state");
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  if (__builtin_mul_overflow(d, n - 1, &a) || __builtin_mul_overflow(a, k, &b)) {
    throw OverflowError("energy parity bound overflows");
  }
  return b;
}

std::uint64_t memory_bound(std::uint64_t n, std::uint64_t d, std::uint64_t k) {
  const std::uint64_t b = bound_ep(n, d, k);
  if (b == UINT64_MAX) throw OverflowError("memory bound overflows");
  return b + 1;
}

void write_parity_game(std::ostream& os, const EnergyParityGame& g) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    os << "state " << v << ' ' << static_cast<int>(g.owner(v)) << ' ' << g.priority(v) << '\n';
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (const Edge& e : g.edges(v)) os << "edge " << v << ' ' << e.target << ' ' << e.weight << '\n';
  }
}

std::string to_text(const EnergyParityGame& g) {
  std::ostringstream os;
  write_parity_game(os, g);
  return os.str();
}

EnergyParityGame read_parity_game(std::istream& is) {
  EnergyParityGame g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    auto fail = [&](const std::string& msg) { throw ParseError(msg + " (line " + std::to_string(lineno) + ")", lineno); };
    if (kind == "state") {
      long long id = -1;
      int owner = -1;
      long long prio = -1;
      if (!(ls >> id >> owner >> prio) || id < 0 || prio < 0 || prio > UINT32_MAX) fail("malformed state line");
      if (owner != 0 && owner != 1) fail("owner must be 0 or 1");
      if (static_cast<std::size_t>(id) != g.size()) fail("state ids must be dense and in order");
      g.add_state(owner == 0 ? Player::Zero : Player::One, static_cast<std::uint32_t>(prio));
    } else if (kind == "edge") {
      long long src = -1;
      long long dst = -1;
      long long w = 0;
      if (!(ls >> src >> dst >> w) || src < 0 || dst < 0) fail("malformed edge line");
      if (static_cast<std::size_t>(src) >= g.size() || static_cast<std::size_t>(dst) >= g.size()) {
        fail("edge references an undeclared state");
      }
      g.add_edge(static_cast<std::size_t>(src), static_cast<std::size_t>(dst), w);
    } else {
      fail("unknown directive '" + kind + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
  }
  return g;
}

EnergyParityGame parse_parity_game(const std::string& text) {
  std::istringstream is(text);
  return read_parity_game(is);
}

}  // namespace emu
