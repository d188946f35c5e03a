#include "emu/game.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "emu/errors.hpp"

namespace emu {

namespace {

void require_support(const Assertion& a, const VariableSet& vars, bool allow_primed_outputs, bool allow_primed,
                     const std::string& what) {
  for (const auto& v : a.unprimed_variables()) {
    if (!vars.index_of(v)) throw MalformedAssertion(what + ": unknown identifier '" + v + "'");
  }
  for (const auto& v : a.primed_variables()) {
    const auto idx = vars.index_of(v);
    if (!idx) throw MalformedAssertion(what + ": unknown identifier '" + v + "'");
    if (!allow_primed) throw MalformedAssertion(what + " must be a pure-state assertion, found " + v + "'");
    if (!allow_primed_outputs && !vars.is_input(*idx)) {
      throw MalformedAssertion(what + " may only prime inputs, found " + v + "'");
    }
  }
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("energy level overflows 64-bit range");
  return out;
}

}  // namespace

WeightedGameStructure::WeightedGameStructure(VariableSet vars, Assertion rho_e, Assertion rho_s,
                                             std::vector<WeightRule> weights, std::vector<PriorityRule> priorities,
                                             std::optional<Formula> formula)
    : vars_(std::move(vars)),
      rho_e_(std::move(rho_e)),
      rho_s_(std::move(rho_s)),
      weights_(std::move(weights)),
      priorities_(std::move(priorities)),
      formula_(std::move(formula)) {
  require_support(rho_e_, vars_, false, true, "rho_e");
  require_support(rho_s_, vars_, true, true, "rho_s");
  rho_e_c_ = CompiledAssertion(rho_e_, vars_);
  rho_s_c_ = CompiledAssertion(rho_s_, vars_);
  for (const auto& r : weights_) {
    require_support(r.guard, vars_, true, true, "weight guard");
    weight_c_.emplace_back(r.guard, vars_);
    if (r.weight == INT64_MIN) throw DomainError("weight out of range");
    max_abs_weight_ = std::max(max_abs_weight_, r.weight < 0 ? -r.weight : r.weight);
  }
  for (const auto& r : priorities_) {
    require_support(r.guard, vars_, false, false, "priority guard");
    priority_c_.emplace_back(r.guard, vars_);
  }
}

std::optional<std::int64_t> WeightedGameStructure::find_weight(StateBits s, StateBits next) const {
  for (std::size_t i = 0; i < weight_c_.size(); ++i) {
    if (weight_c_[i].eval(s, next)) return weights_[i].weight;
  }
  return std::nullopt;
}

std::vector<State> WeightedGameStructure::successors(State s) const {
  std::vector<State> out;
  for (StateBits t = 0; t < num_states(); ++t) {
    if (env_allows(s.bits, t) && sys_allows(s.bits, t)) out.push_back(State{t});
  }
  return out;
}

std::vector<StateBits> WeightedGameStructure::env_choices(State s) const {
  std::vector<StateBits> out;
  for_each_submask(vars_.input_mask(), [&](StateBits x) {
    if (env_allows(s.bits, x)) out.push_back(x);
  });
  return out;
}

std::vector<StateBits> WeightedGameStructure::sys_choices(State s, StateBits input) const {
  std::vector<StateBits> out;
  input &= vars_.input_mask();
  for_each_submask(vars_.output_mask(), [&](StateBits y) {
    if (sys_allows(s.bits, input | y)) out.push_back(y);
  });
  return out;
}

std::int64_t WeightedGameStructure::weight(State s, State next) const {
  if (!sys_allows(s.bits, next.bits)) {
    throw DomainError("weight queried on a pair that is not a rho_s transition: (" + vars_.describe(s) + ") -> (" +
                      vars_.describe(next) + ")");
  }
  const auto w = find_weight(s.bits, next.bits);
  if (!w) {
    throw WeightCoverError("no weight rule matches transition (" + vars_.describe(s) + ") -> (" +
                           vars_.describe(next) + ")");
  }
  return *w;
}

std::uint32_t WeightedGameStructure::priority_of(State s) const {
  std::optional<std::uint32_t> found;
  for (std::size_t i = 0; i < priority_c_.size(); ++i) {
    if (!priority_c_[i].eval(s.bits)) continue;
    if (found && *found != priorities_[i].priority) {
      throw DomainError("priority guards overlap with different priorities on state " + vars_.describe(s));
    }
    found = priorities_[i].priority;
  }
  if (!found) throw DomainError("no priority guard covers state " + vars_.describe(s));
  return *found;
}

void WeightedGameStructure::check_priority_partition() const {
  if (priorities_.empty()) throw DomainError("game has no priority annotation");
  for (StateBits s = 0; s < num_states(); ++s) {
    int hits = 0;
    for (const auto& p : priority_c_) hits += p.eval(s) ? 1 : 0;
    if (hits != 1) {
      throw DomainError("priority guards are not a partition: state " + vars_.describe(State{s}) + " matches " +
                        std::to_string(hits) + " guards");
    }
  }
}

std::vector<std::uint32_t> WeightedGameStructure::distinct_priorities() const {
  std::set<std::uint32_t> ps;
  for (const auto& r : priorities_) ps.insert(r.priority);
  return {ps.begin(), ps.end()};
}

std::vector<std::string> WeightedGameStructure::lint() const {
  std::vector<std::string> out;
  std::set<std::pair<std::size_t, std::size_t>> reported;
  for (StateBits s = 0; s < num_states(); ++s) {
    for (StateBits t = 0; t < num_states(); ++t) {
      if (!sys_allows(s, t)) continue;
      std::optional<std::size_t> first;
      for (std::size_t i = 0; i < weight_c_.size(); ++i) {
        if (!weight_c_[i].eval(s, t)) continue;
        if (!first) {
          first = i;
        } else if (weights_[i].weight != weights_[*first].weight && reported.emplace(*first, i).second) {
          out.push_back("weight rules " + std::to_string(*first) + " and " + std::to_string(i) +
                        " overlap with different weights; rule " + std::to_string(*first) + " wins");
        }
      }
    }
  }
  return out;
}

std::int64_t energy_level(const WeightedGameStructure& g, CreditBound c, std::uint64_t c0, const PlayPrefix& prefix) {
  const auto& states = prefix.states;
  if (states.empty()) throw DomainError("play prefix must contain at least one state");
  if (!c.is_infinite() && c0 > c.value()) {
    throw InvalidCredit("initial credit " + std::to_string(c0) + " exceeds bound " + c.to_string());
  }
  if (c0 > kMaxFiniteBound) throw InvalidCredit("initial credit is too large");
  std::int64_t level = static_cast<std::int64_t>(c0);
  for (std::size_t i = 1; i < states.size(); ++i) {
    if (!g.env_allows(states[i - 1].bits, states[i].bits)) {
      throw DomainError("prefix step " + std::to_string(i) + " violates rho_e");
    }
    level = checked_add(level, g.weight(states[i - 1], states[i]));
    if (!c.is_infinite()) level = std::min(level, static_cast<std::int64_t>(c.value()));
  }
  return level;
}

bool wins_energy_objective(const WeightedGameStructure& g, CreditBound c, std::uint64_t c0,
                           const PlayPrefix& prefix) {
  PlayPrefix cut;
  cut.states.reserve(prefix.states.size());
  for (const State& s : prefix.states) {
    cut.states.push_back(s);
    if (energy_level(g, c, c0, cut) < 0) return false;
  }
  return true;
}

Formula parity_formula(const std::vector<PriorityRule>& priorities) {
  if (priorities.empty()) throw FormulaError("parity formula needs at least one priority");
  std::map<std::uint32_t, Assertion> guard_of;
  for (const auto& r : priorities) {
    auto it = guard_of.find(r.priority);
    if (it == guard_of.end()) guard_of.emplace(r.priority, r.guard);
    else it->second = it->second || r.guard;
  }
  std::vector<std::pair<std::uint32_t, std::string>> levels;
  for (const auto& [p, guard] : guard_of) levels.emplace_back(p, "Z" + std::to_string(p));

  std::optional<Formula> body;
  for (const auto& [p, var] : levels) {
    Formula term = Formula::conj(Formula::atom(guard_of.at(p)), Formula::diamond(Formula::relvar(var)));
    body = body ? Formula::disj(*body, term) : term;
  }
  Formula f = *body;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    f = it->first % 2 == 0 ? Formula::nu(it->second, f) : Formula::mu(it->second, f);
  }
  return f;
}

}  // namespace emu
