#include "emu/random.hpp"

#include <map>
#include <string>

#include "emu/errors.hpp"

namespace emu {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw DomainError("empty random range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return lo + static_cast<std::int64_t>(x % span);
}

bool Rng::chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

Assertion random_assertion(Rng& rng, const std::vector<Assertion>& atoms, int depth) {
  if (depth <= 0 || atoms.empty() || rng.chance(0.3)) {
    if (atoms.empty() || rng.chance(0.05)) return Assertion::constant(rng.chance(0.5));
    const Assertion& a = rng.pick(atoms);
    return rng.chance(0.4) ? !a : a;
  }
  const auto op = rng.uniform(0, 3);
  const Assertion lhs = random_assertion(rng, atoms, depth - 1);
  if (op == 3) return !lhs;
  const Assertion rhs = random_assertion(rng, atoms, depth - 1);
  if (op == 0) return lhs && rhs;
  if (op == 1) return lhs || rhs;
  return Assertion::implies(lhs, rhs);
}

Assertion random_state_assertion(Rng& rng, const VariableSet& vars, int depth) {
  std::vector<Assertion> atoms;
  for (const auto& n : vars.names()) atoms.push_back(Assertion::variable(n));
  return random_assertion(rng, atoms, depth);
}

WeightedGameStructure random_game(Rng& rng, const RandomGameOptions& opt) {
  const int n = static_cast<int>(rng.uniform(opt.min_vars, opt.max_vars));
  std::vector<std::string> names;
  std::vector<std::string> inputs;
  for (int i = 0; i < n; ++i) {
    names.push_back(std::string(1, static_cast<char>('a' + i)));
    if (rng.chance(0.5)) inputs.push_back(names.back());
  }
  const VariableSet vars(names, inputs);

  std::vector<Assertion> current;
  std::vector<Assertion> next_inputs;
  std::vector<Assertion> next_all;
  for (int i = 0; i < n; ++i) {
    current.push_back(Assertion::variable(names[i]));
    next_all.push_back(Assertion::variable(names[i], true));
    if (vars.is_input(i)) next_inputs.push_back(next_all.back());
  }
  auto mix = [](std::vector<Assertion> a, const std::vector<Assertion>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };

  Assertion rho_e;
  if (rng.chance(opt.restrict_env)) rho_e = random_assertion(rng, mix(current, next_inputs), 2);
  Assertion rho_s;
  if (rng.chance(opt.restrict_sys)) rho_s = random_assertion(rng, mix(current, next_all), 2);

  std::vector<WeightRule> weights;
  const int rules = static_cast<int>(rng.uniform(0, 3));
  for (int i = 0; i < rules; ++i) {
    Assertion guard = random_assertion(rng, mix(current, next_all), 2);
    weights.push_back({std::move(guard), rng.uniform(-opt.max_weight, opt.max_weight)});
  }
  weights.push_back({Assertion(), rng.uniform(-opt.max_weight, opt.max_weight)});

  std::vector<PriorityRule> priorities;
  if (opt.priorities) priorities = random_priorities(rng, vars, opt.max_priority);
  return WeightedGameStructure(vars, rho_e, rho_s, std::move(weights), std::move(priorities));
}

std::vector<PriorityRule> random_priorities(Rng& rng, const VariableSet& vars, std::uint32_t max_priority) {
  std::map<std::uint32_t, std::optional<Assertion>> by_priority;
  for (StateBits s = 0; s < vars.num_states(); ++s) {
    const auto p = static_cast<std::uint32_t>(rng.uniform(0, max_priority));
    const Assertion minterm = Assertion::parse(vars.to_assertion_text(State{s}));
    auto& slot = by_priority[p];
    slot = slot ? (*slot || minterm) : minterm;
  }
  std::vector<PriorityRule> out;
  for (auto& [p, guard] : by_priority) out.push_back({*guard, p});
  return out;
}

EnergyParityGame random_energy_parity_game(Rng& rng, std::size_t max_states, std::uint32_t max_priority,
                                           std::int64_t max_weight) {
  const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_states)));
  EnergyParityGame g;
  for (std::size_t v = 0; v < n; ++v) {
    const Player owner = rng.chance(0.5) ? Player::Zero : Player::One;
    g.add_state(owner, static_cast<std::uint32_t>(rng.uniform(0, static_cast<std::int64_t>(max_priority) - 1)));
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto degree = rng.chance(0.05) ? 0 : rng.uniform(1, 3);
    for (std::int64_t e = 0; e < degree; ++e) {
      const auto target = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
      g.add_edge(v, target, rng.uniform(-max_weight, max_weight));
    }
  }
  return g;
}

namespace {

class FormulaGen {
 public:
  FormulaGen(Rng& rng, const VariableSet& vars, bool sys, bool allow_not)
      : rng_(rng), vars_(vars), sys_(sys), allow_not_(allow_not) {}

  Formula gen(int depth, std::vector<std::string>& scope) {
    if (depth <= 0 || rng_.chance(0.15)) return leaf(scope);
    const auto op = rng_.uniform(0, allow_not_ ? 5 : 4);
    switch (op) {
      case 0:
      case 1: {
        const Formula lhs = gen(depth - 1, scope);
        const Formula rhs = gen(depth - 1, scope);
        return op == 0 ? Formula::conj(lhs, rhs) : Formula::disj(lhs, rhs);
      }
      case 2: {
        const Formula sub = gen(depth - 1, scope);
        return sys_ ? Formula::diamond(sub) : Formula::box(sub);
      }
      case 3:
      case 4: {
        const std::string name = "F" + std::to_string(counter_++);
        scope.push_back(name);
        const Formula body = gen(depth - 1, scope);
        scope.pop_back();
        return rng_.chance(0.5) ? Formula::mu(name, body) : Formula::nu(name, body);
      }
      default: {
        std::vector<std::string> closed;
        return Formula::negation(gen(depth - 1, closed));
      }
    }
  }

 private:
  Formula leaf(const std::vector<std::string>& scope) {
    if (!scope.empty() && rng_.chance(0.6)) return Formula::relvar(rng_.pick(scope));
    return Formula::atom(random_state_assertion(rng_, vars_, 1));
  }

  Rng& rng_;
  const VariableSet& vars_;
  bool sys_;
  bool allow_not_;
  int counter_ = 0;
};

}  // namespace

Formula random_formula(Rng& rng, const VariableSet& vars, int depth, bool sys, bool allow_not) {
  std::vector<std::string> scope;
  return FormulaGen(rng, vars, sys, allow_not).gen(depth, scope);
}

Formula random_builtin(Rng& rng, const VariableSet& vars, int which) {
  switch (which) {
    case 0: return builtin::safety();
    case 1: return builtin::reachability(random_state_assertion(rng, vars));
    case 2: return builtin::buchi(random_state_assertion(rng, vars));
    case 3: return builtin::co_buchi(random_state_assertion(rng, vars));
    default: throw DomainError("builtin selector out of range");
  }
}

}  // namespace emu
