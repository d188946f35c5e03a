#include "emu/energy.hpp"

#include <algorithm>
#include <optional>

#include "emu/errors.hpp"

namespace emu {

namespace {

__extension__ typedef __int128 Wide;

void same_shape(const EnergyFunction& f, const EnergyFunction& g) {
  if (f.bound() != g.bound() || f.size() != g.size()) {
    throw BoundMismatch("energy functions differ in bound or size (" + std::to_string(f.bound()) + " vs " +
                        std::to_string(g.bound()) + ")");
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  return __builtin_mul_overflow(a, b, &out) ? UINT64_MAX : out;
}

}  // namespace

EnergyFunction::EnergyFunction(std::uint64_t bound, std::size_t n, EnergyValue fill)
    : bound_(bound), values_(n, fill) {
  if (bound > kMaxFiniteBound) throw DomainError("bound exceeds " + std::to_string(kMaxFiniteBound));
  if (fill.is_finite() && fill.value() > bound) throw DomainError("energy value above bound");
}

void EnergyFunction::set(std::size_t s, EnergyValue v) {
  if (v.is_finite() && v.value() > bound_) {
    throw DomainError("energy value " + v.to_string() + " above bound " + std::to_string(bound_));
  }
  values_.at(s) = v;
}

bool EnergyFunction::is_constant(EnergyValue v) const {
  return std::all_of(values_.begin(), values_.end(), [v](EnergyValue x) { return x == v; });
}

std::string EnergyFunction::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ", ";
    out += values_[i].to_string();
  }
  return out + "]";
}

EnergyValue ec_move(std::uint64_t c, std::int64_t w, EnergyValue e) {
  if (e.is_infinite()) return EnergyValue::infinity();
  const Wide need = static_cast<Wide>(e.value()) - w;
  if (need > static_cast<Wide>(c)) return EnergyValue::infinity();
  return EnergyValue(need <= 0 ? 0 : static_cast<EnergyValue::Rep>(need));
}

EnergyValue ec_env_move(std::uint64_t c, std::int64_t w, EnergyValue e) {
  if (e == EnergyValue::zero()) return EnergyValue::zero();
  const Wide cw = static_cast<Wide>(c);
  if (e.is_infinite()) {
    if (w + cw < 0) return EnergyValue::zero();
    if (w >= 0) return EnergyValue::infinity();
    return EnergyValue(static_cast<EnergyValue::Rep>(cw + 1 + w));
  }
  const Wide sum = static_cast<Wide>(e.value()) + w;
  if (sum <= 0) return EnergyValue::zero();
  if (sum > cw) return EnergyValue::infinity();
  return EnergyValue(static_cast<EnergyValue::Rep>(sum));
}

EnergyValue ec(const WeightedGameStructure& g, std::uint64_t c, State s, State next, EnergyValue e) {
  if (!g.env_allows(s.bits, next.bits)) return EnergyValue::zero();
  if (e.is_infinite() || !g.sys_allows(s.bits, next.bits)) return EnergyValue::infinity();
  return ec_move(c, g.weight(s, next), e);
}

EnergyValue ec_env(const WeightedGameStructure& g, std::uint64_t c, State s, State next, EnergyValue e) {
  if (!g.env_allows(s.bits, next.bits)) return EnergyValue::infinity();
  if (e == EnergyValue::zero() || !g.sys_allows(s.bits, next.bits)) return EnergyValue::zero();
  return ec_env_move(c, g.weight(s, next), e);
}

EnergyFunction ecpre(const Arena& arena, const EnergyFunction& f) {
  const std::size_t n = arena.num_states();
  if (f.size() != n) throw BoundMismatch("energy function width differs from the arena");
  const std::uint64_t c = f.bound();
  EnergyFunction out(c, n);
  for (StateBits s = 0; s < n; ++s) {
    EnergyValue best = EnergyValue::zero();
    for (std::size_t g = arena.groups_begin(s); g < arena.groups_end(s); ++g) {
      EnergyValue cheapest = EnergyValue::infinity();
      for (const Move& m : arena.moves(g)) cheapest = std::min(cheapest, ec_move(c, m.weight, f[m.target]));
      best = std::max(best, cheapest);
    }
    out.set(s, best);
  }
  return out;
}

EnergyFunction ecpre_env(const Arena& arena, const EnergyFunction& f) {
  const std::size_t n = arena.num_states();
  if (f.size() != n) throw BoundMismatch("energy function width differs from the arena");
  const std::uint64_t c = f.bound();
  EnergyFunction out(c, n);
  for (StateBits s = 0; s < n; ++s) {
    EnergyValue best = EnergyValue::infinity();
    for (std::size_t g = arena.groups_begin(s); g < arena.groups_end(s); ++g) {
      EnergyValue worst = EnergyValue::zero();
      for (const Move& m : arena.moves(g)) worst = std::max(worst, ec_env_move(c, m.weight, f[m.target]));
      best = std::min(best, worst);
    }
    out.set(s, best);
  }
  return out;
}

EnergyFunction neg(const EnergyFunction& f) {
  EnergyFunction out(f.bound(), f.size());
  for (std::size_t s = 0; s < f.size(); ++s) {
    const EnergyValue x = f[s];
    if (x == EnergyValue::zero()) out.set(s, EnergyValue::infinity());
    else if (x.is_infinite()) out.set(s, EnergyValue::zero());
    else out.set(s, EnergyValue(f.bound() + 1 - x.value()));
  }
  return out;
}

EnergyFunction join(const EnergyFunction& f, const EnergyFunction& g) {
  same_shape(f, g);
  EnergyFunction out(f.bound(), f.size());
  for (std::size_t s = 0; s < f.size(); ++s) out.set(s, std::min(f[s], g[s]));
  return out;
}

EnergyFunction meet(const EnergyFunction& f, const EnergyFunction& g) {
  same_shape(f, g);
  EnergyFunction out(f.bound(), f.size());
  for (std::size_t s = 0; s < f.size(); ++s) out.set(s, std::max(f[s], g[s]));
  return out;
}

bool leq(const EnergyFunction& f, const EnergyFunction& g) {
  same_shape(f, g);
  for (std::size_t s = 0; s < f.size(); ++s) {
    if (!precedes_eq(f[s], g[s])) return false;
  }
  return true;
}

EnergyFunction atom_function(const VariableSet& vars, std::size_t n, std::uint64_t c, const Assertion& a) {
  const StateSet sat = satisfying_states(vars, a);
  const StateBits mask = vars.full_mask();
  EnergyFunction out(c, n);
  for (StateBits s = 0; s < n; ++s) {
    out.set(s, sat.contains(s & mask) ? EnergyValue::zero() : EnergyValue::infinity());
  }
  return out;
}

namespace {

class EnergyEvaluator {
 public:
  EnergyEvaluator(const VariableSet& vars, const Arena& arena, std::uint64_t c, EvalStats& stats)
      : vars_(vars), arena_(arena), c_(c), stats_(stats), n_(arena.num_states()) {}

  EnergyFunction eval(const FormulaNode& f, EnergyValuation& env) {
    switch (f.kind) {
      case FormulaKind::Atom: return atom(f.atom);
      case FormulaKind::RelVar: {
        const auto it = env.find(f.name);
        if (it == env.end()) throw FormulaError("unbound relational variable " + f.name);
        return it->second;
      }
      case FormulaKind::Not: return neg(eval(*f.lhs, env));
      case FormulaKind::And: return meet(eval(*f.lhs, env), eval(*f.rhs, env));
      case FormulaKind::Or: return join(eval(*f.lhs, env), eval(*f.rhs, env));
      case FormulaKind::Diamond: return ecpre(arena_, eval(*f.lhs, env));
      case FormulaKind::Box: return ecpre_env(arena_, eval(*f.lhs, env));
      case FormulaKind::Mu:
      case FormulaKind::Nu: return fixpoint(f, env);
    }
    throw InternalError("unknown formula node");
  }

 private:
  EnergyFunction atom(const Assertion& a) {
    const std::string key = a.to_string();
    auto it = atoms_.find(key);
    if (it == atoms_.end()) it = atoms_.emplace(key, atom_function(vars_, n_, c_, a)).first;
    return it->second;
  }

  EnergyFunction fixpoint(const FormulaNode& f, EnergyValuation& env) {
    const bool least = f.kind == FormulaKind::Mu;
    EnergyFunction current = least ? EnergyFunction::infinities(c_, n_) : EnergyFunction::zeros(c_, n_);
    const auto saved = env.find(f.name) == env.end() ? std::optional<EnergyFunction>{} : env[f.name];
    std::size_t changes = 0;
    ++stats_.fixpoint_runs;
    while (true) {
      env[f.name] = current;
      EnergyFunction next = eval(*f.lhs, env);
      ++stats_.total_iterations;
      if (next == current) break;
      const bool chain_ok = least ? leq(current, next) : leq(next, current);
      if (!chain_ok) throw InternalError("fixpoint iterates of " + f.name + " are not a monotone chain");
      if (++changes > stats_.iteration_cap) {
        throw InternalError("fixpoint " + f.name + " exceeded " + std::to_string(stats_.iteration_cap) +
                            " iterations");
      }
      current = std::move(next);
    }
    stats_.max_changes = std::max(stats_.max_changes, changes);
    if (saved) env[f.name] = *saved;
    else env.erase(f.name);
    return current;
  }

  const VariableSet& vars_;
  const Arena& arena_;
  std::uint64_t c_;
  EvalStats& stats_;
  std::size_t n_;
  std::map<std::string, EnergyFunction> atoms_;
};

}  // namespace

EnergyFunction eval_energy(const VariableSet& vars, const Arena& arena, std::uint64_t c, const Formula& f,
                           const EnergyValuation& v, EvalStats* stats) {
  if (c > kMaxFiniteBound) throw DomainError("bound exceeds " + std::to_string(kMaxFiniteBound));
  if (const auto bad = check_monotone(f)) {
    throw FormulaError("formula is not monotone in " + bad->variable + " (" + bad->path + ")");
  }
  for (const auto& name : free_variables(f)) {
    if (!v.count(name)) throw FormulaError("unbound relational variable " + name);
  }
  for (const auto& [name, fn] : v) {
    if (fn.bound() != c || fn.size() != arena.num_states()) {
      throw BoundMismatch("valuation for " + name + " does not match bound " + std::to_string(c));
    }
  }
  EvalStats local;
  EvalStats& st = stats ? *stats : local;
  st.iteration_cap = saturating_mul(arena.num_states(), c + 1);
  EnergyValuation env = v;
  EnergyEvaluator ev(vars, arena, c, st);
  return ev.eval(f.root(), env);
}

EnergyFunction eval_energy(const WeightedGameStructure& g, std::uint64_t c, const Formula& f,
                           const EnergyValuation& v, EvalStats* stats) {
  return eval_energy(g.vars(), Arena::from_game(g), c, f, v, stats);
}

}  // namespace emu
