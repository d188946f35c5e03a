#include "emu/solver.hpp"

#include <algorithm>

#include "emu/arena.hpp"
#include "emu/errors.hpp"
#include "emu/parity.hpp"

namespace emu {

namespace {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("sufficient bound overflows 64 bits");
  return out;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("sufficient bound overflows 64 bits");
  return out;
}

void require_solvable(const Formula& psi) {
  if (!is_closed(psi)) throw FormulaError("formula must be closed");
  if (const auto bad = check_monotone(psi)) {
    throw FormulaError("formula is not monotone in " + bad->variable + " (" + bad->path + ")");
  }
  const Fragment frag = classify_fragment(push_negations(psi));
  if (frag != Fragment::Sys && frag != Fragment::Both) {
    throw FormulaError("formula must belong to the system fragment, got " + to_string(frag));
  }
}

void check_partition(const StateSet& sys, const StateSet& env) {
  if (!(sys & env).is_empty() || (sys | env).count() != sys.universe()) {
    throw InternalError("winning regions do not partition the state space (sys " + std::to_string(sys.count()) +
                        ", env " + std::to_string(env.count()) + ")");
  }
}

StateSet finite_states(const EnergyFunction& f) {
  StateSet out(f.size());
  for (std::size_t s = 0; s < f.size(); ++s) out.set(s, f[s].is_finite());
  return out;
}

StateSet zero_states(const EnergyFunction& f) {
  StateSet out(f.size());
  for (std::size_t s = 0; s < f.size(); ++s) out.set(s, f[s] == EnergyValue::zero());
  return out;
}

}  // namespace

BoundBreakdown bound_breakdown(const WeightedGameStructure& g, const Formula& psi) {
  BoundBreakdown b;
  const FormulaMetrics m = metrics(psi);
  b.num_states = g.num_states();
  b.max_weight = g.max_abs_weight();
  b.length = m.length;
  b.alternation_depth = m.alternation_depth;
  b.num_priorities = g.has_priorities() ? g.distinct_priorities().size() : 0;

  const std::uint64_t n = b.num_states;
  const auto k = static_cast<std::uint64_t>(b.max_weight);
  const std::uint64_t n2n = add(mul(n, n), n);
  const std::uint64_t short_cap = mul(n2n - 1, k);
  const std::uint64_t general_cap = mul(mul(n2n, b.length) - 1, k);
  const std::uint64_t general = mul(static_cast<std::uint64_t>(b.alternation_depth) + 1, general_cap);
  if (g.has_priorities()) b.candidates.emplace_back("parity", mul(b.num_priorities, short_cap));
  if (is_buchi_shape(psi)) b.candidates.emplace_back("buchi", mul(2, short_cap));
  b.candidates.emplace_back("general", general);
  for (auto& cand : b.candidates) cand.second = std::max(cand.second, k);
  b.variant = b.candidates.front().first;
  b.bound = b.candidates.front().second;
  b.credit_cap = b.variant == "general" ? general_cap : short_cap;
  if (b.bound > kMaxFiniteBound) throw OverflowError("sufficient bound " + std::to_string(b.bound) + " is too large");
  return b;
}

std::uint64_t sufficient_bound(const WeightedGameStructure& g, const Formula& psi) {
  return bound_breakdown(g, psi).bound;
}

bool SolveReport::system_wins() const {
  if (query_states.empty()) return sys_region.count() > 0;
  return std::all_of(query_states.begin(), query_states.end(), [this](StateBits s) { return sys_region.contains(s); });
}

SolveReport solve(const SolveRequest& req) {
  require_solvable(req.formula);
  SolveReport r;
  r.requested_bound = req.bound;
  r.metrics = metrics(req.formula);
  r.breakdown = bound_breakdown(req.game, req.formula);
  r.effective_bound = req.bound.is_infinite() ? r.breakdown.bound : req.bound.value();

  const VariableSet& vars = req.game.vars();
  const Arena arena = Arena::from_game(req.game);
  r.min_credits = eval_energy(vars, arena, r.effective_bound, req.formula, {}, &r.stats);
  const Formula dual = push_negations(Formula::negation(req.formula));
  const EnergyFunction g = eval_energy(vars, arena, r.effective_bound, dual);
  r.sys_region = finite_states(r.min_credits);
  r.env_region = zero_states(g);
  check_partition(r.sys_region, r.env_region);

  if (req.query) {
    const StateSet q = satisfying_states(vars, *req.query);
    for (std::size_t s : q.elements()) r.query_states.push_back(static_cast<StateBits>(s));
    if (r.query_states.empty()) throw DomainError("query '" + req.query->to_string() + "' matches no state");
  }
  return r;
}

EnvCredit env_max_credit(const WeightedGameStructure& g, std::uint64_t c, const Formula& psi) {
  require_solvable(psi);
  EnvCredit out;
  out.dual = eval_energy(g, c, push_negations(Formula::negation(psi)));
  out.recovered = EnergyFunction(c, out.dual.size());
  out.max_env_credit.resize(out.dual.size());
  for (std::size_t s = 0; s < out.dual.size(); ++s) {
    const EnergyValue v = out.dual[s];
    if (v == EnergyValue::zero()) {
      out.recovered.set(s, EnergyValue::infinity());
      out.max_env_credit[s] = c;
    } else if (v.is_infinite()) {
      out.recovered.set(s, EnergyValue::zero());
    } else {
      out.recovered.set(s, EnergyValue(c + 1 - v.value()));
      out.max_env_credit[s] = c - v.value();
    }
  }
  return out;
}

Regions winning_regions(const WeightedGameStructure& g, std::uint64_t c, const Formula& psi) {
  require_solvable(psi);
  const Arena arena = Arena::from_game(g);
  Regions r{finite_states(eval_energy(g.vars(), arena, c, psi)),
            zero_states(eval_energy(g.vars(), arena, c, push_negations(Formula::negation(psi))))};
  check_partition(r.sys, r.env);
  return r;
}

ParityCrosscheck crosscheck_parity(const WeightedGameStructure& g, std::uint64_t c) {
  g.check_priority_partition();
  ParityCrosscheck out;
  out.symbolic = eval_energy(g, c, parity_formula(g.priority_rules()));
  const EnergyFunction full = solve_energy_parity(from_parity_wgs(g), c);
  out.explicit_game = EnergyFunction(c, g.num_states());
  for (StateBits s = 0; s < g.num_states(); ++s) {
    out.explicit_game.set(s, full[s]);
    if (out.symbolic[s] != full[s]) out.mismatches.push_back(s);
  }
  return out;
}

Formula default_formula(const WeightedGameStructure& g) {
  if (g.formula()) return *g.formula();
  if (g.has_priorities()) return parity_formula(g.priority_rules());
  throw FormulaError("no formula given and the game defines neither a formula nor priorities");
}

}  // namespace emu
