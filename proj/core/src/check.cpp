#include "emu/check.hpp"

#include <algorithm>
#include <sstream>

#include "emu/energy.hpp"
#include "emu/errors.hpp"
#include "emu/io.hpp"
#include "emu/random.hpp"
#include "emu/reduction.hpp"
#include "emu/solver.hpp"

namespace emu {

namespace {

void corrupt(EnergyFunction& f) {
  if (f.size() == 0) return;
  f.set(0, f[0].is_infinite() ? EnergyValue::zero() : EnergyValue::infinity());
}

std::string diff(const VariableSet& vars, const EnergyFunction& got, const EnergyFunction& want, const char* label) {
  std::ostringstream os;
  for (std::size_t s = 0; s < got.size(); ++s) {
    if (got[s] == want[s]) continue;
    os << ' ' << label << "[" << vars.describe(State{static_cast<StateBits>(s)}) << "]: evaluator " << got[s]
       << " oracle " << want[s] << ';';
  }
  return os.str();
}

WeightedGameStructure with_formula(const WeightedGameStructure& g, const Formula& f) {
  return WeightedGameStructure(g.vars(), g.rho_e(), g.rho_s(), g.weight_rules(), g.priority_rules(), f);
}

struct CaseOutcome {
  bool mismatch = false;
  std::string line;
  std::optional<std::string> game;
  std::uint64_t bound = 0;
};

CaseOutcome reduction_case(Rng& rng, const CheckOptions& opt, std::size_t index) {
  RandomGameOptions gopt;
  gopt.max_vars = opt.max_vars;
  gopt.min_vars = std::min(2, opt.max_vars);
  gopt.max_weight = opt.max_weight;
  const WeightedGameStructure g = random_game(rng, gopt);
  const auto c = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(opt.max_bound)));
  const Formula psi = random_builtin(rng, g.vars(), static_cast<int>(index % 4));
  const Formula dual = push_negations(Formula::negation(psi));

  const Arena arena = Arena::from_game(g);
  EnergyFunction sys = eval_energy(g.vars(), arena, c, psi);
  EnergyFunction env = eval_energy(g.vars(), arena, c, dual);
  if (opt.mutate) corrupt(sys);
  const EnergyFunction sys_oracle = oracle_min_credit_sys(g, c, psi);
  const EnergyFunction env_oracle = oracle_max_credit_env(g, c, dual);

  std::string problems = diff(g.vars(), sys, sys_oracle, "sys") + diff(g.vars(), env, env_oracle, "env");
  for (std::size_t s = 0; s < sys.size(); ++s) {
    if (sys[s].is_finite() == (env[s] == EnergyValue::zero())) {
      problems += " regions overlap or miss state " + g.vars().describe(State{static_cast<StateBits>(s)}) + ";";
    }
  }
  CaseOutcome out;
  out.bound = c;
  std::ostringstream os;
  os << "case " << index << ": vars=" << g.vars().size() << " inputs=" << g.vars().input_names().size()
     << " c=" << c << " formula=" << psi.to_string();
  if (problems.empty()) {
    os << " ok";
  } else {
    os << " MISMATCH" << problems;
    out.mismatch = true;
    out.game = game_to_json(with_formula(g, psi));
  }
  out.line = os.str();
  return out;
}

CaseOutcome parity_case(Rng& rng, const CheckOptions& opt, std::size_t index) {
  RandomGameOptions gopt;
  gopt.max_vars = opt.max_vars;
  gopt.min_vars = std::min(2, opt.max_vars);
  gopt.max_weight = opt.max_weight;
  gopt.priorities = true;
  gopt.max_priority = 2;
  const WeightedGameStructure g = random_game(rng, gopt);
  const auto c = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(opt.max_bound)));
  ParityCrosscheck x = crosscheck_parity(g, c);
  if (opt.mutate) corrupt(x.symbolic);
  const std::string problems = diff(g.vars(), x.symbolic, x.explicit_game, "credit");

  CaseOutcome out;
  out.bound = c;
  std::ostringstream os;
  os << "case " << index << ": vars=" << g.vars().size() << " priorities=" << g.distinct_priorities().size()
     << " c=" << c;
  if (problems.empty()) {
    os << " ok";
  } else {
    os << " MISMATCH" << problems;
    out.mismatch = true;
    out.game = game_to_json(with_formula(g, parity_formula(g.priority_rules())));
  }
  out.line = os.str();
  return out;
}

}  // namespace

CheckResult run_check(const CheckOptions& opt) {
  if (opt.max_vars < 1 || opt.max_vars > 12) throw DomainError("--max-vars must be in [1, 12]");
  if (opt.max_weight < 0 || opt.max_weight > (std::int64_t{1} << 40)) throw DomainError("--max-weight out of range");
  if (opt.max_bound > 255) throw DomainError("--max-bound must be at most 255");

  CheckResult result;
  Rng rng(opt.seed);
  std::ostringstream transcript;
  transcript << "check seed=" << opt.seed << " cases=" << opt.cases << " oracle="
             << (opt.oracle == OracleKind::Reduction ? "reduction" : "parity") << " max-vars=" << opt.max_vars
             << " max-weight=" << opt.max_weight << " max-bound=" << opt.max_bound << (opt.mutate ? " mutate" : "")
             << '\n';
  for (std::size_t i = 0; i < opt.cases; ++i) {
    CaseOutcome outcome;
    try {
      outcome = opt.oracle == OracleKind::Reduction ? reduction_case(rng, opt, i) : parity_case(rng, opt, i);
    } catch (const InternalError& e) {
      ++result.errors;
      outcome.line = "case " + std::to_string(i) + ": INTERNAL ERROR " + e.what();
    }
    ++result.cases;
    if (outcome.mismatch) ++result.mismatches;
    if (outcome.game && !result.counterexample) {
      result.counterexample = outcome.game;
      result.counterexample_case = i;
      result.counterexample_bound = outcome.bound;
    }
    transcript << outcome.line << '\n';
  }
  transcript << "summary: " << result.cases << " cases, " << result.mismatches << " mismatches, " << result.errors
             << " errors\n";
  result.transcript = transcript.str();
  return result;
}

}  // namespace emu
