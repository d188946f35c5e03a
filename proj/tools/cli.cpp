#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "emu/check.hpp"
#include "emu/errors.hpp"
#include "emu/io.hpp"
#include "emu/solver.hpp"

namespace emu::cli {

namespace {

struct Config {
  std::string game_path;
  std::string formula;
  std::string formula_file;
  std::string builtin;
  std::vector<std::string> params;
  std::string priorities;
  std::string bound = "inf";
  std::string state;
  std::string format = "text";

  std::uint64_t seed = 7;
  std::size_t cases = 200;
  int max_vars = 4;
  std::int64_t max_weight = 2;
  std::uint64_t max_bound = 8;
  std::string oracle = "reduction";
  bool mutate = false;
  std::string dump_dir = ".";
};

class UsageError : public Error {
 public:
  using Error::Error;
};

WeightedGameStructure load(const Config& cfg) {
  WeightedGameStructure g = load_game(cfg.game_path);
  if (!cfg.priorities.empty()) g = with_priorities(g, load_priorities(cfg.priorities));
  return g;
}

Formula pick_formula(const Config& cfg, const WeightedGameStructure& g) {
  const int sources = !cfg.formula.empty() + !cfg.formula_file.empty() + !cfg.builtin.empty();
  if (sources > 1) throw UsageError("give at most one of --formula, --formula-file, --builtin");
  if (!cfg.params.empty() && cfg.builtin.empty()) throw UsageError("--param requires --builtin");
  if (!cfg.formula.empty()) return Formula::parse(cfg.formula);
  if (!cfg.formula_file.empty()) return Formula::parse(read_file(cfg.formula_file));
  if (!cfg.builtin.empty()) {
    std::map<std::string, std::string> params;
    for (const auto& p : cfg.params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + p + "'");
      params[p.substr(0, eq)] = p.substr(eq + 1);
    }
    return make_builtin(cfg.builtin, params);
  }
  return default_formula(g);
}

std::string describe_bound(const BoundBreakdown& b) {
  std::ostringstream os;
  os << "N=" << b.num_states << " K=" << b.max_weight << " m=" << b.length << " d=" << b.alternation_depth;
  if (b.num_priorities) os << " priorities=" << b.num_priorities;
  return os.str();
}

void print_credit_table(std::ostream& out, const VariableSet& vars, const EnergyFunction& f,
                        const std::vector<StateBits>& only) {
  std::vector<StateBits> rows = only;
  if (rows.empty()) {
    for (StateBits s = 0; s < f.size(); ++s) rows.push_back(s);
  }
  std::size_t width = 5;
  for (StateBits s : rows) width = std::max(width, vars.describe(State{s}).size());
  out << std::left << std::setw(static_cast<int>(width)) << "state" << "  credit\n";
  for (StateBits s : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << vars.describe(State{s}) << "  " << f[s] << '\n';
  }
}

int cmd_solve(const Config& cfg, std::ostream& out) {
  const WeightedGameStructure g = load(cfg);
  SolveRequest req{g, pick_formula(cfg, g), CreditBound::parse(cfg.bound), std::nullopt};
  if (!cfg.state.empty()) req.query = Assertion::parse(cfg.state);
  const SolveReport r = solve(req);
  if (cfg.format == "json") {
    out << report_to_json(r, g.vars());
    return r.system_wins() ? kWin : kLose;
  }
  out << "formula: " << req.formula.to_string() << '\n';
  out << "metrics: m=" << r.metrics.length << " d=" << r.metrics.alternation_depth
      << " fragment=" << to_string(r.metrics.fragment) << '\n';
  if (r.unbounded()) {
    out << "bound: inf (effective " << r.effective_bound << ", " << r.breakdown.variant << " variant, credit cap "
        << r.breakdown.credit_cap << ")\n";
  } else {
    out << "bound: " << r.effective_bound << '\n';
  }
  print_credit_table(out, g.vars(), r.min_credits, r.query_states);
  out << "W_sys: " << r.sys_region.count() << " states, W_env: " << r.env_region.count() << " states\n";
  if (!cfg.state.empty()) out << "query " << cfg.state << ": " << (r.system_wins() ? "system wins" : "system loses") << '\n';
  return r.system_wins() ? kWin : kLose;
}

int cmd_bound(const Config& cfg, std::ostream& out) {
  const WeightedGameStructure g = load(cfg);
  const Formula psi = pick_formula(cfg, g);
  const BoundBreakdown b = bound_breakdown(g, psi);
  if (cfg.format == "json") {
    nlohmann::json doc = {{"schema", 1},          {"N", b.num_states},     {"K", b.max_weight},
                          {"m", b.length},        {"d", b.alternation_depth}, {"priorities", b.num_priorities},
                          {"variant", b.variant}, {"bound", b.bound},      {"credit_cap", b.credit_cap}};
    for (const auto& [name, value] : b.candidates) doc["candidates"][name] = value;
    out << doc.dump(2) << '\n';
    return kWin;
  }
  out << describe_bound(b) << '\n';
  for (const auto& [name, value] : b.candidates) out << name << ": " << value << '\n';
  out << "variant: " << b.variant << '\n';
  out << "credit cap: " << b.credit_cap << '\n';
  out << "bound: " << b.bound << '\n';
  return kWin;
}

int cmd_region(const Config& cfg, std::ostream& out) {
  const WeightedGameStructure g = load(cfg);
  const Formula psi = pick_formula(cfg, g);
  const CreditBound bound = CreditBound::parse(cfg.bound);
  const std::uint64_t c = bound.is_infinite() ? sufficient_bound(g, psi) : bound.value();
  const Regions r = winning_regions(g, c, psi);
  const auto& vars = g.vars();
  auto listing = [&](const StateSet& s) {
    std::vector<std::string> items;
    for (std::size_t i : s.elements()) items.push_back(vars.to_assertion_text(State{static_cast<StateBits>(i)}));
    return items;
  };
  if (cfg.format == "json") {
    nlohmann::json doc = {{"schema", 1}, {"bound", c}, {"W_sys", listing(r.sys)}, {"W_env", listing(r.env)}};
    out << doc.dump(2) << '\n';
    return kWin;
  }
  out << "bound: " << c << '\n';
  for (const auto& [name, set] : {std::pair{"W_sys", &r.sys}, std::pair{"W_env", &r.env}}) {
    out << name << " (" << set->count() << " states):\n";
    for (const auto& line : listing(*set)) out << "  " << line << '\n';
  }
  out << "total: " << r.sys.count() + r.env.count() << " of " << g.num_states() << '\n';
  return kWin;
}

int cmd_check(const Config& cfg, std::ostream& out) {
  CheckOptions opt;
  opt.seed = cfg.seed;
  opt.cases = cfg.cases;
  opt.max_vars = cfg.max_vars;
  opt.max_weight = cfg.max_weight;
  opt.max_bound = cfg.max_bound;
  opt.oracle = cfg.oracle == "parity" ? OracleKind::Parity : OracleKind::Reduction;
  opt.mutate = cfg.mutate;
  const CheckResult r = run_check(opt);
  out << r.transcript;
  if (r.counterexample) {
    const std::filesystem::path path = std::filesystem::path(cfg.dump_dir) /
                                       ("counterexample-seed" + std::to_string(cfg.seed) + "-case" +
                                        std::to_string(*r.counterexample_case) + ".game");
    std::ofstream f(path);
    f << *r.counterexample;
    out << "counterexample (bound " << *r.counterexample_bound << ") written to " << path.string() << '\n';
  }
  return r.ok() ? kWin : kInternal;
}

void add_game_options(CLI::App* sub, Config& cfg) {
  sub->add_option("game", cfg.game_path, "Game file (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--formula", cfg.formula, "Formula text");
  sub->add_option("--formula-file", cfg.formula_file, "File holding the formula")->check(CLI::ExistingFile);
  sub->add_option("--builtin", cfg.builtin, "safety | reach | buchi | cobuchi | dual-buchi");
  sub->add_option("--param", cfg.params, "Builtin parameter key=value");
  sub->add_option("--priorities", cfg.priorities, "Priority annotation file (JSON)")->check(CLI::ExistingFile);
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Energy mu-calculus solver for weighted game structures", "emu"};
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "Minimum initial credits and winning regions");
  add_game_options(solve_cmd, cfg);
  solve_cmd->add_option("--bound", cfg.bound, "Energy bound: natural number or inf");
  solve_cmd->add_option("--state", cfg.state, "Query states satisfying this assertion");

  auto* bound_cmd = app.add_subcommand("bound", "Sufficient bound for unbounded energy");
  add_game_options(bound_cmd, cfg);

  auto* region_cmd = app.add_subcommand("region", "Winning regions of both players");
  add_game_options(region_cmd, cfg);
  region_cmd->add_option("--bound", cfg.bound, "Energy bound: natural number or inf");

  auto* check_cmd = app.add_subcommand("check", "Randomized differential test against an oracle");
  check_cmd->add_option("--seed", cfg.seed, "Random seed");
  check_cmd->add_option("--cases", cfg.cases, "Number of cases");
  check_cmd->add_option("--max-vars", cfg.max_vars, "Maximum number of variables");
  check_cmd->add_option("--max-weight", cfg.max_weight, "Maximum absolute weight");
  check_cmd->add_option("--max-bound", cfg.max_bound, "Maximum energy bound");
  check_cmd->add_option("--oracle", cfg.oracle, "reduction | parity")->check(CLI::IsMember({"reduction", "parity"}));
  check_cmd->add_flag("--mutate", cfg.mutate, "Corrupt the evaluator to exercise the harness");
  check_cmd->add_option("--dump-dir", cfg.dump_dir, "Directory for counterexample files");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kWin;
  } catch (const CLI::ParseError& e) {
    err << "emu: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(cfg, out);
    if (*bound_cmd) return cmd_bound(cfg, out);
    if (*region_cmd) return cmd_region(cfg, out);
    if (*check_cmd) return cmd_check(cfg, out);
  } catch (const InternalError& e) {
    err << "emu: internal consistency failure: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    err << "emu: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace emu::cli
