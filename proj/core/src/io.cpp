#include "emu/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emu/errors.hpp"

namespace emu {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0);
  return obj.at(key);
}

std::string string_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string", 0);
  return v.get<std::string>();
}

std::vector<std::string> string_list(const json& v, const char* what) {
  if (!v.is_array()) throw ParseError(std::string(what) + " must be a list of strings", 0);
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw ParseError(std::string(what) + " must be a list of strings", 0);
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<PriorityRule> priority_list(const json& v) {
  if (!v.is_array()) throw ParseError("priorities must be a list", 0);
  std::vector<PriorityRule> out;
  for (const auto& item : v) {
    const json& p = field(item, "priority");
    if (!p.is_number_unsigned() && !(p.is_number_integer() && p.get<std::int64_t>() >= 0)) {
      throw ParseError("priority must be a natural number", 0);
    }
    out.push_back({Assertion::parse(string_field(item, "guard")), p.get<std::uint32_t>()});
  }
  return out;
}

json value_json(EnergyValue v) { return v.is_infinite() ? json("inf") : json(v.value()); }

EnergyValue value_from(const json& v) {
  if (v.is_string() && v.get<std::string>() == "inf") return EnergyValue::infinity();
  if (v.is_number_unsigned()) return EnergyValue(v.get<std::uint64_t>());
  throw ParseError("energy value must be a natural number or \"inf\"", 0);
}

json set_json(const StateSet& s) {
  json arr = json::array();
  for (std::size_t i : s.elements()) arr.push_back(i);
  return arr;
}

StateSet set_from(const json& v, std::size_t n) {
  StateSet s(n);
  for (const auto& i : v) {
    const auto idx = i.get<std::size_t>();
    if (idx >= n) throw ParseError("state index out of range", 0);
    s.insert(idx);
  }
  return s;
}

Fragment fragment_from(const std::string& s) {
  if (s == "sys") return Fragment::Sys;
  if (s == "env") return Fragment::Env;
  if (s == "both") return Fragment::Both;
  if (s == "mixed") return Fragment::Mixed;
  throw ParseError("unknown fragment '" + s + "'", 0);
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

WeightedGameStructure parse_game(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) throw ParseError("game file must be a JSON object", 0);
  const VariableSet vars(string_list(field(doc, "vars"), "vars"),
                         doc.contains("inputs") ? string_list(doc.at("inputs"), "inputs") : std::vector<std::string>{});
  const Assertion rho_e = doc.contains("rho_e") ? Assertion::parse(string_field(doc, "rho_e")) : Assertion();
  const Assertion rho_s = doc.contains("rho_s") ? Assertion::parse(string_field(doc, "rho_s")) : Assertion();
  std::vector<WeightRule> weights;
  const json& w = field(doc, "weights");
  if (!w.is_array()) throw ParseError("weights must be a list", 0);
  for (const auto& item : w) {
    const json& wv = field(item, "weight");
    if (!wv.is_number_integer()) throw ParseError("weight must be an integer", 0);
    weights.push_back({Assertion::parse(string_field(item, "guard")), wv.get<std::int64_t>()});
  }
  std::vector<PriorityRule> priorities;
  if (doc.contains("priorities")) priorities = priority_list(doc.at("priorities"));
  std::optional<Formula> formula;
  if (doc.contains("formula")) formula = Formula::parse(string_field(doc, "formula"));
  return WeightedGameStructure(vars, rho_e, rho_s, std::move(weights), std::move(priorities), std::move(formula));
}

WeightedGameStructure load_game(const std::string& path) { return parse_game(read_file(path)); }

std::string game_to_json(const WeightedGameStructure& g) {
  json doc;
  doc["vars"] = g.vars().names();
  doc["inputs"] = g.vars().input_names();
  doc["rho_e"] = g.rho_e().to_string();
  doc["rho_s"] = g.rho_s().to_string();
  doc["weights"] = json::array();
  for (const auto& r : g.weight_rules()) doc["weights"].push_back({{"guard", r.guard.to_string()}, {"weight", r.weight}});
  if (g.has_priorities()) {
    doc["priorities"] = json::array();
    for (const auto& r : g.priority_rules()) {
      doc["priorities"].push_back({{"guard", r.guard.to_string()}, {"priority", r.priority}});
    }
  }
  if (g.formula()) doc["formula"] = g.formula()->to_string();
  return doc.dump(2) + "\n";
}

std::vector<PriorityRule> parse_priorities(const std::string& json_text) {
  const json doc = parse_json(json_text);
  return priority_list(doc.is_object() ? field(doc, "priorities") : doc);
}

std::vector<PriorityRule> load_priorities(const std::string& path) { return parse_priorities(read_file(path)); }

WeightedGameStructure with_priorities(const WeightedGameStructure& g, std::vector<PriorityRule> priorities) {
  return WeightedGameStructure(g.vars(), g.rho_e(), g.rho_s(), g.weight_rules(), std::move(priorities), g.formula());
}

std::string report_to_json(const SolveReport& r, const VariableSet& vars, int indent) {
  json doc;
  doc["schema"] = 1;
  doc["requested_bound"] = r.requested_bound.is_infinite() ? json("inf") : json(r.requested_bound.value());
  doc["effective_bound"] = r.effective_bound;
  doc["vars"] = vars.names();
  json credits = json::array();
  for (std::size_t s = 0; s < r.min_credits.size(); ++s) credits.push_back(value_json(r.min_credits[s]));
  doc["min_credits"] = credits;
  json states = json::array();
  for (std::size_t s = 0; s < r.min_credits.size(); ++s) states.push_back(vars.describe(State{static_cast<StateBits>(s)}));
  doc["states"] = states;
  doc["sys_region"] = set_json(r.sys_region);
  doc["env_region"] = set_json(r.env_region);
  doc["query_states"] = r.query_states;
  doc["system_wins"] = r.system_wins();
  doc["metrics"] = {{"length", r.metrics.length},
                    {"alternation_depth", r.metrics.alternation_depth},
                    {"closed", r.metrics.closed},
                    {"fragment", to_string(r.metrics.fragment)}};
  const BoundBreakdown& b = r.breakdown;
  doc["bound_breakdown"] = {{"N", b.num_states},       {"K", b.max_weight},         {"m", b.length},
                            {"d", b.alternation_depth}, {"priorities", b.num_priorities}, {"variant", b.variant},
                            {"bound", b.bound},        {"credit_cap", b.credit_cap}};
  doc["stats"] = {{"fixpoint_runs", r.stats.fixpoint_runs},
                  {"total_iterations", r.stats.total_iterations},
                  {"max_changes", r.stats.max_changes},
                  {"iteration_cap", r.stats.iteration_cap}};
  return doc.dump(indent) + "\n";
}

SolveReport report_from_json(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object() || doc.value("schema", 0) != 1) throw ParseError("unsupported report schema", 0);
  try {
    SolveReport r;
    const json& rb = field(doc, "requested_bound");
    r.requested_bound = rb.is_string() ? CreditBound::parse(rb.get<std::string>()) : CreditBound::finite(rb.get<std::uint64_t>());
    r.effective_bound = field(doc, "effective_bound").get<std::uint64_t>();
    const json& credits = field(doc, "min_credits");
    r.min_credits = EnergyFunction(r.effective_bound, credits.size());
    for (std::size_t s = 0; s < credits.size(); ++s) r.min_credits.set(s, value_from(credits[s]));
    r.sys_region = set_from(field(doc, "sys_region"), credits.size());
    r.env_region = set_from(field(doc, "env_region"), credits.size());
    r.query_states = field(doc, "query_states").get<std::vector<StateBits>>();
    const json& m = field(doc, "metrics");
    r.metrics.length = m.at("length").get<std::size_t>();
    r.metrics.alternation_depth = m.at("alternation_depth").get<int>();
    r.metrics.closed = m.at("closed").get<bool>();
    r.metrics.fragment = fragment_from(m.at("fragment").get<std::string>());
    const json& b = field(doc, "bound_breakdown");
    r.breakdown.num_states = b.at("N").get<std::uint64_t>();
    r.breakdown.max_weight = b.at("K").get<std::int64_t>();
    r.breakdown.length = b.at("m").get<std::size_t>();
    r.breakdown.alternation_depth = b.at("d").get<int>();
    r.breakdown.num_priorities = b.at("priorities").get<std::size_t>();
    r.breakdown.variant = b.at("variant").get<std::string>();
    r.breakdown.bound = b.at("bound").get<std::uint64_t>();
    r.breakdown.credit_cap = b.at("credit_cap").get<std::uint64_t>();
    const json& st = field(doc, "stats");
    r.stats.fixpoint_runs = st.at("fixpoint_runs").get<std::size_t>();
    r.stats.total_iterations = st.at("total_iterations").get<std::size_t>();
    r.stats.max_changes = st.at("max_changes").get<std::size_t>();
    r.stats.iteration_cap = st.at("iteration_cap").get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), 0);
  }
}

}  // namespace emu
