#include "emu/classical.hpp"

#include <algorithm>
#include <bit>

#include "emu/errors.hpp"

namespace emu {

StateSet::StateSet(std::size_t n, bool full) : n_(n), words_((n + 63) / 64, full ? ~std::uint64_t{0} : 0) {
  trim();
}

void StateSet::trim() {
  if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
}

std::size_t StateSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool StateSet::is_subset_of(const StateSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

std::vector<std::size_t> StateSet::elements() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < n_; ++s) {
    if (contains(s)) out.push_back(s);
  }
  return out;
}

StateSet StateSet::operator|(const StateSet& o) const {
  StateSet r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
  return r;
}

StateSet StateSet::operator&(const StateSet& o) const {
  StateSet r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
  return r;
}

StateSet StateSet::operator~() const {
  StateSet r = *this;
  for (auto& w : r.words_) w = ~w;
  r.trim();
  return r;
}

StateSet cpre_sys(const Arena& arena, const StateSet& s) {
  const std::size_t n = arena.num_states();
  StateSet out(n);
  for (StateBits st = 0; st < n; ++st) {
    bool all_inputs = true;
    for (std::size_t g = arena.groups_begin(st); g < arena.groups_end(st) && all_inputs; ++g) {
      const auto moves = arena.moves(g);
      all_inputs = std::any_of(moves.begin(), moves.end(), [&](const Move& m) { return s.contains(m.target); });
    }
    out.set(st, all_inputs);
  }
  return out;
}

StateSet cpre_env(const Arena& arena, const StateSet& s) {
  const std::size_t n = arena.num_states();
  StateSet out(n);
  for (StateBits st = 0; st < n; ++st) {
    bool some_input = false;
    for (std::size_t g = arena.groups_begin(st); g < arena.groups_end(st) && !some_input; ++g) {
      const auto moves = arena.moves(g);
      some_input = std::all_of(moves.begin(), moves.end(), [&](const Move& m) { return s.contains(m.target); });
    }
    out.set(st, some_input);
  }
  return out;
}

StateSet satisfying_states(const VariableSet& vars, const Assertion& a) {
  if (a.references_primed()) throw MalformedAssertion("expected a pure-state assertion: " + a.to_string());
  const CompiledAssertion c(a, vars);
  StateSet out(vars.num_states());
  for (StateBits s = 0; s < vars.num_states(); ++s) out.set(s, c.eval(s));
  return out;
}

namespace {

class ClassicalEvaluator {
 public:
  ClassicalEvaluator(const VariableSet& vars, const Arena& arena, EvalStats& stats)
      : vars_(vars), arena_(arena), stats_(stats), n_(arena.num_states()) {}

  StateSet eval(const FormulaNode& f, SetValuation& env) {
    switch (f.kind) {
      case FormulaKind::Atom: return atom(f.atom);
      case FormulaKind::RelVar: {
        const auto it = env.find(f.name);
        if (it == env.end()) throw FormulaError("unbound relational variable " + f.name);
        return it->second;
      }
      case FormulaKind::Not: return ~eval(*f.lhs, env);
      case FormulaKind::And: return eval(*f.lhs, env) & eval(*f.rhs, env);
      case FormulaKind::Or: return eval(*f.lhs, env) | eval(*f.rhs, env);
      case FormulaKind::Diamond: return cpre_sys(arena_, eval(*f.lhs, env));
      case FormulaKind::Box: return cpre_env(arena_, eval(*f.lhs, env));
      case FormulaKind::Mu:
      case FormulaKind::Nu: return fixpoint(f, env);
    }
    throw InternalError("unknown formula node");
  }

 private:
  StateSet atom(const Assertion& a) {
    const std::string key = a.to_string();
    auto it = atoms_.find(key);
    if (it == atoms_.end()) {
      StateSet base = satisfying_states(vars_, a);
      // States of a wider arena (extra high-order variables) inherit membership
      // from their projection onto `vars_`.
      StateSet wide(n_);
      const StateBits mask = vars_.full_mask();
      for (StateBits s = 0; s < n_; ++s) wide.set(s, base.contains(s & mask));
      it = atoms_.emplace(key, std::move(wide)).first;
    }
    return it->second;
  }

  StateSet fixpoint(const FormulaNode& f, SetValuation& env) {
    const bool least = f.kind == FormulaKind::Mu;
    StateSet current = least ? StateSet::empty(n_) : StateSet::full(n_);
    const auto saved = env.find(f.name) == env.end() ? std::optional<StateSet>{} : env[f.name];
    std::size_t changes = 0;
    ++stats_.fixpoint_runs;
    while (true) {
      env[f.name] = current;
      StateSet next = eval(*f.lhs, env);
      ++stats_.total_iterations;
      if (next == current) break;
      const bool chain_ok = least ? current.is_subset_of(next) : next.is_subset_of(current);
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
  EvalStats& stats_;
  std::size_t n_;
  std::map<std::string, StateSet> atoms_;
};

}  // namespace

StateSet eval_classical(const VariableSet& vars, const Arena& arena, const Formula& f, const SetValuation& v,
                        EvalStats* stats) {
  if (const auto bad = check_monotone(f)) {
    throw FormulaError("formula is not monotone in " + bad->variable + " (" + bad->path + ")");
  }
  for (const auto& name : free_variables(f)) {
    if (!v.count(name)) throw FormulaError("unbound relational variable " + name);
  }
  for (const auto& [name, set] : v) {
    if (set.universe() != arena.num_states()) throw DomainError("valuation for " + name + " has the wrong width");
  }
  EvalStats local;
  EvalStats& st = stats ? *stats : local;
  st.iteration_cap = arena.num_states();
  SetValuation env = v;
  ClassicalEvaluator ev(vars, arena, st);
  return ev.eval(f.root(), env);
}

}  // namespace emu
