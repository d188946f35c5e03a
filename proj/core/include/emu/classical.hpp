#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emu/arena.hpp"
#include "emu/formula.hpp"
#include "emu/variables.hpp"

namespace emu {

/// Membership bit set over the states 0 .. n-1.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t n, bool full = false);

  static StateSet empty(std::size_t n) { return StateSet(n, false); }
  static StateSet full(std::size_t n) { return StateSet(n, true); }

  std::size_t universe() const { return n_; }
  bool contains(std::size_t s) const { return (words_[s >> 6] >> (s & 63)) & 1U; }
  void insert(std::size_t s) { words_[s >> 6] |= std::uint64_t{1} << (s & 63); }
  void erase(std::size_t s) { words_[s >> 6] &= ~(std::uint64_t{1} << (s & 63)); }
  void set(std::size_t s, bool v) { v ? insert(s) : erase(s); }

  std::size_t count() const;
  bool is_empty() const { return count() == 0; }
  bool is_subset_of(const StateSet& other) const;
  std::vector<std::size_t> elements() const;

  StateSet operator|(const StateSet& o) const;
  StateSet operator&(const StateSet& o) const;
  StateSet operator~() const;
  bool operator==(const StateSet& o) const = default;

 private:
  void trim();
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

using SetValuation = std::map<std::string, StateSet>;

/// Per-evaluation fixpoint statistics.
struct EvalStats {
  std::size_t fixpoint_runs = 0;       // fixpoint evaluations, nested ones counted each time
  std::size_t total_iterations = 0;    // body evaluations across all runs
  std::size_t max_changes = 0;         // most changing iterations in a single run
  std::uint64_t iteration_cap = 0;     // cap in force for the evaluation
};

/// { s | every valid input has a valid completion landing in S }.
StateSet cpre_sys(const Arena& arena, const StateSet& s);
/// { s | some valid input has all valid completions landing in S }.
StateSet cpre_env(const Arena& arena, const StateSet& s);

/// Powerset semantics. Fixpoints iterate from the empty (mu) or full (nu) set
/// to stabilisation; each run may change at most 2^|V| times and iterates
/// must form a monotone chain, otherwise InternalError. Throws FormulaError
/// for non-monotone formulas or unbound free variables.
StateSet eval_classical(const VariableSet& vars, const Arena& arena, const Formula& f, const SetValuation& v = {},
                        EvalStats* stats = nullptr);

/// States of `vars` satisfying the pure-state assertion `a`.
StateSet satisfying_states(const VariableSet& vars, const Assertion& a);

}  // namespace emu
