#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "emu/variables.hpp"

namespace emu {

enum class AssertionKind { True, False, Var, Not, And, Or, Implies, Iff };

struct AssertionNode;
using AssertionPtr = std::shared_ptr<const AssertionNode>;

struct AssertionNode {
  AssertionKind kind = AssertionKind::True;
  std::string var;       // Var only
  bool primed = false;   // Var only
  AssertionPtr lhs;      // Not uses lhs
  AssertionPtr rhs;
};

/// Immutable propositional formula over V and primed V'.
///
/// Grammar, loosest binding first:
///   expr := expr "<->" expr | expr "->" expr | expr "|" expr | expr "&" expr
///         | "!" expr | "(" expr ")" | "true" | "false" | IDENT | IDENT "'"
/// with `->` and `<->` right-associative and `&`, `|` left-associative.
class Assertion {
 public:
  Assertion();  // true

  static Assertion parse(std::string_view text);
  static Assertion constant(bool value);
  static Assertion variable(std::string name, bool primed = false);

  friend Assertion operator!(const Assertion& a);
  friend Assertion operator&&(const Assertion& a, const Assertion& b);
  friend Assertion operator||(const Assertion& a, const Assertion& b);
  static Assertion implies(const Assertion& a, const Assertion& b);
  static Assertion iff(const Assertion& a, const Assertion& b);

  const AssertionNode& root() const { return *root_; }
  bool is_constant(bool value) const;

  /// Referenced identifiers, split by priming.
  std::set<std::string> unprimed_variables() const;
  std::set<std::string> primed_variables() const;
  bool references_primed() const { return !primed_variables().empty(); }

  /// Fully re-parseable text; parenthesises only where precedence requires.
  std::string to_string() const;

  /// Structural equality.
  bool operator==(const Assertion& other) const;

 private:
  explicit Assertion(AssertionPtr root) : root_(std::move(root)) {}
  AssertionPtr root_;
};

/// Assertion resolved against a VariableSet into a flat postfix program.
class CompiledAssertion {
 public:
  CompiledAssertion() = default;
  /// Throws MalformedAssertion on identifiers missing from `vars`.
  CompiledAssertion(const Assertion& a, const VariableSet& vars);

  /// Evaluates with unprimed atoms reading `current` and primed atoms reading
  /// `next`. Callers must pass a meaningful `next` whenever uses_next().
  bool eval(StateBits current, StateBits next = 0) const;

  bool uses_next() const { return primed_support_ != 0; }
  StateBits primed_support() const { return primed_support_; }
  StateBits unprimed_support() const { return unprimed_support_; }

 private:
  enum class Op : std::uint8_t { PushTrue, PushFalse, Cur, Next, Not, And, Or, Implies, Iff };
  struct Instr {
    Op op;
    std::uint8_t var;
  };
  std::vector<Instr> program_;
  StateBits primed_support_ = 0;
  StateBits unprimed_support_ = 0;
};

/// Evaluates `a` on (s, s_next). Throws MalformedAssertion for unknown
/// identifiers and ArityError when a primed atom occurs but `s_next` is empty.
bool eval_assertion(const Assertion& a, const VariableSet& vars, State s,
                    std::optional<State> s_next = std::nullopt);

}  // namespace emu
