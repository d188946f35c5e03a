#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "emu/assertion.hpp"

namespace emu {

/// Node kinds of the (energy) mu-calculus AST. A negated atom is an Atom whose
/// assertion is negated; `Not` is the general De Morgan negation.
enum class FormulaKind { Atom, RelVar, And, Or, Diamond, Box, Mu, Nu, Not };

struct FormulaNode;
using FormulaPtr = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormulaKind kind = FormulaKind::Atom;
  Assertion atom;    // Atom: pure-state assertion
  std::string name;  // RelVar, Mu, Nu
  FormulaPtr lhs;    // unary operand / fixpoint body / left operand
  FormulaPtr rhs;
};

/// Immutable formula. The same tree is read with the classical (Cpre) or the
/// energy (ECpre) modal semantics depending on the evaluator.
///
/// Text grammar:
///   f := "mu" RELVAR "." f | "nu" RELVAR "." f | f "|" f | f "&" f
///      | "!" f | "<>" f | "[]" f | "(" f ")" | IDENT | RELVAR | @"assertion"
/// where RELVAR starts with an uppercase letter, IDENT with anything else, and
/// `@"..."` embeds an arbitrary pure-state assertion. `!`, `<>`, `[]` bind
/// tightest, then `&`, then `|`; `mu`/`nu` bodies extend as far right as
/// possible.
class Formula {
 public:
  Formula();  // the atom `true`

  /// Parses and renames bound relational variables apart so each is bound
  /// exactly once and never clashes with a free variable.
  static Formula parse(std::string_view text);

  static Formula atom(Assertion a);
  static Formula relvar(std::string name);
  static Formula conj(const Formula& a, const Formula& b);
  static Formula disj(const Formula& a, const Formula& b);
  static Formula diamond(const Formula& f);
  static Formula box(const Formula& f);
  static Formula mu(std::string var, const Formula& body);
  static Formula nu(std::string var, const Formula& body);
  static Formula negation(const Formula& f);

  const FormulaNode& root() const { return *root_; }
  FormulaPtr ptr() const { return root_; }
  explicit Formula(FormulaPtr root) : root_(std::move(root)) {}

  std::string to_string() const;
  /// Structural equality including bound-variable names.
  bool operator==(const Formula& other) const;

 private:
  FormulaPtr root_;
};

enum class Fragment { Sys, Env, Both, Mixed };
std::string to_string(Fragment f);

struct FormulaMetrics {
  std::size_t length = 0;     // AST node count
  int alternation_depth = 0;  // interdependent mu/nu nesting
  bool closed = true;
  Fragment fragment = Fragment::Both;
};

FormulaMetrics metrics(const Formula& f);

/// sys iff no Box occurs, env iff no Diamond occurs, both iff neither occurs.
Fragment classify_fragment(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
bool is_closed(const Formula& f);

struct MonotonicityViolation {
  std::string variable;
  std::string path;  // binder-to-occurrence path, e.g. "mu X / ! / X"
};

/// Every bound variable's free occurrences in its binder body must sit under an
/// even number of Not nodes.
std::optional<MonotonicityViolation> check_monotone(const Formula& f);

/// Negation-normal form via the De Morgan laws of the (energy) mu-calculus:
/// !!f = f, !(a & b) = !a | !b, !<>f = []!f, !mu X. f(X) = nu X. !f(!X), and
/// negated atoms become atoms over the negated assertion. Only negations on
/// free relational variables survive.
Formula push_negations(const Formula& f);

/// Renames bound variables apart (idempotent on parser output).
Formula rename_apart(const Formula& f);

/// Equality up to consistent renaming of bound variables.
bool alpha_equivalent(const Formula& a, const Formula& b);

/// Alternation depth computed on the negation-normal form.
int alternation_depth(const Formula& f);

namespace builtin {
/// nu X. <>X
Formula safety();
/// mu X. (p | <>X)
Formula reachability(const Assertion& p);
/// nu Z. mu Y. ((J & <>Z) | <>Y)
Formula buchi(const Assertion& j);
/// mu X. nu Y. ((J & <>Y) | <>X)
Formula co_buchi(const Assertion& j);
/// Environment-side dual of buchi(J): the negation-normal form of !buchi(J).
Formula dual_buchi(const Assertion& j);
}  // namespace builtin

/// Named constructor used by the CLI: safety, reach (p), buchi (J),
/// cobuchi (J), dual-buchi (J). Parameters must be pure-state assertions;
/// throws FormulaError otherwise.
Formula make_builtin(std::string_view name, const std::map<std::string, std::string>& params);

/// True when `f` has the shape nu Z. mu Y. ((A & <>Z) | <>Y).
bool is_buchi_shape(const Formula& f);

}  // namespace emu
