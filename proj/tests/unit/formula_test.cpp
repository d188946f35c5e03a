#include <gtest/gtest.h>

#include "emu/errors.hpp"
#include "emu/formula.hpp"
#include "emu/random.hpp"

namespace emu {
namespace {

const Assertion y = Assertion::variable("y");

TEST(FormulaParse, Builtins) {
  EXPECT_TRUE(alpha_equivalent(Formula::parse("nu Z . (mu Y . ((J & <>Z) | <>Y))"),
                               Formula::nu("A", Formula::mu("B", Formula::disj(Formula::conj(Formula::relvar("J"), Formula::diamond(Formula::relvar("A"))),
                                                                                Formula::diamond(Formula::relvar("B")))))));
  EXPECT_TRUE(alpha_equivalent(Formula::parse("nu X . <>X"), builtin::safety()));
  EXPECT_TRUE(alpha_equivalent(Formula::parse("mu X . (p | <>X)"), builtin::reachability(Assertion::variable("p"))));
  EXPECT_TRUE(alpha_equivalent(Formula::parse("nu Z . mu Y . y & <>Z | <>Y"), builtin::buchi(y)));
}

TEST(FormulaParse, AssertionAtoms) {
  const Formula f = Formula::parse("mu X . @\"x -> y\" | <>X");
  EXPECT_EQ(f.root().kind, FormulaKind::Mu);
  EXPECT_EQ(f.root().lhs->kind, FormulaKind::Or);
  EXPECT_EQ(f.root().lhs->lhs->atom, Assertion::parse("x -> y"));
}

TEST(FormulaParse, Precedence) {
  const Formula f = Formula::parse("a | b & <>c");
  ASSERT_EQ(f.root().kind, FormulaKind::Or);
  EXPECT_EQ(f.root().rhs->kind, FormulaKind::And);
  EXPECT_EQ(f.root().rhs->rhs->kind, FormulaKind::Diamond);
  const Formula g = Formula::parse("mu X . a | <>X");
  EXPECT_EQ(g.root().lhs->kind, FormulaKind::Or);
  const Formula h = Formula::parse("(mu X . a) | b");
  EXPECT_EQ(h.root().kind, FormulaKind::Or);
  const Formula k = Formula::parse("![]a & b");
  ASSERT_EQ(k.root().kind, FormulaKind::And);
  EXPECT_EQ(k.root().lhs->kind, FormulaKind::Not);
  EXPECT_EQ(k.root().lhs->lhs->kind, FormulaKind::Box);
}

TEST(FormulaParse, Errors) {
  EXPECT_THROW(Formula::parse("mu x . x"), ParseError);
  EXPECT_THROW(Formula::parse("mu X <>X"), ParseError);
  EXPECT_THROW(Formula::parse("a &"), ParseError);
  EXPECT_THROW(Formula::parse("a'"), ParseError);
  EXPECT_THROW(Formula::parse("@\"x'\""), ParseError);
  EXPECT_THROW(Formula::parse("@\"x &\""), ParseError);
  EXPECT_THROW(Formula::parse("(a"), ParseError);
  try {
    Formula::parse("a | | b");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4U);
  }
}

TEST(FormulaParse, RenamesApart) {
  const Formula f = Formula::parse("(mu X . <>X) | (nu X . <>X)");
  const std::string a = f.root().lhs->name;
  const std::string b = f.root().rhs->name;
  EXPECT_NE(a, b);
  const Formula g = Formula::parse("mu X . X | (nu X . <>X)");
  EXPECT_NE(g.root().name, g.root().lhs->rhs->name);
  const Formula open = Formula::parse("Y | mu Y . <>Y");
  EXPECT_EQ(free_variables(open), (std::set<std::string>{"Y"}));
  EXPECT_NE(open.root().rhs->name, "Y");
}

TEST(FormulaMetrics, Examples) {
  const auto b = metrics(builtin::buchi(y));
  EXPECT_EQ(b.alternation_depth, 2);
  EXPECT_EQ(b.length, 9U);
  EXPECT_EQ(b.fragment, Fragment::Sys);
  const auto s = metrics(builtin::safety());
  EXPECT_EQ(s.alternation_depth, 1);
  EXPECT_EQ(s.length, 3U);
  const auto r = metrics(builtin::reachability(Assertion::variable("p")));
  EXPECT_EQ(r.alternation_depth, 1);
  EXPECT_EQ(r.length, 5U);
  EXPECT_EQ(metrics(Formula::parse("a & <>b")).alternation_depth, 0);
  EXPECT_EQ(metrics(builtin::co_buchi(y)).alternation_depth, 2);
  EXPECT_EQ(metrics(Formula::parse("mu X . mu Y . <>X | <>Y")).alternation_depth, 1);
  EXPECT_EQ(metrics(Formula::parse("nu X . (mu Y . <>Y) & <>X")).alternation_depth, 1);
  EXPECT_FALSE(metrics(Formula::parse("<>X")).closed);
}

TEST(FormulaFragment, Classification) {
  EXPECT_EQ(classify_fragment(builtin::buchi(y)), Fragment::Sys);
  EXPECT_EQ(classify_fragment(Formula::parse("nu X . []X")), Fragment::Env);
  EXPECT_EQ(classify_fragment(Formula::parse("mu X . p | X")), Fragment::Both);
  EXPECT_EQ(classify_fragment(Formula::parse("<>a | []b")), Fragment::Mixed);
}

TEST(FormulaMonotone, Check) {
  EXPECT_FALSE(check_monotone(Formula::parse("nu X . !!X")));
  const auto v = check_monotone(Formula::parse("mu X . !X"));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->variable, "X");
  EXPECT_EQ(v->path, "mu X / ! / X");
  EXPECT_FALSE(check_monotone(builtin::buchi(y)));
  EXPECT_TRUE(check_monotone(Formula::parse("nu X . a & !(b | <>X)")));
  EXPECT_FALSE(check_monotone(Formula::parse("nu X . !(mu Y . !X & <>Y)")) );
}

TEST(FormulaBuiltin, Constructors) {
  EXPECT_TRUE(alpha_equivalent(make_builtin("buchi", {{"J", "y"}}), builtin::buchi(y)));
  EXPECT_TRUE(alpha_equivalent(make_builtin("safety", {}), Formula::parse("nu X . <>X")));
  EXPECT_TRUE(alpha_equivalent(make_builtin("reach", {{"p", "x"}}), Formula::parse("mu X . x | <>X")));
  EXPECT_TRUE(alpha_equivalent(make_builtin("cobuchi", {{"J", "y"}}), builtin::co_buchi(y)));
  EXPECT_TRUE(alpha_equivalent(make_builtin("dual-buchi", {{"J", "y"}}), builtin::dual_buchi(y)));
  EXPECT_THROW(make_builtin("buchi", {{"J", "y'"}}), FormulaError);
  EXPECT_THROW(make_builtin("buchi", {}), FormulaError);
  EXPECT_THROW(make_builtin("nope", {}), FormulaError);
  EXPECT_EQ(classify_fragment(builtin::dual_buchi(y)), Fragment::Env);
  EXPECT_TRUE(is_buchi_shape(builtin::buchi(y)));
  EXPECT_TRUE(is_buchi_shape(Formula::parse("nu A . mu B . @\"x & y\" & <>A | <>B")));
  EXPECT_FALSE(is_buchi_shape(builtin::co_buchi(y)));
  EXPECT_FALSE(is_buchi_shape(builtin::safety()));
}

TEST(FormulaNegation, PushNegations) {
  const Formula dual = push_negations(Formula::negation(builtin::buchi(y)));
  EXPECT_TRUE(alpha_equivalent(dual, builtin::dual_buchi(y)));
  EXPECT_TRUE(alpha_equivalent(dual, Formula::parse("mu Z . nu Y . (@\"!y\" | []Z) & []Y")));
  EXPECT_TRUE(alpha_equivalent(push_negations(Formula::parse("!!a")), Formula::parse("a")));
  EXPECT_TRUE(alpha_equivalent(push_negations(Formula::parse("!(a & <>b)")), Formula::parse("@\"!a\" | []@\"!b\"")));
  EXPECT_TRUE(alpha_equivalent(push_negations(Formula::parse("!mu X . a | <>X")), Formula::parse("nu X . @\"!a\" & []X")));
}

TEST(FormulaProperties, RoundTripRenameAndDuality) {
  Rng rng(21);
  const VariableSet vars({"a", "b", "c"}, {"a"});
  for (int i = 0; i < 400; ++i) {
    const Formula f = random_formula(rng, vars, 5, rng.chance(0.5));
    const Formula back = Formula::parse(f.to_string());
    EXPECT_TRUE(alpha_equivalent(f, back)) << f.to_string() << " vs " << back.to_string();
    const auto m1 = metrics(f);
    const auto m2 = metrics(rename_apart(back));
    EXPECT_EQ(m1.length, m2.length);
    EXPECT_EQ(m1.alternation_depth, m2.alternation_depth);
    EXPECT_EQ(m1.fragment, m2.fragment);
    EXPECT_FALSE(check_monotone(f)) << f.to_string();
    EXPECT_TRUE(is_closed(f));

    const Formula nnf = push_negations(Formula::negation(f));
    EXPECT_FALSE(check_monotone(nnf));
    std::function<bool(const FormulaNode&)> not_free = [&](const FormulaNode& n) {
      if (n.kind == FormulaKind::Not) return false;
      return (!n.lhs || not_free(*n.lhs)) && (!n.rhs || not_free(*n.rhs));
    };
    EXPECT_TRUE(not_free(nnf.root())) << nnf.to_string();
    const Fragment before = classify_fragment(push_negations(f));
    const Fragment after = classify_fragment(nnf);
    if (before == Fragment::Sys) EXPECT_EQ(after, Fragment::Env);
    if (before == Fragment::Env) EXPECT_EQ(after, Fragment::Sys);
    if (before == Fragment::Both) EXPECT_EQ(after, Fragment::Both);
  }
}

TEST(FormulaProperties, AlphaEquivalence) {
  EXPECT_TRUE(alpha_equivalent(Formula::parse("mu X . <>X"), Formula::parse("mu Q . <>Q")));
  EXPECT_FALSE(alpha_equivalent(Formula::parse("mu X . <>X"), Formula::parse("nu X . <>X")));
  EXPECT_FALSE(alpha_equivalent(Formula::parse("mu X . X | Y"), Formula::parse("mu Y . Y | Y")));
  EXPECT_FALSE(alpha_equivalent(Formula::parse("mu Y . Y | Y"), Formula::parse("mu X . X | Y")));
  EXPECT_TRUE(alpha_equivalent(Formula::parse("nu A . mu B . <>A | <>B"), Formula::parse("nu B . mu A . <>B | <>A")));
}

}  // namespace
}  // namespace emu
