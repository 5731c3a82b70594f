#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>

#include "ltlfo/errors.hpp"
#include "ltlfo/formula.hpp"
#include "ltlfo/parser.hpp"
#include "support/random_formulas.hpp"

using namespace ltlfo;

namespace {

const char* kSms =
    "sort Int ; sort Str\n"
    "upred sms(Int)\n"
    "ipred contact(Int) = env_set \"contacts\"\n"
    "ipred lt(Int, Int) = builtin lt\n"
    "fun   plus(Int, Int) -> Int = builtin add\n"
    "const zero -> Int = 0\n"
    "policy G (forall x:sms. contact(x))\n";

Formula atom(const char* n) { return mk_upred(n, {}); }

std::set<std::string> printed(const std::vector<Formula>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(to_string(f));
  return out;
}

}  // namespace

TEST(ParseSpec, SmsPolicyDesugarsGlobally) {
  const Spec spec = parse_spec(kSms);
  const Formula body = mk_forall({{"x", "Int"}}, "sms", mk_ipred("contact", {mk_var("x", "Int")}));
  const Formula expected = mk_not(mk_until(mk_true(), mk_not(body)));
  EXPECT_TRUE(equal(spec.policy, expected)) << to_string(spec.policy);
  EXPECT_EQ(spec.signature.sort("Int")->kind, Kind::Int);
  EXPECT_EQ(spec.signature.sort("Str")->kind, Kind::Str);
  ASSERT_NE(spec.signature.ipred("contact"), nullptr);
  EXPECT_EQ(spec.signature.ipred("contact")->env_set, "contacts");
  EXPECT_EQ(spec.signature.ipred("lt")->builtin, "lt");
  EXPECT_EQ(spec.signature.function("plus")->builtin, "add");
  EXPECT_EQ(std::get<std::int64_t>(*spec.signature.function("zero")->constant), 0);
}

TEST(ParseSpec, ZeroAryUpredIsAtom) {
  const Spec spec = parse_spec("upred p()\npolicy p()\n");
  EXPECT_EQ(spec.policy->op(), Op::UPred);
  EXPECT_EQ(spec.policy->name(), "p");
  EXPECT_TRUE(spec.policy->terms().empty());
}

TEST(ParseSpec, UnboundVariableIsRejected) {
  const char* text =
      "sort Int\nupred p(Int)\nipred r(Int) = env_set \"r\"\npolicy forall x:p. r(y)\n";
  try {
    parse_spec(text);
    FAIL() << "expected FreeVariableError";
  } catch (const FreeVariableError& e) {
    EXPECT_EQ(e.name(), "y");
  }
}

TEST(ParseSpec, SyntaxErrorCarriesPosition) {
  try {
    parse_spec("upred p()\npolicy p() && && p()\n");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.col(), 15U);
  }
  EXPECT_THROW(parse_spec("upred p(\npolicy true\n"), SyntaxError);
  EXPECT_THROW(parse_spec("upred p()\n"), SyntaxError);
}

TEST(ParseSpec, SortErrors) {
  const char* header = "sort Int\nsort Name = Str\nupred p(Int)\nipred r(Name) = env_set \"r\"\n";
  EXPECT_THROW(parse_spec(std::string(header) + "policy forall x:p. r(x)\n"), SortError);
  EXPECT_THROW(parse_spec(std::string(header) + "policy p(\"a\")\n"), SortError);
  EXPECT_THROW(parse_spec("upred p(Nope)\npolicy true\n"), SortError);
  EXPECT_THROW(parse_spec("sort Int\nipred r(Int) = builtin nosuch\npolicy true\n"), SortError);
  EXPECT_NO_THROW(parse_spec(std::string(header) + "policy p(3) && r(\"bob\")\n"));
}

TEST(ParseSpec, DuplicateAndOverlappingNamesAreRejected) {
  EXPECT_ANY_THROW(parse_spec("upred p()\nupred p()\npolicy true\n"));
  EXPECT_ANY_THROW(parse_spec("upred p()\nipred p() = env_set \"p\"\npolicy true\n"));
}

TEST(ParseSpec, PrecedenceAndAssociativity) {
  const Spec spec = parse_spec("upred a()\nupred b()\nupred c()\npolicy true\n");
  const auto& sig = spec.signature;
  const Formula a = atom("a"), b = atom("b"), c = atom("c");
  EXPECT_TRUE(equal(parse_formula("a() || b() && c()", sig), mk_or(a, mk_and(b, c))));
  EXPECT_TRUE(equal(parse_formula("a() -> b() -> c()", sig), mk_implies(a, mk_implies(b, c))));
  EXPECT_TRUE(equal(parse_formula("a() U b() U c()", sig), mk_until(a, mk_until(b, c))));
  EXPECT_TRUE(equal(parse_formula("a() U b() && c()", sig), mk_and(mk_until(a, b), c)));
  EXPECT_TRUE(equal(parse_formula("!a() U X b()", sig), mk_until(mk_not(a), mk_next(b))));
  EXPECT_TRUE(equal(parse_formula("a() W b()", sig), mk_or(mk_until(a, b), mk_globally(a))));
  EXPECT_TRUE(equal(parse_formula("F a()", sig), mk_until(mk_true(), a)));
  EXPECT_TRUE(equal(parse_formula("!!a()", sig), a));
  EXPECT_TRUE(equal(parse_formula("!true", sig), mk_false()));
}

TEST(ParseSpec, QuantifierBodyExtendsRight) {
  const Spec spec = parse_spec(
      "sort Int\nupred p(Int)\nipred r(Int) = env_set \"r\"\nipred s(Int) = env_set \"s\"\n"
      "policy G (forall x:p. r(x) -> X s(x))\n");
  // The body must be r(x) -> X s(x), so the formula is closed.
  EXPECT_EQ(depth(spec.policy), 1U);
  EXPECT_TRUE(free_variables(spec.policy).empty());
}

TEST(ParseSpec, ExistsAndMultipleBinders) {
  const Spec spec = parse_spec(
      "sort Int\nupred p(Int, Int)\nipred lt(Int, Int) = builtin lt\n"
      "policy exists (x, y):p. lt(x, y)\n");
  ASSERT_TRUE(is_negative(spec.policy));
  const Formula all = positive_form(spec.policy);
  ASSERT_EQ(all->op(), Op::Forall);
  EXPECT_EQ(all->binders().size(), 2U);
}

TEST(ParseSpec, ShadowedBindersAreRenamedApart) {
  const Spec spec = parse_spec(
      "sort Int\nupred p(Int)\nipred r(Int) = env_set \"r\"\n"
      "policy forall x:p. (r(x) && forall x:p. r(x))\n");
  const Formula outer = spec.policy;
  ASSERT_EQ(outer->op(), Op::Forall);
  const Formula inner = outer->body()->rhs();
  ASSERT_EQ(inner->op(), Op::Forall);
  EXPECT_NE(outer->binders()[0].name, inner->binders()[0].name);
  EXPECT_EQ(inner->body()->terms()[0]->name(), inner->binders()[0].name);
  EXPECT_EQ(outer->body()->lhs()->terms()[0]->name(), outer->binders()[0].name);
}

TEST(ParseSpec, TermsWithFunctionsAndLiterals) {
  const Spec spec = parse_spec(kSms);
  const Formula f =
      parse_formula("forall x:sms. lt(plus(x, zero), 10) && contact(-3)", spec.signature);
  EXPECT_TRUE(free_variables(f).empty());
  EXPECT_EQ(to_string(parse_formula(to_string(f), spec.signature)), to_string(f));
}

TEST(ParseSpec, CommentsAndNewlines) {
  const Spec spec = parse_spec(
      "# propositional\nupred a()   # first\nupred b()\npolicy a()\n  U\n  b()  # tail\n");
  EXPECT_TRUE(equal(spec.policy, mk_until(atom("a"), atom("b"))));
}

TEST(SubForall, StopsAtQuantifiers) {
  const Spec spec = parse_spec(
      "sort Int\nupred a()\nupred p(Int)\nipred r(Int) = env_set \"r\"\n"
      "policy a() && forall x:p. X r(x)\n");
  EXPECT_EQ(printed(sub_forall(spec.policy)),
            (std::set<std::string>{"a()", "(forall x:p. X r(x))",
                                   "(a() && (forall x:p. X r(x)))"}));
}

TEST(SubForall, Examples) {
  EXPECT_EQ(printed(sub_forall(atom("p"))), std::set<std::string>{"p()"});
  const Formula f = mk_until(atom("a"), mk_next(atom("b")));
  EXPECT_EQ(printed(sub_forall(f)),
            (std::set<std::string>{"(a() U X b())", "a()", "X b()", "b()"}));
  // Post-order: operands before the formulae containing them.
  const auto subs = sub_forall(f);
  EXPECT_EQ(to_string(subs.back()), "(a() U X b())");
}

TEST(Closure, Examples) {
  EXPECT_EQ(printed(closure(atom("p"))), (std::set<std::string>{"p()", "!p()"}));
  EXPECT_EQ(printed(closure(mk_until(atom("a"), atom("b")))),
            (std::set<std::string>{"(a() U b())", "!(a() U b())", "a()", "!a()", "b()", "!b()"}));
  const Formula all = mk_forall({{"x", "Int"}}, "p", mk_ipred("r", {mk_var("x", "Int")}));
  EXPECT_EQ(closure(all).size(), 2U);
}

TEST(Closure, ClosedUnderNegationWithoutDoubleNegation) {
  testgen::PropositionalGen gen(11);
  for (int i = 0; i < 200; ++i) {
    const Formula f = gen.next();
    const auto cl = closure(f);
    std::set<std::string> names = printed(cl);
    EXPECT_EQ(names.size(), cl.size());
    EXPECT_EQ(cl.size() % 2, 0U);
    for (const auto& g : cl) {
      EXPECT_TRUE(names.contains(to_string(mk_not(g)))) << to_string(g);
      EXPECT_FALSE(g->op() == Op::Not && g->lhs()->op() == Op::Not);
    }
    for (const auto& s : sub_forall(f)) EXPECT_TRUE(names.contains(to_string(s)));
  }
}

TEST(Depth, Examples) {
  const Spec spec = parse_spec(
      "sort Int\nupred p(Int)\nupred q(Int)\nipred r(Int) = env_set \"r\"\n"
      "ipred s(Int) = env_set \"s\"\npolicy true\n");
  const auto& sig = spec.signature;
  EXPECT_EQ(depth(parse_formula("true U X false", sig)), 0U);
  EXPECT_EQ(depth(parse_formula("G (forall x:p. r(x) -> G forall y:q. s(y))", sig)), 2U);
  EXPECT_EQ(depth(parse_formula("(forall x:p. r(x)) && (forall y:q. s(y))", sig)), 1U);
}

TEST(Depth, RecursionIdentitiesOnRandomFormulas) {
  testgen::FirstOrderGen gen(5);
  for (int i = 0; i < 300; ++i) {
    const Formula a = gen.next();
    const Formula b = gen.next();
    EXPECT_EQ(depth(mk_not(a)), depth(a));
    EXPECT_EQ(depth(mk_next(a)), depth(a));
    EXPECT_EQ(depth(mk_and(a, b)), std::max(depth(a), depth(b)));
    EXPECT_EQ(depth(mk_until(a, b)), std::max(depth(a), depth(b)));
    EXPECT_EQ(depth(mk_forall({{"z", "Int"}}, "p", a)), depth(a) + 1);
  }
}

// Parsing renames binders apart, so the generator's output (whose sugar
// may repeat a binder) is normalized by one parse first.
TEST(RoundTrip, PrintThenParseIsIdentity) {
  const Spec fo = testgen::first_order_spec();
  testgen::FirstOrderGen gen(17);
  for (int i = 0; i < 500; ++i) {
    const Formula f = parse_formula(to_string(gen.next()), fo.signature);
    const Formula g = parse_formula(to_string(f), fo.signature);
    EXPECT_TRUE(equal(f, g)) << to_string(f) << "\n" << to_string(g);
  }
  const Spec prop = testgen::propositional_spec();
  testgen::PropositionalGen pgen(3);
  for (int i = 0; i < 500; ++i) {
    const Formula f = pgen.next();
    EXPECT_TRUE(equal(f, parse_formula(to_string(f), prop.signature))) << to_string(f);
  }
}

TEST(Formula, StructuralEqualityAndOrder) {
  const Formula x = mk_and(atom("a"), mk_next(atom("b")));
  const Formula y = mk_and(atom("a"), mk_next(atom("b")));
  EXPECT_TRUE(equal(x, y));
  EXPECT_EQ(compare(x, y), std::strong_ordering::equal);
  EXPECT_EQ(x->hash(), y->hash());
  EXPECT_NE(compare(x, mk_and(mk_next(atom("b")), atom("a"))), std::strong_ordering::equal);
  EXPECT_EQ(x->size(), 4U);
}

TEST(Formula, SubstituteReplacesFreeOccurrencesOnly) {
  const Term x = mk_var("x", "Int");
  const Formula f = mk_and(mk_ipred("r", {x}), mk_forall({{"x", "Int"}}, "p", mk_ipred("s", {x})));
  const Formula g = substitute(f, Valuation{{"x", Value{std::int64_t{4}}}});
  EXPECT_EQ(to_string(g), "(r(4) && (forall x:p. s(x)))");
  EXPECT_TRUE(free_variables(g).empty());
}
