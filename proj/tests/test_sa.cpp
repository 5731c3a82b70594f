#include <gtest/gtest.h>

#include <random>

#include "ltlfo/errors.hpp"
#include "ltlfo/parser.hpp"
#include "ltlfo/sa.hpp"
#include "support/random_formulas.hpp"

using namespace ltlfo;

namespace {

const Spec& fo() {
  static const Spec s = testgen::first_order_spec();
  return s;
}

Formula parse(const char* text) { return parse_formula(text, fo().signature); }

Formula atom(const char* n) { return mk_upred(n, {}); }

std::vector<StateId> states_with(const SpawningAutomaton& sa, const Formula& f) {
  std::vector<StateId> out;
  for (StateId q = 0; q < sa.num_states(); ++q) {
    if (sa.contains(q, f)) out.push_back(q);
  }
  return out;
}

Event event(const char* json) { return parse_event(json, fo().signature); }

}  // namespace

TEST(BuildSA, SingleAtom) {
  const SpawningAutomaton sa(atom("e"));
  EXPECT_EQ(sa.num_states(), 2U);
  EXPECT_EQ(sa.closure_size(), 2U);
  EXPECT_EQ(sa.initial(), states_with(sa, atom("e")));
  EXPECT_EQ(sa.initial().size(), 1U);
  EXPECT_TRUE(sa.acceptance().empty());
  EXPECT_EQ(sa.level(), 0U);
  for (StateId q = 0; q < 2; ++q) {
    EXPECT_TRUE(sa.live(q));
    EXPECT_EQ(sa.successors(q).size(), 2U);
  }
}

TEST(BuildSA, UntilCompleteSubsets) {
  const Formula a = atom("a"), b = atom("b"), u = mk_until(a, b);
  const SpawningAutomaton sa(u);
  // Of the 8 subsets over {a, b, a U b}, (U, !a, !b), (!U, b, a) and (!U, b, !a) are
  // not complete.
  EXPECT_EQ(sa.num_states(), 5U);
  for (StateId q = 0; q < sa.num_states(); ++q) {
    if (sa.contains(q, u)) EXPECT_TRUE(sa.contains(q, a) || sa.contains(q, b));
    if (!sa.contains(q, u)) EXPECT_FALSE(sa.contains(q, b));
  }
  ASSERT_EQ(sa.acceptance().size(), 1U);
  std::vector<StateId> expected;
  for (StateId q = 0; q < sa.num_states(); ++q) {
    if (sa.contains(q, b) || sa.contains(q, mk_not(u))) expected.push_back(q);
  }
  EXPECT_EQ(sa.acceptance()[0], expected);
  EXPECT_EQ(sa.acceptance()[0].size(), 4U);
  EXPECT_EQ(sa.initial(), states_with(sa, u));
  // (a U b, a, !b) is live: it reaches a b-state.
  for (StateId q = 0; q < sa.num_states(); ++q) {
    if (sa.contains(q, u) && sa.contains(q, a) && sa.contains(q, mk_not(b))) {
      EXPECT_TRUE(sa.live(q));
      for (StateId r : sa.successors(q)) EXPECT_TRUE(sa.contains(r, u));
    }
  }
}

TEST(BuildSA, NextPropagation) {
  const Formula f = mk_next(atom("a"));
  const SpawningAutomaton sa(f);
  for (StateId q = 0; q < sa.num_states(); ++q) {
    for (StateId r : sa.successors(q)) EXPECT_EQ(sa.contains(q, f), sa.contains(r, atom("a")));
  }
}

TEST(BuildSA, GloballyPendingStateIsNotAcceptingAlone) {
  const Formula g = mk_globally(atom("a"));
  const SpawningAutomaton sa(g);
  EXPECT_EQ(sa.num_states(), 3U);
  for (StateId q = 0; q < sa.num_states(); ++q) EXPECT_TRUE(sa.live(q));
  // The eventuality F !a can be postponed forever only by an unfair run.
  const SpawningAutomaton bad(mk_and(g, mk_eventually(mk_not(atom("a")))));
  for (StateId q : bad.initial()) EXPECT_FALSE(bad.live(q));
  const SpawningAutomaton never(mk_false());
  EXPECT_TRUE(never.initial().empty());
}

TEST(BuildSA, QuantifiedSubformulaIsAtomic) {
  const Formula f = parse("forall x:p. r(x)");
  const SpawningAutomaton sa(f);
  EXPECT_EQ(sa.closure_size(), 2U);
  EXPECT_EQ(sa.num_states(), 2U);
  EXPECT_EQ(sa.level(), 1U);
}

TEST(BuildSA, DeterministicStateNumbering) {
  testgen::FirstOrderGen gen(4);
  for (int i = 0; i < 50; ++i) {
    const Formula f = gen.next();
    const SpawningAutomaton a(f), b(f);
    ASSERT_EQ(a.num_states(), b.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) {
      EXPECT_EQ(a.members(q), b.members(q));
      if (q > 0) {
        EXPECT_LT(a.members(q - 1), a.members(q));
      }
    }
  }
}

TEST(BuildSA, CapacityGuard) {
  const Formula f = parse("G (e() U X X X e())");
  EXPECT_THROW(SpawningAutomaton(f, 4), CapacityError);
  EXPECT_NO_THROW(SpawningAutomaton(f, 30));
  SACache cache(4);
  EXPECT_THROW(cache.get(f), CapacityError);
}

TEST(StepSA, LiteralMismatchIsUndefined) {
  const Formula f = parse("p(3)");
  const SpawningAutomaton sa(f);
  const Event without = event(R"({"actions":[["p",[4]]]})");
  const Event with = event(R"({"actions":[["p",[3]]]})");
  const Structure s(fo().signature, without.env);
  ASSERT_EQ(sa.initial().size(), 1U);
  const StateId q = sa.initial()[0];
  EXPECT_FALSE(sa.step(q, without, s, {}).has_value());
  const auto r = sa.step(q, with, s, {});
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(r->spawn.is_true());
  EXPECT_EQ(*r->successors, sa.live_successors(q));
}

TEST(StepSA, ValuationIsAppliedAtStepTime) {
  const Formula body = parse("forall x:p. r(x)")->body();  // r(x)
  const SpawningAutomaton sa(body);
  const Event e = event(R"({"env":{"r":[[2]],"s":[]}})");
  const Structure s(fo().signature, e.env);
  const StateId q = sa.initial()[0];
  EXPECT_TRUE(sa.step(q, e, s, {{"x", Value{std::int64_t{2}}}}).has_value());
  EXPECT_FALSE(sa.step(q, e, s, {{"x", Value{std::int64_t{1}}}}).has_value());
}

TEST(StepSA, SpawnConjunctionOverActions) {
  const Formula f = parse("forall x:p. r(x)");
  const SpawningAutomaton sa(f);
  const Formula body = f->body();
  const Event e = event(R"({"actions":[["p",[1]],["p",[2]],["q",[3]]],"env":{"r":[],"s":[]}})");
  const StateId q = states_with(sa, f)[0];
  const SpawnFormula expected = SpawnFormula::conj(
      {SpawnFormula::leaf(ChildSpec{body, {{"x", Value{std::int64_t{1}}}}, false}),
       SpawnFormula::leaf(ChildSpec{body, {{"x", Value{std::int64_t{2}}}}, false})});
  EXPECT_EQ(sa.spawn(q, e, {}), expected);
  // The negated member asks for a counterexample among the actions.
  const StateId nq = states_with(sa, mk_not(f))[0];
  const SpawnFormula dual = SpawnFormula::disj(
      {SpawnFormula::leaf(ChildSpec{body, {{"x", Value{std::int64_t{1}}}}, true}),
       SpawnFormula::leaf(ChildSpec{body, {{"x", Value{std::int64_t{2}}}}, true})});
  EXPECT_EQ(sa.spawn(nq, e, {}), dual);
}

TEST(StepSA, VacuousQuantifiers) {
  const Formula f = parse("forall x:p. r(x)");
  const SpawningAutomaton sa(f);
  const Event e = event(R"({"actions":[["q",[3]]],"env":{"r":[],"s":[]}})");
  EXPECT_TRUE(sa.spawn(states_with(sa, f)[0], e, {}).is_true());
  EXPECT_TRUE(sa.spawn(states_with(sa, mk_not(f))[0], e, {}).is_false());
}

TEST(StepSA, ChildValuationsCoverExactlyTheBodyVariables) {
  const Formula f = parse("forall x:p. (r(x) && forall y:q. s(y))");
  const SpawningAutomaton sa(f);
  const Event e = event(R"({"actions":[["p",[1]],["q",[2]]],"env":{"r":[],"s":[]}})");
  sa.spawn(states_with(sa, f)[0], e, {}).for_each_leaf([&](const ChildSpec& c) {
    EXPECT_EQ(c.valuation.size(), 1U);
    EXPECT_TRUE(c.valuation.contains("x"));
    // The inner child automaton ranges over y only.
    const SpawningAutomaton child(c.formula);
    const Event e2 = event(R"({"actions":[["q",[2]]],"env":{"r":[[1]],"s":[]}})");
    const Formula inner = positive_form(c.formula)->rhs();
    ASSERT_EQ(inner->op(), Op::Forall);
    for (StateId q : states_with(child, inner)) {
      child.spawn(q, e2, c.valuation).for_each_leaf([&](const ChildSpec& g) {
        EXPECT_EQ(g.valuation.size(), 1U);
        EXPECT_TRUE(g.valuation.contains("y"));
      });
    }
  });
}

TEST(StepSA, SpawnedChildrenHaveSmallerLevel) {
  const GenConfig cfg = testgen::first_order_gen(fo().signature);
  testgen::FirstOrderGen gen(31);
  for (int i = 0; i < 100; ++i) {
    const Formula f = gen.next();
    std::unique_ptr<SpawningAutomaton> sa;
    try {
      sa = std::make_unique<SpawningAutomaton>(f);
    } catch (const CapacityError&) {
      continue;
    }
    const Trace t = gen_trace(fo().signature, 3, i, cfg);
    for (const auto& e : t) {
      for (StateId q = 0; q < sa->num_states(); ++q) {
        const SpawnFormula sp = sa->spawn(q, e, {});
        if (sa->level() == 0) {
          EXPECT_TRUE(sp.is_true());
        }
        sp.for_each_leaf([&](const ChildSpec& c) { EXPECT_LT(depth(c.formula), sa->level()); });
      }
    }
  }
}

TEST(SACacheTest, SharesStructurallyEqualFormulae) {
  SACache cache;
  const auto& a = cache.get(parse("G e()"));
  const auto& b = cache.get(parse("G e()"));
  EXPECT_EQ(&a, &b);
  cache.get(parse("F e()"));
  EXPECT_EQ(cache.size(), 2U);
}

TEST(Dot, ListsStatesAndEdges) {
  const SpawningAutomaton sa(mk_until(atom("a"), atom("b")));
  const std::string dot = to_dot(sa);
  EXPECT_EQ(dot.rfind("digraph SA {", 0), 0U);
  std::size_t edges = 0;
  for (StateId q = 0; q < sa.num_states(); ++q) edges += sa.successors(q).size();
  std::size_t arrows = 0;
  for (std::size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 1)) {
    ++arrows;
  }
  EXPECT_EQ(arrows, edges);
  EXPECT_NE(dot.find("q4"), std::string::npos);
  EXPECT_NE(dot.find("F: 0"), std::string::npos);
}
