#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ltlfo/errors.hpp"
#include "ltlfo/parser.hpp"
#include "ltlfo/trace.hpp"

using namespace ltlfo;

namespace {

const Spec& spec() {
  static const Spec s = parse_spec(
      "sort Int ; sort Str\n"
      "upred sms(Int)\n"
      "upred login(Str, Int)\n"
      "ipred contact(Int) = env_set \"contacts\"\n"
      "policy G (forall x:sms. contact(x))\n");
  return s;
}

Value I(std::int64_t v) { return Value{v}; }

}  // namespace

TEST(ReadTrace, DecodesActionsAndEnvironments) {
  const Event e = parse_event(R"({"actions":[["sms",[1234]]],"env":{"contacts":[[5551]]}})",
                              spec().signature);
  EXPECT_EQ(e.actions, (std::set<Action>{{"sms", {I(1234)}}}));
  EXPECT_EQ(e.env.at("contacts"), (std::set<Tuple>{{I(5551)}}));

  const Event empty = parse_event(R"({"actions":[]})", spec().signature);
  EXPECT_TRUE(empty.actions.empty());
  EXPECT_TRUE(empty.env.empty());
  EXPECT_TRUE(parse_event("{}", spec().signature).actions.empty());

  const Event str = parse_event(R"({"actions":[["login",["ann",3]]]})", spec().signature);
  EXPECT_EQ(str.actions.begin()->values, (Tuple{Value{"ann"}, I(3)}));
}

TEST(ReadTrace, TypedErrors) {
  const auto& sig = spec().signature;
  EXPECT_THROW(parse_event(R"({"actions":[["sms",["abc"]]]})", sig), SortMismatch);
  EXPECT_THROW(parse_event(R"({"actions":[["sms",[1,2]]]})", sig), SortMismatch);
  EXPECT_THROW(parse_event(R"({"actions":[["call",[1]]]})", sig), UnknownPredicate);
  EXPECT_THROW(parse_event(R"({"actions":[],"env":{"nosuch":[]}})", sig), UnknownPredicate);
  EXPECT_THROW(parse_event(R"({"actions":[["sms",[1]]])", sig), TraceParseError);
  EXPECT_THROW(parse_event(R"({"actions":[],"extra":1})", sig), TraceParseError);
  EXPECT_THROW(parse_event(R"([1,2])", sig), TraceParseError);
  EXPECT_THROW(parse_event(R"({"actions":[["sms",[1.5]]]})", sig), SortMismatch);
}

TEST(ReadTrace, ErrorsNameTheLine) {
  std::istringstream in("{\"actions\":[]}\n\n{\"actions\":[[\"sms\",[\"x\"]]]}\n");
  try {
    read_trace(in, spec().signature);
    FAIL() << "expected SortMismatch";
  } catch (const SortMismatch& e) {
    EXPECT_EQ(e.line(), 3U);
  }
}

TEST(ReadTrace, FuzzedLinesNeverCrash) {
  const std::string good = R"({"actions":[["login",["ann",3]],["sms",[7]]],"env":{"contacts":[[1],[2]]}})";
  std::mt19937_64 rng(99);
  for (int i = 0; i < 2000; ++i) {
    std::string line = good;
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < edits; ++k) {
      const std::size_t pos = rng() % line.size();
      switch (rng() % 3) {
        case 0:
          line.erase(pos, 1);
          break;
        case 1:
          line.insert(pos, 1, "[]{},:\"a1-"[rng() % 10]);
          break;
        default:
          line[pos] = "[]{},:\"a1-"[rng() % 10];
      }
    }
    try {
      parse_event(line, spec().signature);
    } catch (const TraceError&) {
    }
  }
}

TEST(WriteTrace, RoundTrip) {
  const GenConfig cfg = default_gen_config(spec().signature);
  const Trace t = gen_trace(spec().signature, 50, 3, cfg);
  std::stringstream ss;
  write_trace(ss, t);
  EXPECT_EQ(read_trace(ss, spec().signature), t);
}

TEST(WriteTrace, CanonicalEncoding) {
  Event e;
  e.actions.insert(Action{"sms", {I(2)}});
  e.actions.insert(Action{"login", {Value{"bo\"b"}, I(-1)}});
  EXPECT_EQ(event_to_json(e), R"({"actions":[["login",["bo\"b",-1]],["sms",[2]]]})");
  e.env["contacts"] = {{I(5)}};
  EXPECT_EQ(event_to_json(e),
            R"({"actions":[["login",["bo\"b",-1]],["sms",[2]]],"env":{"contacts":[[5]]}})");
}

TEST(RequiredEnvs, OnlyExtensionalPredicatesOfTheFormula) {
  EXPECT_EQ(required_envs(spec().policy, spec().signature), std::set<std::string>{"contacts"});
  Trace t{parse_event(R"({"actions":[]})", spec().signature)};
  EXPECT_THROW(check_envs(t, {"contacts"}), TraceError);
  t[0].env["contacts"] = {};
  EXPECT_NO_THROW(check_envs(t, {"contacts"}));
}

TEST(GenTrace, LengthsAndDeterminism) {
  const auto& sig = spec().signature;
  const GenConfig cfg = default_gen_config(sig);
  EXPECT_EQ(gen_trace(sig, 100, 7, cfg).size(), 100U);
  EXPECT_TRUE(gen_trace(sig, 0, 1, cfg).empty());
  std::ostringstream a, b;
  write_trace(a, gen_trace(sig, 40, 42, cfg));
  write_trace(b, gen_trace(sig, 40, 42, cfg));
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream c;
  write_trace(c, gen_trace(sig, 40, 43, cfg));
  EXPECT_NE(a.str(), c.str());
}

TEST(GenTrace, ConfiguredRanges) {
  const auto& sig = spec().signature;
  const GenConfig cfg = parse_gen_config(
      R"({"actions":{"sms":{"count":[0,2],"args":[[1,3]]},"login":{"count":[1,1],"args":[["ann","bo"],[5,5]]}},
          "env":{"contacts":{"fixed":[[1],[2]]}}})",
      sig);
  const Trace t = gen_trace(sig, 200, 42, cfg);
  for (const auto& e : t) {
    std::size_t sms = 0, login = 0;
    for (const auto& a : e.actions) {
      if (a.pred == "sms") {
        ++sms;
        const auto v = std::get<std::int64_t>(a.values[0]);
        EXPECT_GE(v, 1);
        EXPECT_LE(v, 3);
      } else {
        ++login;
        const auto& who = std::get<std::string>(a.values[0]);
        EXPECT_TRUE(who == "ann" || who == "bo");
        EXPECT_EQ(a.values[1], I(5));
      }
    }
    EXPECT_LE(sms, 2U);
    EXPECT_EQ(login, 1U);
    EXPECT_EQ(e.env.at("contacts"), (std::set<Tuple>{{I(1)}, {I(2)}}));
  }
}

TEST(GenTrace, RedrawnEnvironmentsVary) {
  const auto& sig = spec().signature;
  const GenConfig once = parse_gen_config(R"({"env":{"contacts":{"count":[1,3],"args":[[1,9]]}}})", sig);
  const GenConfig each =
      parse_gen_config(R"({"env":{"contacts":{"count":[1,3],"args":[[1,9]],"redraw":true}}})", sig);
  const Trace a = gen_trace(sig, 30, 5, once);
  for (const auto& e : a) EXPECT_EQ(e.env.at("contacts"), a[0].env.at("contacts"));
  const Trace b = gen_trace(sig, 30, 5, each);
  bool varies = false;
  for (const auto& e : b) varies |= e.env.at("contacts") != b[0].env.at("contacts");
  EXPECT_TRUE(varies);
}

TEST(GenTrace, ConfigErrors) {
  const auto& sig = spec().signature;
  EXPECT_ANY_THROW(parse_gen_config("{", sig));
  EXPECT_ANY_THROW(parse_gen_config(R"({"actions":{"nope":{}}})", sig));
  EXPECT_ANY_THROW(parse_gen_config(R"({"actions":{"sms":{"args":[["a","b"]]}}})", sig));
}
