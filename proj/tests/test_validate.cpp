#include <gtest/gtest.h>

#include "slco/slco.hpp"
#include "support.hpp"

using namespace slco;

namespace {

Diagnostics errors_of(const std::string& text) {
  Diagnostics out;
  for (const auto& d : validate_model(test::parse_or_throw(text)))
    if (d.severity == Severity::error) out.push_back(d);
  return out;
}

std::string dump(const Diagnostics& ds) {
  std::ostringstream os;
  for (const auto& d : ds) os << d << '\n';
  return os.str();
}

// A two-object template; `$P` and `$Q` are replaced by machine bodies.
std::string pair_model(const std::string& p_body, const std::string& channels,
                       const std::string& q_body = "initial A transitions") {
  return "model T { classes P { variables Integer n Boolean b String s ports P1 P2 state machines S { " + p_body +
         " } } Q { variables Integer m ports Q1 Q2 state machines S { " + q_body +
         " } } objects p:P q:Q channels " + channels + " }";
}

class Corpus : public ::testing::TestWithParam<std::string> {};

TEST_P(Corpus, ValidatesWithoutErrors) {
  auto ds = validate_model(test::load_model(GetParam()));
  EXPECT_FALSE(has_errors(ds)) << dump(ds);
}

INSTANTIATE_TEST_SUITE_P(Models, Corpus, ::testing::ValuesIn(test::corpus()),
                         [](const auto& info) { return info.param.substr(0, info.param.find('.')); });

TEST(Validate, RunningExampleIsClean) {
  EXPECT_TRUE(validate_model(test::load_model("running_example.slco")).empty());
}

TEST(Validate, SignatureMismatchOnArgumentlessChannel) {
  auto ds = errors_of(pair_model("initial A final B transitions T from A to B { effect send V(1) to P2 }",
                                 "c() async lossy from p.P2 to q.Q2"));
  ASSERT_EQ(ds.size(), 1u) << dump(ds);
  EXPECT_NE(ds[0].message.find("signature mismatch"), std::string::npos);
}

TEST(Validate, TwoInitialStates) {
  auto ds = errors_of(pair_model("initial A B transitions", ""));
  ASSERT_EQ(ds.size(), 1u) << dump(ds);
  EXPECT_NE(ds[0].message.find("exactly one initial state"), std::string::npos);
}

TEST(Validate, InitialStateMayAlsoBeFinal) {
  EXPECT_TRUE(errors_of(pair_model("initial A final A transitions", "")).empty());
  EXPECT_EQ(errors_of(pair_model("initial A state A transitions", "")).size(), 1u);
  EXPECT_EQ(errors_of(pair_model("initial A final B B transitions", "")).size(), 1u);
}

TEST(Validate, NameUniqueness) {
  EXPECT_FALSE(errors_of("model T { classes C { state machines S { initial A transitions } } "
                         "C { state machines S { initial A transitions } } objects channels }")
                   .empty());
  EXPECT_FALSE(errors_of("model T { classes C { state machines S { initial A transitions } } "
                         "objects a:C a:C channels }")
                   .empty());
  EXPECT_FALSE(errors_of("model T { classes C { variables Integer x Boolean x state machines S { initial A "
                         "transitions } } objects channels }")
                   .empty());
  EXPECT_FALSE(errors_of("model T { classes C { ports X X state machines S { initial A transitions } } "
                         "objects channels }")
                   .empty());
  EXPECT_FALSE(errors_of(pair_model("initial A transitions T from A to A { } T from A to A { }", "")).empty());
  EXPECT_FALSE(errors_of(pair_model("initial A transitions", "c() sync from p.P1 to q.Q1 c() sync from p.P2 to q.Q2"))
                   .empty());
}

TEST(Validate, UndeclaredClassAndStates) {
  EXPECT_FALSE(errors_of("model T { classes objects a:Nope channels }").empty());
  EXPECT_FALSE(errors_of(pair_model("initial A transitions T from A to Z { }", "")).empty());
  EXPECT_FALSE(errors_of(pair_model("initial A transitions T from Z to A { }", "")).empty());
}

TEST(Validate, ExpressionTyping) {
  EXPECT_FALSE(errors_of(pair_model("initial A transitions T from A to A { guard n + 1 }", "")).empty());
  EXPECT_FALSE(errors_of(pair_model("initial A transitions T from A to A { effect n := b }", "")).empty());
  EXPECT_FALSE(errors_of(pair_model("initial A transitions T from A to A { effect b := n < s }", "")).empty());
  EXPECT_FALSE(errors_of(pair_model("initial A transitions T from A to A { effect b := b and n }", "")).empty());
  EXPECT_FALSE(errors_of(pair_model("initial A transitions T from A to A { effect n := zz }", "")).empty());
  EXPECT_TRUE(errors_of(pair_model("initial A transitions T from A to A { guard s == \"x\" or not b "
                                   "effect n := n * 2 - 1 }",
                                   ""))
                  .empty());
  EXPECT_FALSE(errors_of(pair_model("initial A transitions T from A to A { guard s == 1 }", "")).empty());
}

TEST(Validate, InitialValueType) {
  EXPECT_FALSE(errors_of("model T { classes C { variables Integer x = true state machines S { initial A "
                         "transitions } } objects channels }")
                   .empty());
}

TEST(Validate, ChannelWiring) {
  // Unknown object, unknown port, port attached twice.
  EXPECT_FALSE(errors_of(pair_model("initial A transitions", "c() sync from z.P1 to q.Q1")).empty());
  EXPECT_FALSE(errors_of(pair_model("initial A transitions", "c() sync from p.Nope to q.Q1")).empty());
  EXPECT_FALSE(
      errors_of(pair_model("initial A transitions", "c() sync from p.P1 to q.Q1 d() sync from p.P1 to q.Q2")).empty());
}

TEST(Validate, DirectionOfUnidirectionalChannels) {
  // p is the sending end, so it cannot receive and q cannot send.
  EXPECT_FALSE(errors_of(pair_model("initial A transitions T from A to A { trigger receive V() from P1 }",
                                    "c() sync from p.P1 to q.Q1"))
                   .empty());
  EXPECT_FALSE(errors_of(pair_model("initial A transitions", "c() sync from p.P1 to q.Q1",
                                    "initial A transitions T from A to A { effect send V() to Q1 }"))
                   .empty());
}

TEST(Validate, ReceptionArgumentTypes) {
  EXPECT_FALSE(errors_of(pair_model("initial A transitions T from A to A { effect send V(1) to P1 }",
                                    "c(Integer) sync from p.P1 to q.Q1",
                                    "initial A transitions T from A to A { trigger receive V(true) from Q1 }"))
                   .empty());
  EXPECT_TRUE(errors_of(pair_model("initial A transitions T from A to A { effect send V(1) to P1 }",
                                   "c(Integer) sync from p.P1 to q.Q1",
                                   "initial A transitions T from A to A { trigger receive V(m) from Q1 "
                                   "guard m < 2 }"))
                  .empty());
}

TEST(Validate, MachineVariablesShadowClassVariables) {
  std::string text = "model T { classes C { variables Boolean x state machines S { variables Integer x "
                     "initial A transitions T from A to A { effect x := x + 1 } } } objects c:C channels }";
  EXPECT_TRUE(errors_of(text).empty());
}

TEST(Validate, UnconnectedPortIsOnlyAWarning) {
  auto ds = validate_model(test::parse_or_throw(
      pair_model("initial A final B transitions T from A to B { effect send V() to P1 }", "")));
  EXPECT_FALSE(has_errors(ds)) << dump(ds);
  ASSERT_FALSE(ds.empty());
  EXPECT_EQ(ds[0].severity, Severity::warning);
}

TEST(Validate, DeterministicAndOrderStable) {
  std::string bad = pair_model("initial A B transitions T from A to Z { guard n effect b := 1 }",
                               "c() sync from z.P1 to q.Q1");
  Model m = test::parse_or_throw(bad);
  auto first = validate_model(m);
  ASSERT_GE(first.size(), 4u);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(dump(validate_model(m)), dump(first));
  for (const auto& d : first) {
    EXPECT_GE(d.location.line, 1);
    EXPECT_GE(d.location.column, 1);
    EXPECT_LE(d.location.column, static_cast<int>(bad.size()));
  }
}

}  // namespace
