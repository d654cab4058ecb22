#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "slco/slco.hpp"
#include "golden.hpp"
#include "support.hpp"

using namespace slco;

namespace {

using namespace golden;

const Model& running() {
  static const Model m = test::load_model("running_example.slco");
  return m;
}

std::size_t index_of(const CsGraph& g, const Configuration& c) {
  for (std::size_t i = 0; i < g.configurations.size(); ++i)
    if (same_state(g.configurations[i], c)) return i;
  return g.configurations.size();
}

// ---------------------------------------------------------------------------
// Initial configuration

TEST(InitialConfiguration, MatchesGolden) {
  Configuration c = initial_configuration(running());
  EXPECT_EQ(strip_whitespace(format_configuration(c)), strip_whitespace(kInitialConfiguration));
  EXPECT_TRUE(c.status.initial);
  EXPECT_FALSE(c.status.final);
}

TEST(InitialConfiguration, InitialStateAlsoFinal) {
  Configuration c = initial_configuration(test::load_model("terminal.slco"));
  EXPECT_TRUE(c.status.initial);
  EXPECT_TRUE(c.status.final);
}

TEST(InitialConfiguration, BidirectionalAsyncChannelHasMirroredBuffers) {
  Configuration c = initial_configuration(test::load_model("ping_pong.slco"));
  ASSERT_EQ(c.buffers.size(), 2u);
  EXPECT_EQ(c.buffers[0].key, (BufferKey{"net", "a", "Net", "b", "Net"}));
  EXPECT_EQ(c.buffers[1].key, (BufferKey{"net", "b", "Net", "a", "Net"}));
  EXPECT_TRUE(c.buffers[0].contents.empty());
  EXPECT_TRUE(c.buffers[1].contents.empty());
}

TEST(InitialConfiguration, DeclaredAndDefaultValues) {
  Configuration c = initial_configuration(test::load_model("local_vars.slco"));
  ASSERT_EQ(c.valuation.size(), 4u);
  EXPECT_EQ(c.valuation[0], (ValuationEntry{{"o", ""}, "shared", std::int64_t{-1}}));
  EXPECT_EQ(c.valuation[1], (ValuationEntry{{"o", "Up"}, "x", std::int64_t{1}}));
  EXPECT_EQ(c.valuation[2], (ValuationEntry{{"o", "Up"}, "on", true}));
  EXPECT_EQ(c.valuation[3], (ValuationEntry{{"o", "Down"}, "x", std::int64_t{4}}));
}

// ---------------------------------------------------------------------------
// Expression evaluation

TEST(Evaluate, Examples) {
  Valuation v = {{{"p", ""}, "n", std::int64_t{0}}};
  VarOwner scope{"p", "P"};
  Model m = running();
  const auto& p = m.classes[0].machines[0];
  Expr n_plus_1 = p.transitions[1].effect[0].node.index() == 0
                      ? std::get<Assignment>(p.transitions[1].effect[0].node).value
                      : Expr{};
  EXPECT_EQ(evaluate_expression(n_plus_1, v, {}, scope), Value{std::int64_t{1}});
  v[0].value = std::int64_t{2};
  EXPECT_EQ(evaluate_expression(p.transitions[2].guard, v, {}, scope), Value{true});

  // The binding shadows the stored value of m.
  Valuation vq = {{{"q", ""}, "m", std::int64_t{5}}};
  const Expr& m_lt_2 = m.classes[1].machines[0].transitions[2].guard;
  EXPECT_EQ(evaluate_expression(m_lt_2, vq, {{"m", std::int64_t{1}}}, {"q", "Q"}), Value{true});
  EXPECT_EQ(evaluate_expression(m_lt_2, vq, {}, {"q", "Q"}), Value{false});
}

TEST(Evaluate, OperatorsAgainstDirectComputation) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> d(-50, 50);
  for (int k = 0; k < 200; ++k) {
    std::int64_t a = d(rng), b = d(rng);
    Valuation v = {{{"o", ""}, "a", a}, {{"o", ""}, "b", b}};
    auto ev = [&](BinaryOp op) { return evaluate_expression(binary(op, var("a"), var("b")), v, {}, {"o", ""}); };
    EXPECT_EQ(ev(BinaryOp::add), Value{a + b});
    EXPECT_EQ(ev(BinaryOp::sub), Value{a - b});
    EXPECT_EQ(ev(BinaryOp::mul), Value{a * b});
    EXPECT_EQ(ev(BinaryOp::lt), Value{a < b});
    EXPECT_EQ(ev(BinaryOp::le), Value{a <= b});
    EXPECT_EQ(ev(BinaryOp::gt), Value{a > b});
    EXPECT_EQ(ev(BinaryOp::ge), Value{a >= b});
    EXPECT_EQ(ev(BinaryOp::eq), Value{a == b});
    EXPECT_EQ(ev(BinaryOp::ne), Value{a != b});
  }
  Valuation bools = {{{"o", ""}, "t", true}, {{"o", ""}, "f", false}};
  auto evb = [&](Expr e) { return evaluate_expression(e, bools, {}, {"o", ""}); };
  EXPECT_EQ(evb(binary(BinaryOp::logical_and, var("t"), var("f"))), Value{false});
  EXPECT_EQ(evb(binary(BinaryOp::logical_or, var("t"), var("f"))), Value{true});
  EXPECT_EQ(evb(make_expr(Not{var("f")})), Value{true});
  EXPECT_EQ(evb(binary(BinaryOp::eq, lit(std::string("x")), lit(std::string("x")))), Value{true});
}

TEST(Evaluate, OverflowIsAnExplorationError) {
  Valuation v = {{{"o", ""}, "a", std::numeric_limits<std::int64_t>::max()}};
  try {
    evaluate_expression(binary(BinaryOp::add, var("a"), lit(std::int64_t{1})), v, {}, {"o", ""});
    FAIL() << "no overflow reported";
  } catch (const ExplorationError& e) {
    EXPECT_EQ(e.kind(), ExplorationError::Kind::integer_overflow);
  }
  Model m = test::parse_or_throw(
      "model O { classes C { variables Integer x = 9223372036854775806 state machines S { initial A transitions "
      "T from A to A { effect x := x + 1 } } } objects c:C channels }");
  EXPECT_THROW(explore(m), ExplorationError);
}

// ---------------------------------------------------------------------------
// Single steps

TEST(TakeStepPlain, QueuedVReception) {
  const Model& m = running();
  const auto& receive = m.classes[0].machines[0].transitions[1];
  Successors s = take_step_plain(m, reception_source(), plain_state("p", "P", "State"), receive);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].label, std::optional<std::string>("receiving V()"));
  EXPECT_EQ(s[0].configuration.active_states[0], partial_state("p", "P", "State", 0, 1));
  EXPECT_TRUE(s[0].configuration.buffers[1].contents.empty());
}

TEST(TakeStepPlain, FalseGuardDisables) {
  const Model& m = running();
  const auto& finish = m.classes[0].machines[0].transitions[2];  // guard n >= 2
  EXPECT_TRUE(take_step_plain(m, reception_source(), plain_state("p", "P", "State"), finish).empty());
}

TEST(TakeStepPlain, SingleAssignment) {
  Model m = test::load_model("unbounded_counter.slco");
  Configuration c = initial_configuration(m);
  const auto& tick = m.classes[0].machines[0].transitions[0];
  Successors s = take_step_plain(m, c, c.active_states[0], tick);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_FALSE(s[0].label);
  EXPECT_EQ(s[0].configuration.valuation[0].value, Value{std::int64_t{1}});
  EXPECT_EQ(s[0].configuration.active_states[0], plain_state("c", "Loop", "Run"));
}

TEST(TakeStepPlain, MultiStatementEffectStartsPartial) {
  Model m = test::load_model("protocol_original.slco");
  Configuration c = initial_configuration(m);
  const auto& produce = m.classes[0].machines[0].transitions[0];
  Successors s = take_step_plain(m, c, c.active_states[0], produce);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_FALSE(s[0].label);
  EXPECT_EQ(s[0].configuration.active_states[0], partial_state("prod", "Main", "Start", 1, 0));
  EXPECT_EQ(s[0].configuration.valuation[0].value, Value{std::int64_t{1}});
}

TEST(TakeStepPlain, DelayTrigger) {
  Model m = test::load_model("timer.slco");
  Configuration c = initial_configuration(m);
  const auto& expire = m.classes[0].machines[0].transitions[1];
  Successors s = take_step_plain(m, c, c.active_states[0], expire);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].label, std::optional<std::string>("delay(500)"));
  EXPECT_EQ(s[0].configuration.active_states[0], plain_state("dog", "Main", "Fired"));
}

TEST(TakeStepPartial, QueuedVAssignment) {
  const Model& m = running();
  Configuration c = reception_source();
  c.active_states[0] = partial_state("p", "P", "State", 0, 1);
  c.buffers[1].contents.clear();
  Successors s = take_step_partial(m, c, c.active_states[0], m.classes[0].machines[0].transitions[1]);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_FALSE(s[0].label);
  EXPECT_EQ(s[0].configuration.active_states[0], plain_state("p", "P", "State"));
  EXPECT_EQ(s[0].configuration.valuation[0].value, Value{std::int64_t{1}});
}

TEST(TakeStepPartial, MiddleStatementAdvancesIndex) {
  Model m = test::load_model("protocol_original.slco");
  const auto& produce = m.classes[0].machines[0].transitions[0];
  ASSERT_EQ(produce.effect.size(), 4u);
  Configuration c = initial_configuration(m);
  c.active_states[0] = partial_state("prod", "Main", "Start", 2, 0);
  Successors s = take_step_partial(m, c, c.active_states[0], produce);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].configuration.active_states[0], partial_state("prod", "Main", "Start", 3, 0));
}

TEST(TakeStepPartial, SyncSendWithoutPartnerIsDisabled) {
  // Brute force over q's transitions: none receives on Q1 from State.
  Model m = test::parse_or_throw(R"(model S { classes
    A { ports Out state machines M { initial X final Y transitions
        T from X to Y { effect send Go() to Out send Go() to Out } } }
    B { ports In state machines M { initial X state W transitions
        R from X to W { trigger receive Go() from In } } }
    objects a:A b:B channels c() sync from a.Out to b.In })");
  Configuration c = initial_configuration(m);
  c.active_states[0] = partial_state("a", "M", "X", 1, 0);
  c.active_states[1] = plain_state("b", "M", "W");
  const auto& t = m.classes[0].machines[0].transitions[0];
  bool partner = false;
  for (const auto& bt : m.classes[1].machines[0].transitions)
    if (bt.source == "W" && bt.trigger) partner = true;
  ASSERT_FALSE(partner);
  EXPECT_TRUE(take_step_partial(m, c, c.active_states[0], t).empty());
  c.active_states[1] = plain_state("b", "M", "X");
  EXPECT_EQ(take_step_partial(m, c, c.active_states[0], t).size(), 1u);
}

TEST(TakeStep, LossyChannelBranches) {
  const Model& m = running();
  Configuration c = reception_source();
  c.buffers[1].contents.clear();
  const auto& send = m.classes[1].machines[0].transitions[1];
  Successors s = take_step_plain(m, c, c.active_states[1], send);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].label, std::optional<std::string>("sending V() to Q2"));
  EXPECT_EQ(s[1].label, s[0].label);
  EXPECT_EQ(s[0].configuration.buffers[1].contents.size(), 1u);
  EXPECT_TRUE(s[1].configuration.buffers[1].contents.empty());
  // A full lossy buffer leaves only the loss branch.
  Successors full = take_step_plain(m, reception_source(), c.active_states[1], send);
  ASSERT_EQ(full.size(), 1u);
  EXPECT_EQ(full[0].configuration.buffers[1].contents.size(), 1u);
}

TEST(TakeStep, FullLosslessBufferDisablesSend) {
  Model m = test::load_model("protocol_split.slco");
  Configuration c = initial_configuration(m);
  c.active_states[0] = partial_state("prod", "Main", "Start", 1, 0);
  const auto& t = m.classes[0].machines[0].transitions[0];
  EXPECT_EQ(take_step_partial(m, c, c.active_states[0], t).size(), 1u);
  c.buffers[0].contents.push_back({"Data", {std::int64_t{9}}});
  EXPECT_TRUE(take_step_partial(m, c, c.active_states[0], t).empty());
  EXPECT_EQ(take_step_partial(m, c, c.active_states[0], t, 2).size(), 1u);
}

TEST(TakeStep, MatchArgumentsFilterReceptions) {
  Model m = test::load_model("matching.slco");
  Configuration c = initial_configuration(m);
  const auto& three = m.classes[1].machines[0].transitions[1];
  c.buffers[0].contents = {{"Pair", {std::int64_t{3}, true}}};
  EXPECT_TRUE(take_step_plain(m, c, c.active_states[1], three).empty());
  c.buffers[0].contents = {{"Pair", {std::int64_t{3}, false}}};
  EXPECT_EQ(take_step_plain(m, c, c.active_states[1], three).size(), 1u);
}

TEST(Successors, InitialRunningExampleIsTheRendezvous) {
  const Model& m = running();
  Successors s = successors(m, initial_configuration(m));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].label, std::optional<std::string>("communicating Signal(true) over p1_q1"));
  EXPECT_EQ(s[0].configuration.active_states[0], plain_state("p", "P", "State"));
  EXPECT_EQ(s[0].configuration.active_states[1], plain_state("q", "Q", "State"));
}

TEST(Successors, AllFinalHasNone) {
  const Model& m = running();
  Configuration c = reception_source();
  c.active_states = {plain_state("p", "P", "Final"), plain_state("q", "Q", "Final")};
  EXPECT_TRUE(successors(m, c).empty());
}

TEST(Successors, IncludesQueuedVReception) {
  Successors s = successors(running(), reception_source());
  bool found = false;
  for (const auto& x : s)
    if (x.label == std::optional<std::string>("receiving V()") &&
        x.configuration.active_states[0] == partial_state("p", "P", "State", 0, 1))
      found = true;
  EXPECT_TRUE(found);
}

// ---------------------------------------------------------------------------
// Exploration

TEST(Explore, RunningExampleContainsReceptionSteps) {
  CsGraph g = explore(running());
  Configuration src = reception_source();
  Configuration mid = src;
  mid.active_states[0] = partial_state("p", "P", "State", 0, 1);
  mid.buffers[1].contents.clear();
  Configuration dst = mid;
  dst.active_states[0] = plain_state("p", "P", "State");
  dst.valuation[0].value = std::int64_t{1};
  std::size_t a = index_of(g, src), b = index_of(g, mid), c = index_of(g, dst);
  ASSERT_LT(a, g.configurations.size());
  ASSERT_LT(b, g.configurations.size());
  ASSERT_LT(c, g.configurations.size());
  std::string expected = strip_whitespace(kReceptionSteps);
  std::string found;
  for (const auto& s : g.steps)
    if ((s.source == a && s.target == b) || (s.source == b && s.target == c)) found += format_step(g, s);
  EXPECT_EQ(strip_whitespace(found), expected);
}

TEST(Explore, RunningExampleTerminatesViaStop) {
  // Every final configuration has both machines final with n = 2 and the
  // bound m = 1. Final configurations differ only in a V left in the lossy
  // buffer, and exactly one of them has all buffers empty.
  CsGraph g = explore(running());
  std::size_t finals = 0, drained = 0;
  for (const auto& c : g.configurations) {
    if (!c.status.final) continue;
    ++finals;
    EXPECT_EQ(c.active_states[0], plain_state("p", "P", "Final"));
    EXPECT_EQ(c.active_states[1], plain_state("q", "Q", "Final"));
    EXPECT_EQ(c.valuation[0].value, Value{std::int64_t{2}});
    EXPECT_EQ(c.valuation[1].value, Value{std::int64_t{1}});
    EXPECT_TRUE(c.buffers[0].contents.empty());
    bool empty = c.buffers[1].contents.empty();
    if (empty) ++drained;
    bool has_stop_step = false;
    for (const auto& s : g.steps)
      if (g.configurations[s.target].status.final && s.label == std::optional<std::string>("receiving Stop(1)"))
        has_stop_step = true;
    EXPECT_TRUE(has_stop_step);
  }
  EXPECT_GE(finals, 1u);
  EXPECT_EQ(drained, 1u);
}

TEST(Explore, TerminalModel) {
  CsGraph g = explore(test::load_model("terminal.slco"));
  ASSERT_EQ(g.configurations.size(), 1u);
  EXPECT_TRUE(g.steps.empty());
  EXPECT_TRUE(g.configurations[0].status.initial);
  EXPECT_TRUE(g.configurations[0].status.final);
}

TEST(Explore, UnboundedCounterHitsTheLimit) {
  try {
    explore(test::load_model("unbounded_counter.slco"), {1000, 1});
    FAIL() << "limit not reported";
  } catch (const ExplorationError& e) {
    EXPECT_EQ(e.kind(), ExplorationError::Kind::limit_exceeded);
    EXPECT_GE(e.frontier_size(), 1u);
  }
}

TEST(Explore, RejectsInvalidModels) {
  Model m = test::parse_or_throw("model B { classes C { state machines S { initial A B transitions } } "
                                 "objects c:C channels }");
  EXPECT_THROW(explore(m), std::invalid_argument);
}

TEST(Explore, DeadlockIsNotFinal) {
  CsGraph g = explore(test::load_model("deadlock.slco"));
  std::vector<bool> has_out(g.configurations.size(), false);
  for (const auto& s : g.steps) has_out[s.source] = true;
  std::size_t deadlocks = 0;
  for (std::size_t i = 0; i < g.configurations.size(); ++i)
    if (!has_out[i] && !g.configurations[i].status.final) ++deadlocks;
  EXPECT_EQ(deadlocks, 1u);
}

// ---------------------------------------------------------------------------
// Canonical form

TEST(Canonicalize, InitialGoldenIsCanonical) {
  Configuration c = initial_configuration(running());
  EXPECT_EQ(canonicalize_configuration(running(), c), c);
  Configuration swapped = c;
  std::swap(swapped.valuation[0], swapped.valuation[1]);
  std::swap(swapped.buffers[0], swapped.buffers[1]);
  std::swap(swapped.active_states[0], swapped.active_states[1]);
  EXPECT_EQ(canonicalize_configuration(running(), swapped), c);
}

TEST(Canonicalize, IdempotentOnShuffledConfigurations) {
  std::mt19937 rng(11);
  for (const auto& name : test::corpus()) {
    if (name == "unbounded_counter.slco") continue;
    Model m = test::load_model(name);
    CsGraph g = explore(m);
    for (const auto& c : g.configurations) {
      Configuration s = c;
      std::shuffle(s.active_states.begin(), s.active_states.end(), rng);
      std::shuffle(s.valuation.begin(), s.valuation.end(), rng);
      std::shuffle(s.buffers.begin(), s.buffers.end(), rng);
      Configuration once = canonicalize_configuration(m, s);
      EXPECT_EQ(once, c) << name;
      EXPECT_EQ(canonicalize_configuration(m, once), once) << name;
    }
  }
}

// ---------------------------------------------------------------------------
// Properties over the corpus

class Properties : public ::testing::TestWithParam<std::string> {
 protected:
  void SetUp() override {
    model = test::load_model(GetParam());
    graph = explore(model);
  }
  Model model;
  CsGraph graph;
};

std::vector<std::size_t> changed_instances(const Configuration& a, const Configuration& b) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.active_states.size(); ++i)
    if (a.active_states[i] != b.active_states[i]) out.push_back(i);
  return out;
}

// Instances that may have performed the step; a self-loop with a trigger
// or a single statement leaves every active state unchanged.
std::vector<std::size_t> acting_instances(const Configuration& a, const Configuration& b) {
  auto out = changed_instances(a, b);
  if (out.empty())
    for (std::size_t i = 0; i < a.active_states.size(); ++i) out.push_back(i);
  return out;
}

TEST_P(Properties, Interleaving) {
  for (const auto& s : graph.steps) {
    auto changed = changed_instances(graph.configurations[s.source], graph.configurations[s.target]);
    bool rendezvous = s.label && s.label->rfind("communicating ", 0) == 0;
    if (rendezvous)
      EXPECT_EQ(changed.size(), 2u) << format_step(graph, s);
    else
      EXPECT_LE(changed.size(), 1u) << format_step(graph, s);
  }
}

TEST_P(Properties, Frame) {
  ModelIndex index(model);
  for (const auto& s : graph.steps) {
    const auto& a = graph.configurations[s.source];
    const auto& b = graph.configurations[s.target];
    std::size_t buffers_changed = 0;
    for (std::size_t k = 0; k < a.buffers.size(); ++k) buffers_changed += a.buffers[k] != b.buffers[k];
    EXPECT_LE(buffers_changed, 1u) << format_step(graph, s);
    bool rendezvous = s.label && s.label->rfind("communicating ", 0) == 0;
    if (rendezvous) { EXPECT_EQ(buffers_changed, 0u); }

    // Variables that the activity may write: assignment targets of the
    // statement(s) that can run and variables bound by receptions.
    std::set<std::size_t> writable;
    auto allow_transition = [&](std::size_t i, const Transition& t, std::optional<std::size_t> stmt) {
      const auto& scope = index.instances()[i].scope;
      if (!stmt && t.trigger)
        if (auto r = std::get_if<SignalReception>(&*t.trigger))
          for (const auto& arg : r->args)
            if (auto bv = std::get_if<BindVar>(&arg)) writable.insert(scope.at(bv->name));
      std::size_t k = stmt ? *stmt : 0;
      bool runs_statement = stmt || !t.trigger;
      if (runs_statement && k < t.effect.size())
        if (auto as = std::get_if<Assignment>(&t.effect[k].node)) writable.insert(scope.find(as->target)->second);
    };
    for (std::size_t i : acting_instances(a, b)) {
      const ActiveState& from = a.active_states[i];
      const StateMachine& sm = *index.instances()[i].machine;
      if (from.partial) {
        allow_transition(i, sm.transitions[from.partial->transition_id], from.partial->stmt_index);
      } else {
        for (const auto& t : sm.transitions)
          if (t.source == from.state) allow_transition(i, t, std::nullopt);
      }
    }
    for (std::size_t v = 0; v < a.valuation.size(); ++v)
      if (a.valuation[v] != b.valuation[v]) { EXPECT_TRUE(writable.count(v)) << format_step(graph, s); }
  }
}

TEST_P(Properties, PartialProgress) {
  ModelIndex index(model);
  for (const auto& s : graph.steps) {
    const auto& a = graph.configurations[s.source];
    const auto& b = graph.configurations[s.target];
    for (std::size_t i = 0; i < a.active_states.size(); ++i) {
      const ActiveState& from = a.active_states[i];
      const ActiveState& to = b.active_states[i];
      if (!from.partial || from == to) continue;
      const Transition& t = index.instances()[i].machine->transitions[from.partial->transition_id];
      ActiveState next = partial_state(from.object, from.machine, from.state, from.partial->stmt_index + 1,
                                       from.partial->transition_id);
      EXPECT_TRUE(to == next || to == plain_state(from.object, from.machine, t.target)) << format_step(graph, s);
    }
  }
}

TEST_P(Properties, FinalMarking) {
  ModelIndex index(model);
  for (std::size_t c = 0; c < graph.configurations.size(); ++c) {
    const auto& conf = graph.configurations[c];
    bool all_final = true;
    for (std::size_t i = 0; i < conf.active_states.size(); ++i) {
      const auto& a = conf.active_states[i];
      const auto& finals = index.instances()[i].machine->final_states;
      if (a.partial || std::find(finals.begin(), finals.end(), a.state) == finals.end()) all_final = false;
    }
    EXPECT_EQ(conf.status.final, all_final) << format_configuration(conf);
    EXPECT_EQ(conf.status.initial, c == graph.initial_index);
  }
}

TEST_P(Properties, EveryConfigurationButTheInitialIsReached) {
  std::vector<bool> reached(graph.configurations.size(), false);
  for (const auto& s : graph.steps) reached[s.target] = true;
  for (std::size_t i = 1; i < graph.configurations.size(); ++i) EXPECT_TRUE(reached[i]) << i;
  EXPECT_EQ(graph.initial_index, 0u);
  for (std::size_t i = 0; i < graph.configurations.size(); ++i)
    for (std::size_t j = i + 1; j < graph.configurations.size(); ++j)
      EXPECT_FALSE(same_state(graph.configurations[i], graph.configurations[j]));
}

TEST_P(Properties, Deterministic) {
  EXPECT_EQ(emit_cs(explore(model)), emit_cs(graph));
}

TEST_P(Properties, BuffersBehaveAsFifo) {
  ModelIndex index(model);
  for (const auto& s : graph.steps) {
    const auto& a = graph.configurations[s.source];
    const auto& b = graph.configurations[s.target];
    for (std::size_t k = 0; k < a.buffers.size(); ++k) {
      const auto& before = a.buffers[k].contents;
      const auto& after = b.buffers[k].contents;
      if (before == after) continue;
      bool appended = after.size() == before.size() + 1 && std::equal(before.begin(), before.end(), after.begin());
      bool dequeued = after.size() + 1 == before.size() && std::equal(after.begin(), after.end(), before.begin() + 1);
      EXPECT_TRUE(appended || dequeued) << format_step(graph, s);
      ASSERT_TRUE(s.label);
      if (appended) { EXPECT_EQ(s.label->rfind("sending ", 0), 0u); }
      if (dequeued) {
        std::string sig = s.label->substr(std::string("receiving ").size());
        EXPECT_EQ(detail::format_signal(before.front().signal, before.front().args), sig);
      }
    }
    // A lossless send always reaches its buffer.
    if (s.label && s.label->rfind("sending ", 0) == 0) {
      auto actors = acting_instances(a, b);
      ASSERT_LE(changed_instances(a, b).size(), 1u);
      std::string port = s.label->substr(s.label->rfind(" to ") + 4);
      bool lossless = true;
      for (std::size_t i : actors)
        if (const auto* end = index.port_end(a.active_states[i].object, port))
          lossless = lossless && model.channels[end->channel].kind == ChannelKind::async_lossless;
      if (lossless) { EXPECT_NE(a.buffers, b.buffers) << format_step(graph, s); }
    }
  }
}

std::vector<std::string> bounded() {
  std::vector<std::string> out;
  for (const auto& n : test::corpus())
    if (n != "unbounded_counter.slco") out.push_back(n);
  return out;
}

INSTANTIATE_TEST_SUITE_P(Corpus, Properties, ::testing::ValuesIn(bounded()),
                         [](const auto& info) { return info.param.substr(0, info.param.find('.')); });

}  // namespace
