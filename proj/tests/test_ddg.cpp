#include "graphtropy/ddg.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "graphtropy/rng.hpp"
#include "helpers.hpp"

using namespace gtropy;

using testutil::chain_ddg;
using testutil::generate_planted_trace;
using testutil::PlantedRule;

namespace {

RuleTerm dlink_term(int index, ChangeDirection dir) {
  return RuleTerm{{RuleTargetRef::Kind::dlink, index}, dir};
}
RuleTerm rule_term(int index, ChangeDirection dir) {
  return RuleTerm{{RuleTargetRef::Kind::rule, index}, dir};
}

using RuleKey = std::tuple<int, bool, int, bool, int>;
RuleKey key_of(const MinedRule& r) {
  return {r.ante_channel, r.ante_direction == ChangeDirection::more_distinct,
          r.cons_channel, r.cons_direction == ChangeDirection::more_distinct,
          r.lag};
}
RuleKey key_of(const PlantedRule& r) {
  return {r.ante_channel, r.ante_dir == ChangeDirection::more_distinct,
          r.cons_channel, r.cons_dir == ChangeDirection::more_distinct, r.lag};
}

}  // namespace

TEST(DdgConstruction, Validation) {
  DynamicDistinctionGraph ddg({"x", "y"});
  EXPECT_THROW(ddg.add_dlink(0, 5, 0.5), Error);
  EXPECT_THROW(ddg.add_dlink(0, 1, 1.5), Error);
  ddg.add_dlink(0, 1, 0.5);
  EXPECT_THROW(ddg.add_dlink(0, 1, 0.2), Error);  // duplicate

  CausalRule bad;
  bad.antecedent = dlink_term(7, ChangeDirection::more_distinct);
  bad.consequent = dlink_term(0, ChangeDirection::more_distinct);
  EXPECT_THROW(ddg.add_rule(bad), Error);

  CausalRule forward;
  forward.antecedent = rule_term(0, ChangeDirection::more_distinct);
  forward.consequent = dlink_term(0, ChangeDirection::more_distinct);
  EXPECT_THROW(ddg.add_rule(forward), Error);  // no rule 0 yet
}

TEST(DdgStep, NoRulesIsFixedPoint) {
  DynamicDistinctionGraph ddg = chain_ddg(3, {0.2, 0.5, 0.9});
  DynamicDistinctionGraph next = step(ddg);
  for (int c = 0; c < 3; ++c)
    EXPECT_DOUBLE_EQ(next.distinctness(c), ddg.distinctness(c));
}

TEST(DdgStep, HandTracedRuleFiring) {
  // Rule: (ch0 more distinct) => (ch1 more distinct), alpha 1, lag 1.
  DynamicDistinctionGraph ddg = chain_ddg(2, {0.2, 0.5});
  CausalRule rule;
  rule.antecedent = dlink_term(0, ChangeDirection::more_distinct);
  rule.consequent = dlink_term(1, ChangeDirection::more_distinct);
  rule.multiplier = 1.0;
  rule.lag = 1;
  ddg.add_rule(rule);

  // Step t: channel 0 rises 0.2 -> 0.4 exogenously.
  DynamicDistinctionGraph at_t = step(ddg, {{0, 0.2}}, 1.0);
  EXPECT_DOUBLE_EQ(at_t.distinctness(0), 0.4);
  EXPECT_DOUBLE_EQ(at_t.distinctness(1), 0.5);

  // Step t+1: the rule fires and channel 1 rises 0.5 -> 0.7.
  DynamicDistinctionGraph at_t1 = step(at_t);
  EXPECT_DOUBLE_EQ(at_t1.distinctness(1), 0.7);
  EXPECT_EQ(at_t1.dlinks()[1].trend, Trend::increasing);
}

TEST(DdgStep, HalfMultiplier) {
  DynamicDistinctionGraph ddg = chain_ddg(2, {0.2, 0.5});
  CausalRule rule;
  rule.antecedent = dlink_term(0, ChangeDirection::more_distinct);
  rule.consequent = dlink_term(1, ChangeDirection::more_distinct);
  rule.multiplier = 0.5;
  rule.lag = 1;
  ddg.add_rule(rule);
  DynamicDistinctionGraph result = step(step(ddg, {{0, 0.2}}, 1.0));
  EXPECT_DOUBLE_EQ(result.distinctness(1), 0.6);
}

TEST(DdgStep, ZeroMultiplierIsIdentityOnWeights) {
  DynamicDistinctionGraph ddg = chain_ddg(2, {0.3, 0.6});
  CausalRule rule;
  rule.antecedent = dlink_term(0, ChangeDirection::more_distinct);
  rule.consequent = dlink_term(1, ChangeDirection::more_distinct);
  rule.multiplier = 0.0;
  rule.lag = 1;
  ddg.add_rule(rule);
  DynamicDistinctionGraph result = step(step(ddg, {{0, 0.2}}, 1.0));
  EXPECT_DOUBLE_EQ(result.distinctness(1), 0.6);
}

TEST(DdgStep, WrongDirectionDoesNotFire) {
  DynamicDistinctionGraph ddg = chain_ddg(2, {0.5, 0.5});
  CausalRule rule;
  rule.antecedent = dlink_term(0, ChangeDirection::more_distinct);
  rule.consequent = dlink_term(1, ChangeDirection::more_distinct);
  ddg.add_rule(rule);
  DynamicDistinctionGraph result = step(step(ddg, {{0, -0.2}}, 1.0));
  EXPECT_DOUBLE_EQ(result.distinctness(1), 0.5);
}

TEST(DdgStep, HigherOrderRuleGatesConfidence) {
  // rule 0: ch0 up => ch1 up; rule 1: ch2 up => rule 0's confidence up.
  DynamicDistinctionGraph ddg = chain_ddg(3, {0.5, 0.2, 0.5});
  CausalRule base;
  base.antecedent = dlink_term(0, ChangeDirection::more_distinct);
  base.consequent = dlink_term(1, ChangeDirection::more_distinct);
  base.confidence = 0.5;
  ddg.add_rule(base);
  CausalRule higher;
  higher.antecedent = dlink_term(2, ChangeDirection::more_distinct);
  higher.consequent = rule_term(0, ChangeDirection::more_distinct);
  higher.multiplier = 2.0;
  ddg.add_rule(higher);

  // Pulse ch2 by 0.1: next step rule 1 fires, confidence 0.5 -> 0.7.
  DynamicDistinctionGraph s1 = step(ddg, {{2, 0.1}}, 1.0);
  DynamicDistinctionGraph s2 = step(s1);
  EXPECT_DOUBLE_EQ(s2.rules()[0].confidence, 0.7);

  // Now a 0.1 pulse on ch0 moves ch1 by 0.1 * 0.7 two steps later.
  DynamicDistinctionGraph s3 = step(s2, {{0, 0.1}}, 1.0);
  DynamicDistinctionGraph s4 = step(s3);
  EXPECT_NEAR(s4.distinctness(1), 0.2 + 0.1 * 0.7, 1e-12);
}

TEST(DdgStep, LagTwoFiresTwoStepsLater) {
  DynamicDistinctionGraph ddg = chain_ddg(2, {0.5, 0.5});
  CausalRule rule;
  rule.antecedent = dlink_term(0, ChangeDirection::more_distinct);
  rule.consequent = dlink_term(1, ChangeDirection::less_distinct);
  rule.lag = 2;
  ddg.add_rule(rule);
  DynamicDistinctionGraph s1 = step(ddg, {{0, 0.1}}, 1.0);
  DynamicDistinctionGraph s2 = step(s1);
  EXPECT_DOUBLE_EQ(s2.distinctness(1), 0.5);  // not yet
  DynamicDistinctionGraph s3 = step(s2);
  EXPECT_DOUBLE_EQ(s3.distinctness(1), 0.4);  // lag reached, direction down
}

TEST(DdgStep, DeterministicAndClamped) {
  DynamicDistinctionGraph ddg = chain_ddg(3, {0.5, 0.9, 0.1});
  CausalRule up;
  up.antecedent = dlink_term(0, ChangeDirection::more_distinct);
  up.consequent = dlink_term(1, ChangeDirection::more_distinct);
  up.multiplier = 5.0;
  ddg.add_rule(up);
  CausalRule down;
  down.antecedent = dlink_term(0, ChangeDirection::less_distinct);
  down.consequent = dlink_term(2, ChangeDirection::less_distinct);
  down.multiplier = 5.0;
  down.lag = 2;
  ddg.add_rule(down);

  Rng rng(66);
  DynamicDistinctionGraph a = ddg, b = ddg;
  for (int i = 0; i < 200; ++i) {
    const double pulse = (rng.uniform() - 0.5) * 0.4;
    a = step(a, {{0, pulse}}, 1.0);
    b = step(b, {{0, pulse}}, 1.0);
    for (int c = 0; c < 3; ++c) {
      EXPECT_EQ(a.distinctness(c), b.distinctness(c));
      EXPECT_GE(a.distinctness(c), 0.0);
      EXPECT_LE(a.distinctness(c), 1.0);
    }
  }
}

TEST(NodeComplexity, CountsReachableRulesOnce) {
  // Node n0 has two incident-dlink rules; one is referenced by a
  // higher-order rule: complexity(n0) = 3.
  DynamicDistinctionGraph ddg = chain_ddg(4, {0.5, 0.5, 0.5, 0.5});
  CausalRule r0;  // ch0 (incident to n0) => ch2
  r0.antecedent = dlink_term(0, ChangeDirection::more_distinct);
  r0.consequent = dlink_term(2, ChangeDirection::more_distinct);
  ddg.add_rule(r0);
  CausalRule r1;  // ch3 => ch0 (incident to n0)
  r1.antecedent = dlink_term(3, ChangeDirection::more_distinct);
  r1.consequent = dlink_term(0, ChangeDirection::less_distinct);
  ddg.add_rule(r1);
  CausalRule r2;  // higher-order: ch2 => rule 0
  r2.antecedent = dlink_term(2, ChangeDirection::more_distinct);
  r2.consequent = rule_term(0, ChangeDirection::more_distinct);
  ddg.add_rule(r2);

  EXPECT_EQ(node_complexity(ddg, 0), 3);

  // An isolated node with no incident dlinks has complexity 0.
  DynamicDistinctionGraph isolated({"a", "b", "c"});
  isolated.add_dlink(0, 1, 0.5);
  EXPECT_EQ(node_complexity(isolated, 2), 0);
}

TEST(NodeComplexity, SharedRuleNotDoubleCounted) {
  DynamicDistinctionGraph ddg({"a", "b"});
  ddg.add_dlink(0, 1, 0.5);
  CausalRule r;
  r.antecedent = dlink_term(0, ChangeDirection::more_distinct);
  r.consequent = dlink_term(0, ChangeDirection::less_distinct);
  ddg.add_rule(r);
  EXPECT_EQ(node_complexity(ddg, 0), 1);
  EXPECT_EQ(node_complexity(ddg, 1), 1);
}

TEST(NodeComplexity, MonotoneUnderRuleAddition) {
  DynamicDistinctionGraph ddg = chain_ddg(3, {0.5, 0.5, 0.5});
  CausalRule r0;
  r0.antecedent = dlink_term(0, ChangeDirection::more_distinct);
  r0.consequent = dlink_term(1, ChangeDirection::more_distinct);
  ddg.add_rule(r0);
  const long long before = node_complexity(ddg, 0);
  CausalRule r1;
  r1.antecedent = dlink_term(1, ChangeDirection::more_distinct);
  r1.consequent = rule_term(0, ChangeDirection::more_distinct);
  ddg.add_rule(r1);
  EXPECT_GE(node_complexity(ddg, 0), before);
  EXPECT_EQ(node_complexity(ddg, 0), 2);
}

TEST(ExpandNode, GroupingPrimitive) {
  DynamicDistinctionGraph ddg({"x", "y"});
  ddg.add_dlink(0, 1, 0.3);
  ddg.set_occurrence_count(0, 5);
  CausalRule r;
  r.antecedent = dlink_term(0, ChangeDirection::more_distinct);
  r.consequent = dlink_term(0, ChangeDirection::less_distinct);
  ddg.add_rule(r);

  DynamicDistinctionGraph expanded = expand_node(ddg, 0, 3);
  EXPECT_EQ(expanded.size(), 4);  // 3 copies + y
  // Copies are fully interlinked with p = 1 in both directions.
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != b)
        EXPECT_DOUBLE_EQ(
            expanded.dlinks()[static_cast<size_t>(expanded.dlink_index(a, b))].p, 1.0);
  // Each copy inherits the x->y dlink and the rule.
  EXPECT_EQ(expanded.dlinks().size(), 3u + 6u);
  EXPECT_EQ(expanded.rules().size(), 3u);
  EXPECT_EQ(expanded.occurrence_count(0), 5);
}

TEST(ExpandNode, HigherOrderRulesDuplicateInParallel) {
  DynamicDistinctionGraph ddg({"x", "y", "w"});
  ddg.add_dlink(0, 1, 0.3);  // incident to x: fans out per copy
  ddg.add_dlink(1, 2, 0.4);  // not incident to x: stays single
  CausalRule base;  // x->y drives y->w
  base.antecedent = dlink_term(0, ChangeDirection::more_distinct);
  base.consequent = dlink_term(1, ChangeDirection::more_distinct);
  ddg.add_rule(base);
  CausalRule higher;  // y->w gates the base rule
  higher.antecedent = dlink_term(1, ChangeDirection::less_distinct);
  higher.consequent = rule_term(0, ChangeDirection::less_distinct);
  ddg.add_rule(higher);

  DynamicDistinctionGraph expanded = expand_node(ddg, 0, 2);
  // Base rule duplicates per copy of the x->y dlink; the higher-order rule
  // follows its target in parallel.
  EXPECT_EQ(expanded.rules().size(), 4u);
  int higher_order = 0;
  for (const auto& rule : expanded.rules())
    if (rule.consequent.target.kind == RuleTargetRef::Kind::rule) ++higher_order;
  EXPECT_EQ(higher_order, 2);
  expanded.check_rule_acyclic();
}

TEST(MineRules, ConstantTraceYieldsNothing) {
  ChannelSeries series;
  series.channels = {{"a", "b"}, {"b", "c"}};
  for (int t = 0; t < 50; ++t) series.values.push_back({0.5, 0.5});
  EXPECT_TRUE(mine_rules(series).empty());
}

TEST(MineRules, TraceTooShort) {
  ChannelSeries series;
  series.channels = {{"a", "b"}};
  series.values = {{0.5}, {0.6}, {0.7}};
  MinerConfig config;
  config.max_lag = 3;
  EXPECT_THROW(mine_rules(series, config), Error);
}

TEST(MineRules, SinglePlantedRuleRoundTrip) {
  const std::vector<PlantedRule> planted{
      {0, ChangeDirection::more_distinct, 1, ChangeDirection::more_distinct,
       1.0, 1}};
  ChannelSeries series = generate_planted_trace(4, planted, 200, 77);
  auto mined = mine_rules(series);
  ASSERT_EQ(mined.size(), 1u);
  EXPECT_EQ(key_of(mined[0]), key_of(planted[0]));
  EXPECT_DOUBLE_EQ(mined[0].confidence, 1.0);
  EXPECT_NEAR(mined[0].multiplier, 1.0, 1e-9);
}

TEST(MineRules, TwoIndependentRulesNoSpuriousDiscoveries) {
  const std::vector<PlantedRule> planted{
      {0, ChangeDirection::more_distinct, 1, ChangeDirection::more_distinct,
       0.8, 1},
      {2, ChangeDirection::less_distinct, 3, ChangeDirection::more_distinct,
       1.5, 2}};
  ChannelSeries series = generate_planted_trace(6, planted, 200, 31);
  auto mined = mine_rules(series);
  std::set<RuleKey> mined_keys, planted_keys;
  for (const auto& r : mined) mined_keys.insert(key_of(r));
  for (const auto& r : planted) planted_keys.insert(key_of(r));
  EXPECT_EQ(mined_keys, planted_keys);
  for (const auto& r : mined) {
    const double alpha = r.ante_channel == 0 ? 0.8 : 1.5;
    EXPECT_NEAR(r.multiplier, alpha, 1e-9);
    EXPECT_GE(r.confidence, 0.9);
  }
}

TEST(MineRules, RecoveryAcrossSeeds) {
  const std::vector<PlantedRule> planted{
      {0, ChangeDirection::more_distinct, 1, ChangeDirection::more_distinct,
       1.2, 2},
      {2, ChangeDirection::more_distinct, 3, ChangeDirection::less_distinct,
       0.5, 3},
      {4, ChangeDirection::less_distinct, 5, ChangeDirection::less_distinct,
       1.0, 1}};
  std::set<RuleKey> planted_keys;
  for (const auto& r : planted) planted_keys.insert(key_of(r));
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    ChannelSeries series = generate_planted_trace(8, planted, 200, seed);
    auto mined = mine_rules(series);
    std::set<RuleKey> mined_keys;
    for (const auto& r : mined) mined_keys.insert(key_of(r));
    EXPECT_EQ(mined_keys, planted_keys) << "seed " << seed;
  }
}

TEST(MineRules, FromObservationTrace) {
  // Crisp graphs: the ab pair becomes distinct at t=1 and the bc pair
  // follows one step later, repeatedly.
  DistinctionGraph base = testutil::complete(3);
  std::vector<DistinctionGraph> trace;
  for (int cycle = 0; cycle < 20; ++cycle) {
    DistinctionGraph g0 = base;
    trace.push_back(g0);
    DistinctionGraph g1 = base;
    g1.remove_link(0, 1);
    trace.push_back(g1);
    DistinctionGraph g2 = base;
    g2.remove_link(0, 1);
    g2.remove_link(1, 2);
    trace.push_back(g2);
  }
  ChannelSeries series = channel_series_from_graphs(trace);
  EXPECT_EQ(series.channels.size(), 3u);
  MinerConfig config;
  config.min_confidence = 0.9;
  config.max_lag = 2;
  auto mined = mine_rules(series, config);
  bool found = false;
  for (const auto& r : mined)
    if (series.channels[static_cast<size_t>(r.ante_channel)] ==
            std::make_pair(std::string("a"), std::string("b")) &&
        series.channels[static_cast<size_t>(r.cons_channel)] ==
            std::make_pair(std::string("b"), std::string("c")) &&
        r.ante_direction == ChangeDirection::more_distinct &&
        r.cons_direction == ChangeDirection::more_distinct && r.lag == 1)
      found = true;
  EXPECT_TRUE(found);
}

TEST(DeriveObserver, IdenticalStimuliAreIndistinct) {
  ObserverSpec spec{chain_ddg(2, {0.5, 0.5}), {0, 1}, {}};
  StimulusSequence pulse{{0.1, 0.0}, {0.0, 0.0}, {0.1, 0.0}};
  std::map<std::string, std::vector<StimulusSequence>> categories{
      {"one", {pulse}}, {"two", {pulse}}};
  DistinctionGraph g = derive_observer_graph(spec, categories, 1e-12);
  EXPECT_TRUE(g.linked(0, 1));
}

TEST(DeriveObserver, DisjointSensorsAreDistinct) {
  ObserverSpec spec{chain_ddg(2, {0.5, 0.5}), {0, 1}, {}};
  StimulusSequence hit_first{{0.2, 0.0}, {0.2, 0.0}};
  StimulusSequence hit_second{{0.0, 0.2}, {0.0, 0.2}};
  std::map<std::string, std::vector<StimulusSequence>> categories{
      {"one", {hit_first}}, {"two", {hit_second}}};
  DistinctionGraph strict = derive_observer_graph(spec, categories, 0.05);
  EXPECT_FALSE(strict.linked(0, 1));

  DistinctionGraph loose = derive_observer_graph(
      spec, categories, std::numeric_limits<double>::infinity());
  EXPECT_TRUE(loose.linked(0, 1));
}

TEST(DeriveObserver, Errors) {
  ObserverSpec spec{chain_ddg(2, {0.5, 0.5}), {0}, {}};
  std::map<std::string, std::vector<StimulusSequence>> empty_cat{{"one", {}}};
  EXPECT_THROW(derive_observer_graph(spec, empty_cat, 0.1), Error);
  std::map<std::string, std::vector<StimulusSequence>> ragged{
      {"one", {StimulusSequence{{0.1}}}},
      {"two", {StimulusSequence{{0.1}, {0.2}}}}};
  EXPECT_THROW(derive_observer_graph(spec, ragged, 0.1), Error);
}

TEST(QuantumDdg, HadamardFromLinks) {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<QuantumCausalLink> links{
      {0, 0, {s, 0}}, {0, 1, {s, 0}}, {1, 0, {s, 0}}, {1, 1, {-s, 0}}};
  Eigen::MatrixXcd h = compile_quantum(links, 2);
  Eigen::VectorXcd input(2);
  input << std::complex<double>(1, 0), std::complex<double>(0, 0);
  Eigen::VectorXcd output = apply_quantum(h, input);
  EXPECT_NEAR(std::abs(output(0) - std::complex<double>(s, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(output(1) - std::complex<double>(s, 0)), 0.0, 1e-12);
  EXPECT_NEAR(output.norm(), input.norm(), 1e-12);
  EXPECT_TRUE(is_unitary(h));
}

TEST(QuantumDdg, EmptyLinksGiveZeroMatrix) {
  Eigen::MatrixXcd zero = compile_quantum({}, 3);
  EXPECT_EQ(zero.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_FALSE(is_unitary(zero));
}

TEST(QuantumDdg, DeriveLinksRoundTrip) {
  std::vector<QuantumCausalLink> links{
      {0, 1, {0.5, 0.5}}, {1, 0, {0.0, -1.0}}, {0, 1, {0.25, 0.0}}};
  Eigen::MatrixXcd m = compile_quantum(links, 2);
  auto derived = derive_links(m);
  // Multipliers on the same (source,target) sum in the matrix.
  EXPECT_EQ(compile_quantum(derived, 2), m);
  ASSERT_EQ(derived.size(), 2u);
  EXPECT_EQ(derived[0].multiplier, std::complex<double>(0.75, 0.5));
}

TEST(QuantumDdg, ApplyMatchesNaiveSummation) {
  Rng rng(88);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(4));
    std::vector<QuantumCausalLink> links;
    const int count = 1 + static_cast<int>(rng.below(12));
    for (int i = 0; i < count; ++i)
      links.push_back({static_cast<int>(rng.below(static_cast<uint64_t>(n))),
                       static_cast<int>(rng.below(static_cast<uint64_t>(n))),
                       {rng.gaussian(), rng.gaussian()}});
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i)
      v(i) = std::complex<double>(rng.gaussian(), rng.gaussian());

    Eigen::VectorXcd via_matrix = apply_quantum(compile_quantum(links, n), v);
    Eigen::VectorXcd naive = Eigen::VectorXcd::Zero(n);
    for (const auto& link : links)
      naive(link.target) += link.multiplier * v(link.source);
    EXPECT_NEAR((via_matrix - naive).cwiseAbs().maxCoeff(), 0.0, 1e-12);
  }
}

TEST(QuantumDdg, IndexOutOfRange) {
  EXPECT_THROW(compile_quantum({{0, 5, {1, 0}}}, 2), Error);
  EXPECT_THROW(apply_quantum(Eigen::MatrixXcd::Identity(2, 2),
                             Eigen::VectorXcd::Zero(3)),
               Error);
}
