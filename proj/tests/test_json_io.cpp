#include "graphtropy/json_io.hpp"

#include <gtest/gtest.h>

#include <string>

#include "graphtropy/rng.hpp"
#include "helpers.hpp"

using namespace gtropy;

TEST(JsonGraph, ParsesTheSharedFormat) {
  Json doc = Json::parse(R"({
    "nodes": [{"id":"a","weight":null},{"id":"b","weight":null},{"id":"c","weight":null}],
    "links": [{"u":"a","v":"b"},{"u":"b","v":"c"}]
  })");
  EXPECT_EQ(detect_graph_kind(doc), GraphKind::plain);
  DistinctionGraph g = graph_from_json(doc);
  EXPECT_EQ(g.size(), 3);
  EXPECT_EQ(graphtropy(g), Rational(2, 9));
}

TEST(JsonGraph, RoundTripsRandomGraphs) {
  Rng rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(7));
    DistinctionGraph g = testutil::random_graph(n, rng);
    EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
  }
}

TEST(JsonGraph, UnknownFieldRejectedWithPointer) {
  Json doc = Json::parse(
      R"({"nodes":[{"id":"a","weight":null,"wat":1}],"links":[]})");
  try {
    graph_from_json(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::schema_error);
    EXPECT_NE(std::string(e.what()).find("/nodes/0/wat"), std::string::npos);
  }
}

TEST(JsonGraph, BadLinkEndpoints) {
  Json doc = Json::parse(R"({"nodes":[{"id":"a"}],"links":[{"u":"a","v":"zz"}]})");
  try {
    graph_from_json(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::schema_error);
  }
}

TEST(JsonWeighted, DetectedAndParsed) {
  Json doc = Json::parse(R"({
    "nodes": [{"id":"a","weight":2},{"id":"b","weight":3}],
    "links": [{"u":"a","v":"b","d_lo":0.6,"d_hi":0.8}]
  })");
  EXPECT_EQ(detect_graph_kind(doc), GraphKind::weighted);
  WeightedDistinctionGraph wg = weighted_from_json(doc);
  EXPECT_EQ(wg.node_weight(0), 2);
  EXPECT_DOUBLE_EQ(wg.distinctness(0, 1).lo, 0.6);
  EXPECT_DOUBLE_EQ(wg.distinctness(0, 1).hi, 0.8);

  Json out = weighted_to_json(wg);
  WeightedDistinctionGraph reparsed = weighted_from_json(out);
  EXPECT_DOUBLE_EQ(reparsed.distinctness(0, 1).midpoint(), 0.7);
  EXPECT_EQ(reparsed.node_weight(1), 3);
}

TEST(JsonWeighted, IntervalInvariantBecomesSchemaError) {
  Json doc = Json::parse(R"({
    "nodes": [{"id":"a"},{"id":"b"}],
    "links": [{"u":"a","v":"b","d_lo":0.9,"d_hi":0.2}]
  })");
  try {
    weighted_from_json(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::schema_error);
    EXPECT_NE(std::string(e.what()).find("/links/0"), std::string::npos);
  }
}

TEST(JsonDdg, RoundTripWithRulesAndHistory) {
  Json doc = Json::parse(R"({
    "nodes": [{"id":"x","count":3},{"id":"y"},{"id":"z"}],
    "dlinks": [{"from":"x","to":"y","p":0.4,"trend":"steady"},
               {"from":"y","to":"z","p":0.9,"trend":"increasing"}],
    "rules": [{"ante":{"dlink":{"from":"x","to":"y"},"dir":"more"},
               "cons":{"dlink":{"from":"y","to":"z"},"dir":"less"},
               "alpha":0.5,"lag":2,"conf":0.8},
              {"ante":{"dlink":{"from":"y","to":"z"},"dir":"less"},
               "cons":{"rule":0,"dir":"more"},
               "alpha":1.0,"lag":1,"conf":1.0}]
  })");
  EXPECT_EQ(detect_graph_kind(doc), GraphKind::ddg);
  DynamicDistinctionGraph ddg = ddg_from_json(doc);
  EXPECT_EQ(ddg.occurrence_count(0), 3);
  EXPECT_EQ(ddg.dlinks().size(), 2u);
  EXPECT_EQ(ddg.rules().size(), 2u);
  EXPECT_EQ(ddg.rules()[1].consequent.target.kind, RuleTargetRef::Kind::rule);

  // Step it so history exists, then round trip.
  DynamicDistinctionGraph stepped = step(ddg, {{0, 0.1}}, 1.0);
  Json out = ddg_to_json(stepped);
  DynamicDistinctionGraph reparsed = ddg_from_json(out);
  EXPECT_EQ(reparsed.history().size(), stepped.history().size());
  EXPECT_DOUBLE_EQ(reparsed.distinctness(0), stepped.distinctness(0));
  // Behaviour equality: one more step from both must agree bitwise.
  EXPECT_DOUBLE_EQ(step(reparsed).distinctness(1), step(stepped).distinctness(1));
}

TEST(JsonDdg, ForwardRuleReferenceRejected) {
  Json doc = Json::parse(R"({
    "nodes": [{"id":"x"},{"id":"y"}],
    "dlinks": [{"from":"x","to":"y","p":0.5}],
    "rules": [{"ante":{"rule":0,"dir":"more"},
               "cons":{"dlink":{"from":"x","to":"y"},"dir":"more"},
               "alpha":1.0,"lag":1}]
  })");
  try {
    ddg_from_json(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::schema_error);
    EXPECT_NE(std::string(e.what()).find("/rules/0"), std::string::npos);
  }
}

TEST(JsonAnyGraph, KindDispatch) {
  Json plain = Json::parse(R"({"nodes":[{"id":"a"}],"links":[]})");
  EXPECT_TRUE(std::holds_alternative<DistinctionGraph>(any_graph_from_json(plain)));
  Json weighted = Json::parse(
      R"({"nodes":[{"id":"a"},{"id":"b"}],"links":[{"u":"a","v":"b","d_lo":0.1,"d_hi":0.2}]})");
  EXPECT_TRUE(
      std::holds_alternative<WeightedDistinctionGraph>(any_graph_from_json(weighted)));
  Json ddg = Json::parse(R"({"nodes":[{"id":"a"}],"dlinks":[]})");
  EXPECT_TRUE(
      std::holds_alternative<DynamicDistinctionGraph>(any_graph_from_json(ddg)));
}

TEST(JsonFiles, ParseErrorForGarbage) {
  try {
    parse_json_file("/nonexistent/file.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parse_error);
  }
  const std::string path = ::testing::TempDir() + "graphtropy_bad.json";
  {
    std::ofstream out(path);
    out << "{not json";
  }
  try {
    parse_json_file(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parse_error);
  }
}
