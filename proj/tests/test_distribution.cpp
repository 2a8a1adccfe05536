#include "graphtropy/distribution.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "helpers.hpp"

using namespace gtropy;

namespace {

DistinctionGraph k2_on(const std::vector<std::string>& ids) {
  return DistinctionGraph::create(ids, {{ids[0], ids[1]}});
}
DistinctionGraph e2_on(const std::vector<std::string>& ids) {
  return DistinctionGraph::edgeless(ids);
}

const std::vector<std::string> kXNodes{"a", "b"};
const std::vector<std::string> kYNodes{"c", "d"};

}  // namespace

TEST(GraphDistribution, ValidatesWeights) {
  EXPECT_THROW(GraphDistribution(kXNodes, kYNodes,
                                 {{e2_on(kXNodes), e2_on(kYNodes), 0.5}}),
               Error);
  EXPECT_THROW(GraphDistribution(kXNodes, kYNodes,
                                 {{e2_on(kXNodes), e2_on(kYNodes), -1.0},
                                  {k2_on(kXNodes), e2_on(kYNodes), 2.0}}),
               Error);
}

TEST(EquivalenceClass, SingletonSupport) {
  GraphDistribution d(kXNodes, kYNodes, {{e2_on(kXNodes), e2_on(kYNodes), 1.0}});
  EXPECT_EQ(equivalence_class_size(d, 0), 1);
  EXPECT_DOUBLE_EQ(density(d, 0), 1.0);
  EXPECT_THROW(equivalence_class_size(d, 1), Error);
}

TEST(EquivalenceClass, SharedCompleteProduct) {
  // (K2, K2) and (K2, E2) both produce the complete 4-node product, since a
  // dit-free factor wipes out every product dit.
  GraphDistribution d(kXNodes, kYNodes,
                      {{k2_on(kXNodes), k2_on(kYNodes), 0.5},
                       {k2_on(kXNodes), e2_on(kYNodes), 0.5}});
  EXPECT_EQ(equivalence_class_size(d, 0), 2);
  EXPECT_EQ(equivalence_class_size(d, 1), 2);
  EXPECT_DOUBLE_EQ(density(d, 0), 0.25);
  EXPECT_DOUBLE_EQ(density(d, 1), 0.25);
}

TEST(EquivalenceClass, DistinctProductsAreSingletons) {
  GraphDistribution d(kXNodes, kYNodes,
                      {{e2_on(kXNodes), e2_on(kYNodes), 0.5},
                       {k2_on(kXNodes), e2_on(kYNodes), 0.5}});
  EXPECT_EQ(equivalence_class_size(d, 0), 1);
  EXPECT_EQ(equivalence_class_size(d, 1), 1);
}

TEST(EquivalenceClass, DensityTimesClassSizeRestoresTotalWeight) {
  GraphDistribution d(kXNodes, kYNodes,
                      {{k2_on(kXNodes), k2_on(kYNodes), 0.25},
                       {k2_on(kXNodes), e2_on(kYNodes), 0.25},
                       {e2_on(kXNodes), e2_on(kYNodes), 0.5}});
  double total = 0.0;
  for (int i = 0; i < 3; ++i)
    total += density(d, i) * static_cast<double>(equivalence_class_size(d, i));
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(DistH, ConcentratedDistributions) {
  GraphDistribution all_dits(kXNodes, kYNodes,
                             {{e2_on(kXNodes), e2_on(kYNodes), 1.0}});
  EXPECT_DOUBLE_EQ(dist_h(all_dits, {Side::x, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(dist_h(all_dits, {Side::y, 1, 0}), 1.0);

  GraphDistribution no_dits(kXNodes, kYNodes,
                            {{k2_on(kXNodes), k2_on(kYNodes), 1.0}});
  EXPECT_DOUBLE_EQ(dist_h(no_dits, {Side::x, 0, 1}), 0.0);
  EXPECT_DOUBLE_EQ(dist_mutual(no_dits, {Side::x, 0, 1}, {Side::y, 0, 1}), 0.0);
}

TEST(DistH, InvalidReferencePair) {
  GraphDistribution d(kXNodes, kYNodes, {{e2_on(kXNodes), e2_on(kYNodes), 1.0}});
  EXPECT_THROW(dist_h(d, {Side::x, 0, 0}), Error);
  EXPECT_THROW(dist_h(d, {Side::x, 0, 5}), Error);
  EXPECT_THROW(dist_joint_h(d, {Side::y, 0, 1}, {Side::y, 1, 0}), Error);
}

TEST(DistH, ProductDistributionFactorizes) {
  // Exhaustive over all pairs of 2-node graphs: w(x,y) = w1(x) w2(y).
  const double w1[2] = {0.3, 0.7};  // E2, K2 on the x side
  const double w2[2] = {0.6, 0.4};  // E2, K2 on the y side
  std::vector<GraphDistribution::Entry> support;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      support.push_back({i == 0 ? e2_on(kXNodes) : k2_on(kXNodes),
                         j == 0 ? e2_on(kYNodes) : k2_on(kYNodes),
                         w1[i] * w2[j]});
  GraphDistribution d(kXNodes, kYNodes, support);

  for (auto [ux, vx] : {std::pair{0, 1}, std::pair{1, 0}})
    for (auto [uy, vy] : {std::pair{0, 1}, std::pair{1, 0}}) {
      const ReferencePair rx{Side::x, ux, vx};
      const ReferencePair ry{Side::y, uy, vy};
      const double hx = dist_h(d, rx);
      const double hy = dist_h(d, ry);
      EXPECT_NEAR(dist_joint_h(d, rx, ry), hx * hy, 1e-12);
      EXPECT_NEAR(dist_mutual(d, rx, ry), hx + hy - hx * hy, 1e-12);
    }
}

TEST(DistH, AffineInTheDistribution) {
  GraphDistribution d1(kXNodes, kYNodes,
                       {{e2_on(kXNodes), e2_on(kYNodes), 1.0}});
  GraphDistribution d2(kXNodes, kYNodes,
                       {{k2_on(kXNodes), k2_on(kYNodes), 1.0}});
  const double lambda = 0.25;
  GraphDistribution mixed(kXNodes, kYNodes,
                          {{e2_on(kXNodes), e2_on(kYNodes), lambda},
                           {k2_on(kXNodes), k2_on(kYNodes), 1.0 - lambda}});
  const ReferencePair r{Side::x, 0, 1};
  EXPECT_NEAR(dist_h(mixed, r),
              lambda * dist_h(d1, r) + (1.0 - lambda) * dist_h(d2, r), 1e-12);
}

TEST(DistH, MeanOverReferencePairs) {
  GraphDistribution d(kXNodes, kYNodes,
                      {{e2_on(kXNodes), k2_on(kYNodes), 1.0}});
  EXPECT_DOUBLE_EQ(dist_h_mean(d, Side::x), 1.0);
  EXPECT_DOUBLE_EQ(dist_h_mean(d, Side::y), 0.0);
}

TEST(DistH, MeanNeedsTwoNodes) {
  const std::vector<std::string> one{"a"};
  GraphDistribution d(one, kYNodes,
                      {{DistinctionGraph::edgeless(one), e2_on(kYNodes), 1.0}});
  try {
    dist_h_mean(d, Side::x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_reference_pair);
  }
}
