#pragma once

// Shared builders and brute-force oracles for the test suites. Everything
// here is deliberately independent of the library's computation paths: dit
// counts are re-derived by pair enumeration, automorphism lists by filtering
// all n! permutations, and so on.

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "graphtropy/ddg.hpp"
#include "graphtropy/graph.hpp"
#include "graphtropy/rng.hpp"

namespace testutil {

inline std::vector<std::string> letters(int n) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back(std::string(1, static_cast<char>('a' + i)));
  return ids;
}

inline gtropy::DistinctionGraph path3() {
  return gtropy::DistinctionGraph::create(letters(3),
                                              {{"a", "b"}, {"b", "c"}});
}

inline gtropy::DistinctionGraph complete(int n) {
  return gtropy::DistinctionGraph::complete(letters(n));
}

inline gtropy::DistinctionGraph edgeless(int n) {
  return gtropy::DistinctionGraph::edgeless(letters(n));
}

/// Independent dit-count oracle: literal enumeration of ordered pairs.
inline long long oracle_dit_count(const gtropy::DistinctionGraph& g) {
  long long count = 0;
  for (int u = 0; u < g.size(); ++u)
    for (int v = 0; v < g.size(); ++v)
      if (u != v && !g.linked(u, v)) ++count;
  return count;
}

inline std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return pairs;
}

/// Graph for one edge-subset mask over n labelled nodes.
inline gtropy::DistinctionGraph graph_from_mask(int n, uint64_t mask) {
  auto g = gtropy::DistinctionGraph::edgeless(letters(n));
  auto pairs = all_pairs(n);
  for (size_t b = 0; b < pairs.size(); ++b)
    if ((mask >> b) & 1) g.add_link(pairs[b].first, pairs[b].second);
  return g;
}

inline uint64_t mask_count(int n) {
  return uint64_t{1} << (n * (n - 1) / 2);
}

inline gtropy::DistinctionGraph random_graph(int n, gtropy::Rng& rng,
                                                 double edge_p = 0.5) {
  auto g = gtropy::DistinctionGraph::edgeless(letters(n));
  for (auto [u, v] : all_pairs(n))
    if (rng.bernoulli(edge_p)) g.add_link(u, v);
  return g;
}

/// Planted causal rule over channel indices, used by the mining round trips.
struct PlantedRule {
  int ante_channel;
  gtropy::ChangeDirection ante_dir;
  int cons_channel;
  gtropy::ChangeDirection cons_dir;
  double alpha;
  int lag;
};

/// DDG whose dlinks form a chain n0->n1->...: one mining "channel" per dlink.
inline gtropy::DynamicDistinctionGraph chain_ddg(
    int channels, const std::vector<double>& distinctness) {
  std::vector<std::string> ids;
  for (int i = 0; i <= channels; ++i) ids.push_back("n" + std::to_string(i));
  gtropy::DynamicDistinctionGraph ddg(ids);
  for (int i = 0; i < channels; ++i) {
    ddg.add_dlink(i, i + 1, 1.0);
    ddg.set_distinctness(i, distinctness[static_cast<size_t>(i)]);
  }
  return ddg;
}

/// Noise-free trace generator: antecedent (and bystander) channels receive
/// sparse fixed-magnitude pulses of random sign; consequent channels move
/// only through the planted rules, driven via the public stepper.
inline gtropy::ChannelSeries generate_planted_trace(
    int n_channels, const std::vector<PlantedRule>& rules, int rows,
    uint64_t seed) {
  using gtropy::ChangeDirection;
  std::vector<double> initial(static_cast<size_t>(n_channels), 0.5);
  std::vector<bool> is_consequent(static_cast<size_t>(n_channels), false);
  for (const auto& r : rules) {
    is_consequent[static_cast<size_t>(r.cons_channel)] = true;
    initial[static_cast<size_t>(r.cons_channel)] =
        r.cons_dir == ChangeDirection::more_distinct ? 0.1 : 0.9;
  }
  gtropy::DynamicDistinctionGraph ddg = chain_ddg(n_channels, initial);
  for (const auto& r : rules) {
    gtropy::CausalRule rule;
    rule.antecedent = {{gtropy::RuleTargetRef::Kind::dlink, r.ante_channel},
                       r.ante_dir};
    rule.consequent = {{gtropy::RuleTargetRef::Kind::dlink, r.cons_channel},
                       r.cons_dir};
    rule.multiplier = r.alpha;
    rule.lag = r.lag;
    ddg.add_rule(rule);
  }

  gtropy::Rng rng(seed);
  gtropy::ChannelSeries series;
  for (int c = 0; c < n_channels; ++c)
    series.channels.emplace_back(ddg.node(c), ddg.node(c + 1));
  auto record = [&] {
    std::vector<double> row;
    for (int c = 0; c < n_channels; ++c) row.push_back(ddg.distinctness(c));
    series.values.push_back(std::move(row));
  };
  record();
  const double magnitude = 0.005;
  for (int step_i = 1; step_i < rows; ++step_i) {
    gtropy::ExogenousChanges exo;
    for (int c = 0; c < n_channels; ++c) {
      if (is_consequent[static_cast<size_t>(c)]) continue;
      if (rng.bernoulli(0.35))
        exo.emplace_back(c, rng.bernoulli(0.5) ? magnitude : -magnitude);
    }
    ddg = gtropy::step(ddg, exo, 1.0);
    record();
  }
  return series;
}

/// All-permutations automorphism oracle.
inline std::vector<std::vector<int>> brute_force_automorphisms(
    const gtropy::DistinctionGraph& g) {
  std::vector<int> perm(static_cast<size_t>(g.size()));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> result;
  do {
    bool ok = true;
    for (int u = 0; u < g.size() && ok; ++u)
      for (int v = u + 1; v < g.size() && ok; ++v)
        if (g.linked(u, v) !=
            g.linked(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]))
          ok = false;
    if (ok) result.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

}  // namespace testutil
