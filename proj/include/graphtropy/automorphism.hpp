#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "graphtropy/error.hpp"
#include "graphtropy/graph.hpp"

namespace gtropy {

/// Limits for the exhaustive searches. Budgets are explicit: exceeding one
/// is an error, never a silent sample.
struct SearchLimits {
  int max_nodes = 16;
  long long budget = 10'000'000;  // candidate-extension checks
};

namespace detail {

/// Iterated degree refinement (1-WL colouring). Any automorphism preserves
/// the resulting colour classes, so backtracking only tries images inside a
/// node's own class.
inline std::vector<int> refine_colors(const DistinctionGraph& g) {
  const int n = g.size();
  std::vector<int> color(static_cast<size_t>(n), 0);
  for (int round = 0; round < n; ++round) {
    std::map<std::pair<int, std::vector<int>>, std::vector<int>> buckets;
    for (int v = 0; v < n; ++v) {
      std::vector<int> neighbor_colors;
      for (int u = 0; u < n; ++u)
        if (g.linked(v, u)) neighbor_colors.push_back(color[u]);
      std::sort(neighbor_colors.begin(), neighbor_colors.end());
      buckets[{color[v], std::move(neighbor_colors)}].push_back(v);
    }
    std::vector<int> next(static_cast<size_t>(n), 0);
    int c = 0;
    for (const auto& [sig, members] : buckets) {
      for (int v : members) next[static_cast<size_t>(v)] = c;
      ++c;
    }
    if (next == color) break;
    color = std::move(next);
  }
  return color;
}

struct AutoSearch {
  const DistinctionGraph& g;
  int n;
  std::vector<int> color;
  std::vector<int> order;       // vertices in mapping order
  std::vector<int> image;       // image[v], -1 while unmapped
  std::vector<bool> used;       // image already taken
  std::vector<std::vector<int>>* out;  // nullptr => count only
  long long count = 0;
  long long budget;

  AutoSearch(const DistinctionGraph& graph, long long budget_limit,
             std::vector<std::vector<int>>* collect)
      : g(graph),
        n(graph.size()),
        color(refine_colors(graph)),
        image(static_cast<size_t>(graph.size()), -1),
        used(static_cast<size_t>(graph.size()), false),
        out(collect),
        budget(budget_limit) {
    // Map small colour classes first: fewer candidates near the root.
    std::vector<int> class_size(static_cast<size_t>(n), 0);
    for (int c : color) ++class_size[static_cast<size_t>(c)];
    order.resize(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return class_size[static_cast<size_t>(color[a])] <
             class_size[static_cast<size_t>(color[b])];
    });
  }

  void run() { extend(0); }

  void extend(int depth) {
    if (depth == n) {
      ++count;
      if (out) out->push_back(image);
      return;
    }
    const int v = order[static_cast<size_t>(depth)];
    for (int w = 0; w < n; ++w) {
      if (used[static_cast<size_t>(w)] || color[w] != color[v]) continue;
      if (--budget < 0)
        throw Error(Errc::search_budget_exceeded,
                    "automorphism enumeration exceeded its budget");
      bool consistent = true;
      for (int d = 0; d < depth; ++d) {
        const int u = order[static_cast<size_t>(d)];
        if (g.linked(v, u) != g.linked(w, image[static_cast<size_t>(u)])) {
          consistent = false;
          break;
        }
      }
      if (!consistent) continue;
      image[static_cast<size_t>(v)] = w;
      used[static_cast<size_t>(w)] = true;
      extend(depth + 1);
      used[static_cast<size_t>(w)] = false;
      image[static_cast<size_t>(v)] = -1;
    }
  }
};

}  // namespace detail

/// Complete list of link-preserving permutations, sorted lexicographically.
/// perm[i] is the image of node i; the count doubles as the microstate count.
inline std::vector<std::vector<int>> automorphisms(const DistinctionGraph& g,
                                                   SearchLimits limits = {}) {
  if (g.size() > limits.max_nodes)
    throw Error(Errc::graph_too_large,
                "graph has " + std::to_string(g.size()) +
                    " nodes, limit is " + std::to_string(limits.max_nodes));
  std::vector<std::vector<int>> result;
  detail::AutoSearch search(g, limits.budget, &result);
  search.run();
  std::sort(result.begin(), result.end());
  return result;
}

inline long long automorphism_count(const DistinctionGraph& g,
                                    SearchLimits limits = {}) {
  if (g.size() > limits.max_nodes)
    throw Error(Errc::graph_too_large,
                "graph has " + std::to_string(g.size()) +
                    " nodes, limit is " + std::to_string(limits.max_nodes));
  detail::AutoSearch search(g, limits.budget, nullptr);
  search.run();
  return search.count;
}

inline bool is_automorphism(const DistinctionGraph& g,
                            const std::vector<int>& perm) {
  const int n = g.size();
  if (static_cast<int>(perm.size()) != n) return false;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (g.linked(u, v) != g.linked(perm[u], perm[v])) return false;
  return true;
}

}  // namespace gtropy
