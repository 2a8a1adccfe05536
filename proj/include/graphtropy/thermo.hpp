#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "graphtropy/automorphism.hpp"
#include "graphtropy/error.hpp"
#include "graphtropy/graph.hpp"
#include "graphtropy/rational.hpp"
#include "graphtropy/weighted.hpp"

namespace gtropy {

/// Microstate entropy: ln(#automorphisms), unnormalized. Boltzmann-style
/// constants are the caller's business.
inline double microstate_entropy(const DistinctionGraph& g,
                                 SearchLimits limits = {}) {
  return std::log(static_cast<double>(automorphism_count(g, limits)));
}

/// For a partition graph the automorphism count factors into permutations
/// within cells and swaps of equal-size cells. Both factors are reported
/// separately so callers can decide whether cell swaps count as microstates.
struct PartitionMicrostates {
  long long within_cells = 1;      // Π n_i!
  long long cell_swaps = 1;        // Π m_s! over cell-size multiplicities
  long long total() const { return within_cells * cell_swaps; }
};

inline PartitionMicrostates partition_microstate_breakdown(
    const PartitionView& partition) {
  PartitionMicrostates out;
  std::map<size_t, long long> size_multiplicity;
  auto factorial = [](long long n) {
    long long f = 1;
    for (long long i = 2; i <= n; ++i) f *= i;
    return f;
  };
  for (const auto& cell : partition.cells) {
    out.within_cells *= factorial(static_cast<long long>(cell.size()));
    ++size_multiplicity[cell.size()];
  }
  for (const auto& [size, count] : size_multiplicity) {
    (void)size;
    out.cell_swaps *= factorial(count);
  }
  return out;
}

/// Automorphisms that additionally map every node onto a node of equal
/// weight.
inline long long weight_preserving_automorphisms(
    const DistinctionGraph& g, const std::vector<long long>& weights,
    SearchLimits limits = {}) {
  if (static_cast<int>(weights.size()) != g.size())
    throw Error(Errc::length_mismatch, "one weight per node required");
  long long preserved = 0;
  for (const auto& perm : automorphisms(g, limits)) {
    bool ok = true;
    for (int v = 0; v < g.size(); ++v)
      if (weights[static_cast<size_t>(v)] !=
          weights[static_cast<size_t>(perm[static_cast<size_t>(v)])]) {
        ok = false;
        break;
      }
    if (ok) ++preserved;
  }
  return preserved;
}

enum class StructuralConstraintKind {
  none,
  partition_graph,   // graph must be disjoint cliques
  max_degree,        // every degree strictly below the bound
  graphtropy_near,   // |h(G) - target| <= tolerance
};

struct WeightingConstraint {
  long long target_sum = 0;  // K
  StructuralConstraintKind kind = StructuralConstraintKind::none;
  long long degree_bound = 0;
  Rational graphtropy_target{0};
  Rational graphtropy_tolerance{0};
};

struct MaxLikelihoodResult {
  std::vector<std::vector<long long>> weightings;  // all tied optima
  long long preserved_count = 0;                   // their common score
};

namespace detail {
inline void check_structural(const DistinctionGraph& g,
                             const WeightingConstraint& c) {
  switch (c.kind) {
    case StructuralConstraintKind::none:
      return;
    case StructuralConstraintKind::partition_graph:
      try {
        as_partition(g);
      } catch (const Error&) {
        throw Error(Errc::infeasible_constraint,
                    "graph is not a partition graph");
      }
      return;
    case StructuralConstraintKind::max_degree:
      for (int v = 0; v < g.size(); ++v)
        if (g.degree(v) >= c.degree_bound)
          throw Error(Errc::infeasible_constraint,
                      "node '" + g.node(v) + "' violates the degree bound");
      return;
    case StructuralConstraintKind::graphtropy_near: {
      Rational diff = graphtropy(g) - c.graphtropy_target;
      if (diff < Rational(0)) diff = -diff;
      if (c.graphtropy_tolerance < diff)
        throw Error(Errc::infeasible_constraint,
                    "graphtropy is outside the required band");
      return;
    }
  }
}
}  // namespace detail

/// Exhaustive maximum-likelihood search: over all weightings drawn
/// from the alphabet with Σ = K (and the declared structural constraint on
/// G), return every weighting maximizing the number of weight-preserving
/// automorphisms. Ties are returned in full, ordered lexicographically in
/// the canonical node order.
inline MaxLikelihoodResult max_likelihood_weighting(
    const DistinctionGraph& g, std::vector<long long> alphabet,
    const WeightingConstraint& constraint, SearchLimits limits = {}) {
  if (alphabet.empty())
    throw Error(Errc::infeasible_constraint, "empty weight alphabet");
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  detail::check_structural(g, constraint);

  const int n = g.size();
  const auto autos = automorphisms(g, limits);
  const long long lo = alphabet.front(), hi = alphabet.back();

  MaxLikelihoodResult result;
  result.preserved_count = -1;
  std::vector<long long> weights(static_cast<size_t>(n), 0);
  long long budget = limits.budget;

  auto score = [&](const std::vector<long long>& w) {
    long long preserved = 0;
    for (const auto& perm : autos) {
      bool ok = true;
      for (int v = 0; v < n; ++v)
        if (w[static_cast<size_t>(v)] !=
            w[static_cast<size_t>(perm[static_cast<size_t>(v)])]) {
          ok = false;
          break;
        }
      if (ok) ++preserved;
    }
    return preserved;
  };

  // Odometer over alphabet^n in lexicographic node order, pruned by the
  // reachable-sum envelope.
  auto recurse = [&](auto&& self, int depth, long long sum) -> void {
    if (--budget < 0)
      throw Error(Errc::search_budget_exceeded,
                  "weighting search exceeded its budget");
    const long long remaining = n - depth;
    if (sum + lo * remaining > constraint.target_sum ||
        sum + hi * remaining < constraint.target_sum)
      return;
    if (depth == n) {
      const long long preserved = score(weights);
      if (preserved > result.preserved_count) {
        result.preserved_count = preserved;
        result.weightings.clear();
      }
      if (preserved == result.preserved_count)
        result.weightings.push_back(weights);
      return;
    }
    for (long long value : alphabet) {
      weights[static_cast<size_t>(depth)] = value;
      self(self, depth + 1, sum + value);
    }
  };
  recurse(recurse, 0, 0);

  if (result.weightings.empty())
    throw Error(Errc::infeasible_constraint,
                "no weighting over the alphabet sums to " +
                    std::to_string(constraint.target_sum));
  return result;
}

struct GibbsResult {
  std::vector<double> probabilities;  // per cell
  double beta = 0.0;
  double mean = 0.0;   // Σ n_i p_i at the returned beta
  bool at_boundary = false;
};

namespace detail {
inline std::vector<double> gibbs_probs(const std::vector<double>& cell_sizes,
                                       const std::vector<long long>& values,
                                       double beta) {
  // Shift exponents by the max to keep the normalizer finite for large |beta|.
  double max_exp = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < values.size(); ++i)
    max_exp = std::max(max_exp, -beta * static_cast<double>(values[i]));
  std::vector<double> p(values.size());
  double z = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    p[i] = cell_sizes[i] *
           std::exp(-beta * static_cast<double>(values[i]) - max_exp);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}
inline double gibbs_mean(const std::vector<double>& p,
                         const std::vector<long long>& values) {
  double m = 0.0;
  for (size_t i = 0; i < p.size(); ++i)
    m += p[i] * static_cast<double>(values[i]);
  return m;
}
}  // namespace detail

/// Gibbs reference distribution for the partition case: p_i(β) ∝ |B_i|e^(-βn_i)
/// solving Σ n_i p_i(β) = K/N by bisection (1e-10 on the mean). K/N at an
/// extreme value returns the degenerate limit with at_boundary set.
inline GibbsResult gibbs_reference(const PartitionView& partition,
                                   const std::vector<long long>& values,
                                   long long target_sum) {
  const size_t k = partition.cells.size();
  if (values.size() != k)
    throw Error(Errc::length_mismatch, "one value per partition cell required");
  if (partition.total_nodes <= 0)
    throw Error(Errc::empty_graph, "empty partition");
  std::vector<double> sizes(k);
  for (size_t i = 0; i < k; ++i)
    sizes[i] = static_cast<double>(partition.cells[i].size());
  const double target = static_cast<double>(target_sum) /
                        static_cast<double>(partition.total_nodes);
  const long long vmin = *std::min_element(values.begin(), values.end());
  const long long vmax = *std::max_element(values.begin(), values.end());
  if (target < static_cast<double>(vmin) || target > static_cast<double>(vmax))
    throw Error(Errc::no_feasible_beta,
                "target mean " + std::to_string(target) + " outside [" +
                    std::to_string(vmin) + ", " + std::to_string(vmax) + "]");

  GibbsResult result;
  auto degenerate = [&](long long extreme, double beta) {
    result.at_boundary = true;
    result.beta = beta;
    result.probabilities.assign(k, 0.0);
    double total = 0.0;
    for (size_t i = 0; i < k; ++i)
      if (values[i] == extreme) total += sizes[i];
    for (size_t i = 0; i < k; ++i)
      if (values[i] == extreme) result.probabilities[i] = sizes[i] / total;
    result.mean = static_cast<double>(extreme);
    return result;
  };
  if (vmin == vmax) {
    result.probabilities = detail::gibbs_probs(sizes, values, 0.0);
    result.mean = static_cast<double>(vmin);
    return result;
  }
  if (target == static_cast<double>(vmin))
    return degenerate(vmin, std::numeric_limits<double>::infinity());
  if (target == static_cast<double>(vmax))
    return degenerate(vmax, -std::numeric_limits<double>::infinity());

  // Mean is strictly decreasing in beta; expand a bracket then bisect.
  double lo = -1.0, hi = 1.0;
  while (detail::gibbs_mean(detail::gibbs_probs(sizes, values, lo), values) <
         target)
    lo *= 2.0;
  while (detail::gibbs_mean(detail::gibbs_probs(sizes, values, hi), values) >
         target)
    hi *= 2.0;
  double beta = 0.0;
  for (int iter = 0; iter < 500; ++iter) {
    beta = 0.5 * (lo + hi);
    const double mean =
        detail::gibbs_mean(detail::gibbs_probs(sizes, values, beta), values);
    if (std::abs(mean - target) <= 1e-10) break;
    (mean > target ? lo : hi) = beta;
  }
  result.beta = beta;
  result.probabilities = detail::gibbs_probs(sizes, values, beta);
  result.mean = detail::gibbs_mean(result.probabilities, values);
  return result;
}

/// Bernoulli KL with the 0·log0 = 0 convention; infinite when q is an
/// endpoint p is not at.
inline double bernoulli_kl(double p, double q) {
  double kl = 0.0;
  if (p > 0.0) {
    if (q == 0.0) return std::numeric_limits<double>::infinity();
    kl += p * std::log(p / q);
  }
  if (p < 1.0) {
    if (q == 1.0) return std::numeric_limits<double>::infinity();
    kl += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  }
  return kl;
}

/// Which permutation set the weighted-automorphism distance averages over.
/// A fully weighted graph has no crisp edges, so "its automorphisms" is
/// ambiguous; the support graph (pairs with μ > 0 as edges) is the closest
/// crisp analogue, with the full symmetric group as the alternative.
enum class WeightedAutoSet { support_graph, symmetric_group };

/// Mean over the chosen automorphism set of the mean per-pair Bernoulli KL
/// between midpoint distinctness and its image under the permutation. Zero
/// exactly when the weights are invariant under every permutation used.
inline double weighted_automorphism_distance(
    const WeightedDistinctionGraph& wg,
    WeightedAutoSet set = WeightedAutoSet::support_graph,
    SearchLimits limits = {}) {
  const int n = wg.size();
  if (n == 0) throw Error(Errc::empty_graph, "empty weighted graph");
  std::vector<std::vector<int>> perms;
  if (set == WeightedAutoSet::support_graph) {
    DistinctionGraph support = DistinctionGraph::edgeless(wg.nodes());
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (wg.distinctness(u, v).midpoint() > 0.0) support.add_link(u, v);
    perms = automorphisms(support, limits);
  } else {
    if (n > limits.max_nodes)
      throw Error(Errc::graph_too_large, "symmetric group too large");
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  const long long pair_count = static_cast<long long>(n) * (n - 1) / 2;
  if (pair_count == 0) return 0.0;
  double total = 0.0;
  for (const auto& perm : perms) {
    double per_pair = 0.0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        per_pair += bernoulli_kl(
            wg.distinctness(u, v).midpoint(),
            wg.distinctness(perm[static_cast<size_t>(u)],
                            perm[static_cast<size_t>(v)])
                .midpoint());
    total += per_pair / static_cast<double>(pair_count);
  }
  return total / static_cast<double>(perms.size());
}

}  // namespace gtropy
