#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphtropy/error.hpp"
#include "graphtropy/graph.hpp"
#include "graphtropy/interval.hpp"

namespace gtropy {

/// Tolerances for an ε-automorphism check.
struct EpsilonParams {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps3 = 0.0;

  EpsilonParams() = default;
  EpsilonParams(double e1, double e2, double e3) : eps1(e1), eps2(e2), eps3(e3) {
    if (e1 < 0 || e2 < 0 || e3 < 0)
      throw Error(Errc::invalid_pair, "epsilon parameters must be nonnegative");
  }
};

/// Distinction graph with interval-probability DISTINCTNESS weights per pair
/// and optional integer node weights. Note the inversion relative to the
/// crisp graphs: here d(u,v) is the probability the observer distinguishes
/// u from v, so a crisp link corresponds to d = [0,0] and an absent pair
/// defaults to d = [1,1] (fully distinct). Diagonal distinctness is 0 and is
/// never stored.
class WeightedDistinctionGraph {
 public:
  WeightedDistinctionGraph() = default;

  explicit WeightedDistinctionGraph(std::vector<std::string> node_ids)
      : skeleton_(DistinctionGraph::edgeless(std::move(node_ids))) {}

  /// Crisp graph lift: link -> d=[0,0], non-link -> d=[1,1] (left implicit).
  static WeightedDistinctionGraph from_unweighted(const DistinctionGraph& g) {
    WeightedDistinctionGraph w(g.nodes());
    for (int u = 0; u < g.size(); ++u)
      for (int v = u + 1; v < g.size(); ++v)
        if (g.linked(u, v)) w.set_distinctness(u, v, IntervalWeight::point(0));
    return w;
  }

  int size() const { return skeleton_.size(); }
  const std::vector<std::string>& nodes() const { return skeleton_.nodes(); }
  const std::string& node(int i) const { return skeleton_.node(i); }
  int require_index(const std::string& id) const {
    return skeleton_.require_index(id);
  }

  void set_distinctness(int u, int v, IntervalWeight d) {
    check_pair(u, v);
    pairs_[key(u, v)] = d;
  }

  /// d(u,v); missing pairs default to fully distinct, the diagonal to 0.
  IntervalWeight distinctness(int u, int v) const {
    if (u == v) return IntervalWeight::point(0);
    check_pair(u, v);
    auto it = pairs_.find(key(u, v));
    return it == pairs_.end() ? IntervalWeight::point(1) : it->second;
  }

  bool has_explicit_pair(int u, int v) const {
    return u != v && pairs_.count(key(u, v)) > 0;
  }
  const std::map<std::pair<int, int>, IntervalWeight>& explicit_pairs() const {
    return pairs_;
  }

  void set_node_weight(int u, long long w) {
    if (u < 0 || u >= size())
      throw Error(Errc::index_out_of_range, "node index out of range");
    if (node_weights_.empty()) node_weights_.assign(size(), std::nullopt);
    node_weights_[static_cast<size_t>(u)] = w;
  }

  bool has_node_weights() const {
    if (node_weights_.empty()) return false;
    for (const auto& w : node_weights_)
      if (!w) return false;
    return true;
  }

  long long node_weight(int u) const {
    if (node_weights_.empty() || !node_weights_[static_cast<size_t>(u)])
      throw Error(Errc::missing_node_weights,
                  "node '" + node(u) + "' has no weight");
    return *node_weights_[static_cast<size_t>(u)];
  }

  std::optional<long long> node_weight_opt(int u) const {
    if (node_weights_.empty()) return std::nullopt;
    return node_weights_[static_cast<size_t>(u)];
  }

  /// Crisp projection, defined only when every stored pair is degenerate
  /// ([0,0] or [1,1]).
  DistinctionGraph to_unweighted() const {
    DistinctionGraph g = DistinctionGraph::edgeless(nodes());
    for (const auto& [pq, d] : pairs_) {
      if (d == IntervalWeight::point(0))
        g.add_link(pq.first, pq.second);
      else if (!(d == IntervalWeight::point(1)))
        throw Error(Errc::invalid_pair,
                    "pair (" + node(pq.first) + "," + node(pq.second) +
                        ") has a non-degenerate interval");
    }
    return g;
  }

 private:
  static std::pair<int, int> key(int u, int v) {
    return u < v ? std::pair{u, v} : std::pair{v, u};
  }
  void check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= size() || v >= size())
      throw Error(Errc::index_out_of_range, "pair index out of range");
    if (u == v)
      throw Error(Errc::self_link, "self-pair on node '" + node(u) + "'");
  }

  DistinctionGraph skeleton_;
  std::map<std::pair<int, int>, IntervalWeight> pairs_;
  std::vector<std::optional<long long>> node_weights_;
};

/// Mean pairwise distinctness as an interval, normalized by N^2 (diagonal
/// included in the denominator with distinctness 0) so the crisp case
/// reproduces |dit|/N^2 exactly.
inline IntervalWeight weighted_graphtropy(const WeightedDistinctionGraph& wg) {
  const long long n = wg.size();
  if (n == 0) throw Error(Errc::empty_graph, "weighted graphtropy of empty graph");
  // Off-diagonal ordered pairs default to [1,1]; subtract what the explicit
  // pairs change, rather than walking all N^2 pairs.
  double lo = static_cast<double>(n * n - n);
  double hi = lo;
  for (const auto& [pq, d] : wg.explicit_pairs()) {
    (void)pq;
    lo += 2.0 * (d.lo - 1.0);
    hi += 2.0 * (d.hi - 1.0);
  }
  const double denom = static_cast<double>(n) * static_cast<double>(n);
  lo /= denom;
  hi /= denom;
  // Guard the [0,1] invariant against float round-off at the boundaries.
  lo = std::min(std::max(lo, 0.0), 1.0);
  hi = std::min(std::max(hi, lo), 1.0);
  return {lo, hi};
}

/// Strict interval refinement between two weighted dits on the same pair.
inline bool edge_refines(const std::pair<int, int>& pair1,
                         const IntervalWeight& w1,
                         const std::pair<int, int>& pair2,
                         const IntervalWeight& w2) {
  auto norm = [](std::pair<int, int> p) {
    return p.first < p.second ? p : std::pair{p.second, p.first};
  };
  if (norm(pair1) != norm(pair2))
    throw Error(Errc::pair_mismatch, "refinement compares different pairs");
  return strictly_refines(w1, w2);
}

/// The three fuzzy-automorphism inequalities, checked for every node and
/// every unordered node pair:
///   |w_a - w_Φ(a)| < ε1
///   1 - ε2 < μ_ab / μ_Φ(a)Φ(b) < 1 + ε2
///   μ_ab · μ_Φ(a)Φ(b) · (|w_a - w_Φ(a)| + |w_b - w_Φ(b)|) < ε3
/// where μ is the interval midpoint. A zero image-μ with nonzero μ_ab makes
/// the ratio test impossible and is reported as DivisionByZeroMu; when both
/// midpoints are zero the ratio is taken as 1 (the identity permutation must
/// pass for any positive tolerances).
inline bool epsilon_automorphism_check(const WeightedDistinctionGraph& wg,
                                       const std::vector<int>& perm,
                                       const EpsilonParams& eps) {
  const int n = wg.size();
  if (static_cast<int>(perm.size()) != n)
    throw Error(Errc::length_mismatch, "permutation size mismatch");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
      throw Error(Errc::invalid_pair, "not a permutation of the node set");
    seen[static_cast<size_t>(v)] = true;
  }
  if (!wg.has_node_weights())
    throw Error(Errc::missing_node_weights,
                "epsilon-automorphism check requires node weights");

  for (int a = 0; a < n; ++a)
    if (std::abs(static_cast<double>(wg.node_weight(a) -
                                     wg.node_weight(perm[a]))) >= eps.eps1)
      return false;

  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double mu = wg.distinctness(a, b).midpoint();
      const double mu_img = wg.distinctness(perm[a], perm[b]).midpoint();
      double ratio;
      if (mu_img == 0.0) {
        if (mu == 0.0) {
          ratio = 1.0;
        } else {
          throw Error(Errc::division_by_zero_mu,
                      "image pair (" + wg.node(perm[a]) + "," +
                          wg.node(perm[b]) + ") has zero mean distinctness");
        }
      } else {
        ratio = mu / mu_img;
      }
      if (!(1.0 - eps.eps2 < ratio && ratio < 1.0 + eps.eps2)) return false;
      const double dwa = std::abs(
          static_cast<double>(wg.node_weight(a) - wg.node_weight(perm[a])));
      const double dwb = std::abs(
          static_cast<double>(wg.node_weight(b) - wg.node_weight(perm[b])));
      if (mu * mu_img * (dwa + dwb) >= eps.eps3) return false;
    }
  }
  return true;
}

}  // namespace gtropy
