#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "graphtropy/error.hpp"
#include "graphtropy/graph.hpp"

namespace gtropy {

/// Which side of the product a reference pair lives on.
enum class Side { x, y };

/// Ordered node pair within one side's node set; the "did (a,a1) come out
/// distinct" event that distribution-level graphtropy asks about.
struct ReferencePair {
  Side side = Side::x;
  int u = 0;
  int v = 0;
};

/// Finite distribution over pairs of graphs on fixed node sets (U_x, U_y):
/// w(x,y) is the probability that a random draw is the product x ⊗ y.
class GraphDistribution {
 public:
  struct Entry {
    DistinctionGraph x;
    DistinctionGraph y;
    double weight = 0.0;
  };

  GraphDistribution(std::vector<std::string> x_nodes,
                    std::vector<std::string> y_nodes,
                    std::vector<Entry> support)
      : x_nodes_(std::move(x_nodes)),
        y_nodes_(std::move(y_nodes)),
        support_(std::move(support)) {
    double total = 0.0;
    for (const auto& e : support_) {
      if (e.x.nodes() != x_nodes_ || e.y.nodes() != y_nodes_)
        throw Error(Errc::node_set_mismatch,
                    "support entry is not on the declared node sets");
      if (e.weight < 0.0)
        throw Error(Errc::bad_distribution, "negative weight in support");
      total += e.weight;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw Error(Errc::bad_distribution,
                  "support weights sum to " + std::to_string(total));
  }

  const std::vector<Entry>& support() const { return support_; }
  const std::vector<std::string>& x_nodes() const { return x_nodes_; }
  const std::vector<std::string>& y_nodes() const { return y_nodes_; }

 private:
  std::vector<std::string> x_nodes_;
  std::vector<std::string> y_nodes_;
  std::vector<Entry> support_;
};

/// n(x,y): support entries whose co-normal product is the same labeled graph
/// as x ⊗ y, counting (x,y) itself — so always >= 1 and the density below is
/// well defined even for singleton classes.
inline long long equivalence_class_size(const GraphDistribution& d, int entry) {
  const auto& support = d.support();
  if (entry < 0 || entry >= static_cast<int>(support.size()))
    throw Error(Errc::not_in_support, "entry index out of support");
  const DistinctionGraph product =
      conormal_product(support[static_cast<size_t>(entry)].x,
                       support[static_cast<size_t>(entry)].y);
  long long count = 0;
  for (const auto& e : support)
    if (conormal_product(e.x, e.y) == product) ++count;
  return count;
}

/// p(x,y) = w(x,y) / n(x,y).
inline double density(const GraphDistribution& d, int entry) {
  const auto& support = d.support();
  if (entry < 0 || entry >= static_cast<int>(support.size()))
    throw Error(Errc::not_in_support, "entry index out of support");
  return support[static_cast<size_t>(entry)].weight /
         static_cast<double>(equivalence_class_size(d, entry));
}

namespace detail {
inline void validate_reference(const GraphDistribution& d,
                               const ReferencePair& r) {
  const int n = static_cast<int>(
      (r.side == Side::x ? d.x_nodes() : d.y_nodes()).size());
  if (r.u < 0 || r.v < 0 || r.u >= n || r.v >= n || r.u == r.v)
    throw Error(Errc::invalid_reference_pair,
                "reference pair indices invalid for the declared node set");
}
inline bool is_dit_of(const DistinctionGraph& g, int u, int v) {
  return u != v && !g.linked(u, v);
}
}  // namespace detail

/// Probability that the reference pair comes out as a dit of its side's
/// graph under a random draw from the distribution.
inline double dist_h(const GraphDistribution& d, const ReferencePair& r) {
  detail::validate_reference(d, r);
  double total = 0.0;
  for (const auto& e : d.support()) {
    const DistinctionGraph& g = r.side == Side::x ? e.x : e.y;
    if (detail::is_dit_of(g, r.u, r.v)) total += e.weight;
  }
  return total;
}

/// Probability that rx is a dit of x AND ry is a dit of y simultaneously.
inline double dist_joint_h(const GraphDistribution& d, const ReferencePair& rx,
                           const ReferencePair& ry) {
  if (rx.side != Side::x || ry.side != Side::y)
    throw Error(Errc::invalid_reference_pair,
                "joint h takes an x-side and a y-side reference pair");
  detail::validate_reference(d, rx);
  detail::validate_reference(d, ry);
  double total = 0.0;
  for (const auto& e : d.support())
    if (detail::is_dit_of(e.x, rx.u, rx.v) && detail::is_dit_of(e.y, ry.u, ry.v))
      total += e.weight;
  return total;
}

/// m = h(x) + h(y) - h(x,y); zero when the sides are drawn independently.
inline double dist_mutual(const GraphDistribution& d, const ReferencePair& rx,
                          const ReferencePair& ry) {
  return dist_h(d, rx) + dist_h(d, ry) - dist_joint_h(d, rx, ry);
}

/// Convenience variant: dist_h averaged over every ordered reference pair of
/// the side. For exchangeable distributions this equals the expected
/// graphtropy of that side.
inline double dist_h_mean(const GraphDistribution& d, Side side) {
  const int n = static_cast<int>(
      (side == Side::x ? d.x_nodes() : d.y_nodes()).size());
  if (n < 2)
    throw Error(Errc::invalid_reference_pair,
                "side needs at least two nodes for a reference pair");
  double total = 0.0;
  int count = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      total += dist_h(d, {side, u, v});
      ++count;
    }
  return total / count;
}

}  // namespace gtropy
