#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "graphtropy/error.hpp"
#include "graphtropy/graph.hpp"
#include "graphtropy/rational.hpp"
#include "graphtropy/rng.hpp"
#include "graphtropy/weighted.hpp"

namespace gtropy {

/// Time series of distinction graphs on a shared ordered node set.
using ObservationTrace = std::vector<DistinctionGraph>;

/// Running join of historical distinction graphs: a pair stays linked only
/// while EVERY observation so far has linked it, i.e. the memory's dit set
/// is the union of all historical dit sets.
class MemoryGraph {
 public:
  explicit MemoryGraph(const DistinctionGraph& first) : graph_(first) {}

  /// Memory that has seen nothing: everything indistinct.
  static MemoryGraph blank(const std::vector<std::string>& node_ids) {
    return MemoryGraph(DistinctionGraph::complete(node_ids));
  }

  void observe(const DistinctionGraph& g) { graph_.intersect_links_with(g); }

  /// Restore the link on a remembered dit (forgetting).
  void forget_pair(int u, int v) { graph_.add_link(u, v); }

  const DistinctionGraph& graph() const { return graph_; }
  Rational graphtropy_now() const { return graphtropy(graph_); }

 private:
  DistinctionGraph graph_;
};

inline MemoryGraph memory_join(const ObservationTrace& trace) {
  if (trace.empty()) throw Error(Errc::empty_trace, "no observations to join");
  MemoryGraph memory(trace.front());
  for (size_t t = 1; t < trace.size(); ++t) memory.observe(trace[t]);
  return memory;
}

/// One recorded step of a memory simulation.
struct TrajectoryPoint {
  int step = 0;
  Rational memory_graphtropy{0};
  bool decreased = false;  // strict decrease vs the previous step
};

struct SecondLawRun {
  std::vector<TrajectoryPoint> trajectory;
  std::vector<int> violation_steps;  // steps with a strict decrease
};

namespace detail {
inline std::vector<std::string> numbered_nodes(int n) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
  return ids;
}
}  // namespace detail

/// Second-Law simulation: a world graph starts complete and each unordered
/// pair toggles its link with probability flip_p per step; the observer
/// joins every observation into memory and the memory graphtropy is
/// recorded. forget_p > 0 additionally drops each remembered dit (restores
/// its link) with that probability before observing, which is what lets the
/// trajectory decrease.
inline SecondLawRun run_second_law_sim(int n_nodes, int n_steps, double flip_p,
                                       uint64_t seed, double forget_p = 0.0) {
  if (n_nodes <= 0 || n_steps <= 0)
    throw Error(Errc::invalid_pair, "node and step counts must be positive");
  if (flip_p < 0.0 || flip_p > 1.0 || forget_p < 0.0 || forget_p > 1.0)
    throw Error(Errc::invalid_pair, "probabilities must lie in [0,1]");

  Rng rng(seed);
  DistinctionGraph world = DistinctionGraph::complete(detail::numbered_nodes(n_nodes));
  MemoryGraph memory(world);
  Rational previous = memory.graphtropy_now();

  SecondLawRun run;
  run.trajectory.reserve(static_cast<size_t>(n_steps));
  for (int step = 1; step <= n_steps; ++step) {
    for (int u = 0; u < n_nodes; ++u)
      for (int v = u + 1; v < n_nodes; ++v)
        if (rng.bernoulli(flip_p)) {
          if (world.linked(u, v))
            world.remove_link(u, v);
          else
            world.add_link(u, v);
        }
    if (forget_p > 0.0) {
      for (int u = 0; u < n_nodes; ++u)
        for (int v = u + 1; v < n_nodes; ++v)
          if (!memory.graph().linked(u, v) && rng.bernoulli(forget_p))
            memory.forget_pair(u, v);
    }
    memory.observe(world);
    const Rational h = memory.graphtropy_now();
    TrajectoryPoint point{step, h, h < previous};
    if (point.decreased) run.violation_steps.push_back(step);
    run.trajectory.push_back(point);
    previous = h;
  }
  return run;
}

inline SecondLawRun run_forgetting_sim(int n_nodes, int n_steps, double flip_p,
                                       double forget_p, uint64_t seed) {
  return run_second_law_sim(n_nodes, n_steps, flip_p, seed, forget_p);
}

enum class PairObservation { distinct, same };

struct MemoryUpdateParams {
  double delta_distinct = 0.0;
  double delta_same = 0.0;
  double forget_prob = 0.0;

  MemoryUpdateParams(double dd, double ds, double fp = 0.0)
      : delta_distinct(dd), delta_same(ds), forget_prob(fp) {
    if (!(dd > 0.0) || !(ds > 0.0))
      throw Error(Errc::invalid_pair, "deltas must be positive");
    if (!(ds < dd))
      throw Error(Errc::invalid_pair,
                  "delta_same must be smaller than delta_distinct");
    if (fp < 0.0 || fp > 1.0)
      throw Error(Errc::invalid_pair, "forget_prob must lie in [0,1]");
  }
};

/// Asymmetric weighted memory update: seeing the pair as distinct shifts its
/// distinctness interval up by delta_distinct; seeing it as the same shifts
/// it down by the (smaller) delta_same. Endpoints clamp to [0,1], which is
/// the only place interval width can shrink.
inline WeightedDistinctionGraph weighted_memory_update(
    const WeightedDistinctionGraph& wg, int u, int v,
    PairObservation observation, const MemoryUpdateParams& params) {
  if (u < 0 || v < 0 || u >= wg.size() || v >= wg.size() || u == v)
    throw Error(Errc::invalid_pair, "invalid node pair");
  const double shift = observation == PairObservation::distinct
                           ? params.delta_distinct
                           : -params.delta_same;
  const IntervalWeight d = wg.distinctness(u, v);
  auto clamp01 = [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); };
  WeightedDistinctionGraph next = wg;
  next.set_distinctness(u, v,
                        IntervalWeight(clamp01(d.lo + shift),
                                       clamp01(d.hi + shift)));
  return next;
}

/// Observed ternary interaction a*b = c.
struct TernaryEvent {
  int a = 0;
  int b = 0;
  int c = 0;
  friend bool operator==(const TernaryEvent&, const TernaryEvent&) = default;
};

/// History of ternary events with the membership indexes needed to answer
/// the six per-event node predicates in O(1).
class TernaryHistory {
 public:
  void add(const TernaryEvent& e) {
    triples_.insert(encode(e.a, e.b, e.c));
    first_third_.insert(encode2(e.a, e.c));   // ∃u: (a,u,c)
    first_second_.insert(encode2(e.a, e.b));  // ∃u: (a,b,u)
    second_third_.insert(encode2(e.b, e.c));  // ∃u: (u,b,c)
  }

  bool contains(int a, int b, int c) const {
    return triples_.count(encode(a, b, c)) > 0;
  }
  bool exists_middle(int a, int c) const {  // ∃u: (a,u,c)
    return first_third_.count(encode2(a, c)) > 0;
  }
  bool exists_last(int a, int b) const {  // ∃u: (a,b,u)
    return first_second_.count(encode2(a, b)) > 0;
  }
  bool exists_first(int b, int c) const {  // ∃u: (u,b,c)
    return second_third_.count(encode2(b, c)) > 0;
  }

 private:
  static uint64_t encode(int a, int b, int c) {
    return (static_cast<uint64_t>(a) << 42) | (static_cast<uint64_t>(b) << 21) |
           static_cast<uint64_t>(c);
  }
  static uint64_t encode2(int a, int b) {
    return (static_cast<uint64_t>(a) << 21) | static_cast<uint64_t>(b);
  }
  std::unordered_set<uint64_t> triples_;
  std::unordered_set<uint64_t> first_third_;
  std::unordered_set<uint64_t> first_second_;
  std::unordered_set<uint64_t> second_third_;
};

/// The six binary node properties an event (a,b,c) induces against a
/// history. Three fix two slots and test the node in the free slot; their
/// reverses fix the remaining single slot and existentially free the other.
/// signature(x) packs them into six bits.
struct EventProperties {
  TernaryEvent event;
  const TernaryHistory* history = nullptr;

  bool p1(int x) const { return history->contains(x, event.b, event.c); }
  bool p2(int x) const { return history->contains(event.a, x, event.c); }
  bool p3(int x) const { return history->contains(event.a, event.b, x); }
  bool p4(int x) const { return history->exists_middle(x, event.c); }
  bool p5(int x) const { return history->exists_last(x, event.b); }
  bool p6(int x) const { return history->exists_first(x, event.c); }

  unsigned signature(int x) const {
    return (p1(x) ? 1u : 0u) | (p2(x) ? 2u : 0u) | (p3(x) ? 4u : 0u) |
           (p4(x) ? 8u : 0u) | (p5(x) ? 16u : 0u) | (p6(x) ? 32u : 0u);
  }
};

inline EventProperties properties_of_event(const TernaryEvent& e,
                                           const TernaryHistory& history) {
  return EventProperties{e, &history};
}

struct MepPoint {
  int step = 0;
  long long cell_count = 1;
  double shannon_nats = 0.0;
  Rational logical{0};
};

struct MepRun {
  std::vector<MepPoint> trajectory;
  std::vector<int> final_partition;  // cell id per node
};

namespace detail {
inline MepPoint measure_partition(int step, const std::vector<int>& cell_of,
                                  int n_cells) {
  std::vector<long long> sizes(static_cast<size_t>(n_cells), 0);
  for (int c : cell_of) ++sizes[static_cast<size_t>(c)];
  const long long n = static_cast<long long>(cell_of.size());
  MepPoint point;
  point.step = step;
  point.cell_count = 0;
  Rational sum_sq(0);
  for (long long s : sizes) {
    if (s == 0) continue;
    ++point.cell_count;
    const double p = static_cast<double>(s) / static_cast<double>(n);
    point.shannon_nats -= p * std::log(p);
    Rational pr(s, n);
    sum_sq += pr * pr;
  }
  point.logical = Rational(1) - sum_sq;
  return point;
}
}  // namespace detail

/// Maximum-entropy-production simulation: ternary events a*b=c drawn
/// uniformly; after each event the node partition is refined by the event's
/// six properties (evaluated against the history including the event, then
/// frozen). Refinement only splits cells, so both entropy trajectories are
/// non-decreasing by construction.
inline MepRun run_mep_sim(int n_nodes, int n_events, uint64_t seed) {
  if (n_nodes <= 0 || n_events < 0)
    throw Error(Errc::invalid_pair, "node count must be positive");
  Rng rng(seed);
  TernaryHistory history;
  std::vector<int> cell_of(static_cast<size_t>(n_nodes), 0);
  int n_cells = 1;

  MepRun run;
  run.trajectory.push_back(detail::measure_partition(0, cell_of, n_cells));
  for (int step = 1; step <= n_events; ++step) {
    TernaryEvent e{static_cast<int>(rng.below(static_cast<uint64_t>(n_nodes))),
                   static_cast<int>(rng.below(static_cast<uint64_t>(n_nodes))),
                   static_cast<int>(rng.below(static_cast<uint64_t>(n_nodes)))};
    history.add(e);
    const EventProperties props = properties_of_event(e, history);

    // Split every cell by the 6-bit signature.
    std::unordered_map<uint64_t, int> relabel;
    std::vector<int> next(cell_of.size());
    for (size_t x = 0; x < cell_of.size(); ++x) {
      const uint64_t key =
          (static_cast<uint64_t>(cell_of[x]) << 6) |
          props.signature(static_cast<int>(x));
      auto [it, inserted] = relabel.emplace(key, static_cast<int>(relabel.size()));
      next[x] = it->second;
    }
    cell_of = std::move(next);
    n_cells = static_cast<int>(relabel.size());
    run.trajectory.push_back(detail::measure_partition(step, cell_of, n_cells));
  }
  run.final_partition = std::move(cell_of);
  return run;
}

/// The distinction graph a partition induces: links inside cells only.
inline DistinctionGraph partition_graph_of(const std::vector<int>& cell_of) {
  DistinctionGraph g = DistinctionGraph::edgeless(
      detail::numbered_nodes(static_cast<int>(cell_of.size())));
  for (size_t u = 0; u < cell_of.size(); ++u)
    for (size_t v = u + 1; v < cell_of.size(); ++v)
      if (cell_of[u] == cell_of[v])
        g.add_link(static_cast<int>(u), static_cast<int>(v));
  return g;
}

}  // namespace gtropy
