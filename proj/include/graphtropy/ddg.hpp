#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graphtropy/error.hpp"
#include "graphtropy/graph.hpp"

namespace gtropy {

enum class Trend { increasing, decreasing, steady };
enum class ChangeDirection { more_distinct, less_distinct };

/// Directed distinction link x -> y: p is the probability the observer
/// CANNOT notice x changing into y, so distinctness along the link is 1 - p.
struct DirectedLink {
  int from = 0;
  int to = 0;
  double p = 1.0;
  Trend trend = Trend::steady;
};

/// What a causal-rule term points at: a directed link or another rule
/// (higher-order rules gate the confidence of their target rule).
struct RuleTargetRef {
  enum class Kind { dlink, rule };
  Kind kind = Kind::dlink;
  int index = 0;
  friend bool operator==(const RuleTargetRef&, const RuleTargetRef&) = default;
};

struct RuleTerm {
  RuleTargetRef target;
  ChangeDirection direction = ChangeDirection::more_distinct;
};

/// "If the antecedent changed in its direction `lag` steps ago, the
/// consequent moves by multiplier x that change's magnitude." Confidence
/// gates the effect multiplicatively and is itself the quantity higher-order
/// rules act on.
struct CausalRule {
  RuleTerm antecedent;
  RuleTerm consequent;
  double multiplier = 1.0;
  int lag = 1;
  double confidence = 1.0;
};

/// Per-step record of what actually changed, used to decide which rules
/// fire later. Front of the history deque = the most recent completed step.
struct StepChanges {
  std::vector<double> dlink_change;
  std::vector<double> rule_confidence_change;
};

/// Dynamic distinction graph: nodes with occurrence counts, directed
/// weighted distinction links, and (possibly higher-order) causal rules.
class DynamicDistinctionGraph {
 public:
  DynamicDistinctionGraph() = default;

  explicit DynamicDistinctionGraph(std::vector<std::string> node_ids,
                                   std::vector<long long> occurrence_counts = {})
      : skeleton_(DistinctionGraph::edgeless(std::move(node_ids))),
        counts_(std::move(occurrence_counts)) {
    if (counts_.empty()) counts_.assign(static_cast<size_t>(size()), 0);
    if (static_cast<int>(counts_.size()) != size())
      throw Error(Errc::length_mismatch, "one occurrence count per node");
  }

  int size() const { return skeleton_.size(); }
  const std::vector<std::string>& nodes() const { return skeleton_.nodes(); }
  const std::string& node(int i) const { return skeleton_.node(i); }
  int require_index(const std::string& id) const {
    return skeleton_.require_index(id);
  }
  long long occurrence_count(int i) const {
    return counts_[static_cast<size_t>(i)];
  }
  void set_occurrence_count(int i, long long c) {
    counts_[static_cast<size_t>(i)] = c;
  }

  int add_dlink(int from, int to, double p, Trend trend = Trend::steady) {
    if (from < 0 || to < 0 || from >= size() || to >= size())
      throw Error(Errc::index_out_of_range, "dlink endpoint out of range");
    if (p < 0.0 || p > 1.0)
      throw Error(Errc::invalid_pair, "dlink weight must lie in [0,1]");
    if (dlink_index_.count({from, to}))
      throw Error(Errc::invalid_pair, "duplicate dlink");
    dlink_index_[{from, to}] = static_cast<int>(dlinks_.size());
    dlinks_.push_back({from, to, p, trend});
    return static_cast<int>(dlinks_.size()) - 1;
  }

  int add_rule(CausalRule rule) {
    validate_term(rule.antecedent, static_cast<int>(rules_.size()));
    validate_term(rule.consequent, static_cast<int>(rules_.size()));
    if (rule.multiplier < 0.0)
      throw Error(Errc::invalid_pair, "rule multiplier must be nonnegative");
    if (rule.lag < 1) throw Error(Errc::invalid_pair, "rule lag must be >= 1");
    if (rule.confidence < 0.0 || rule.confidence > 1.0)
      throw Error(Errc::invalid_pair, "rule confidence must lie in [0,1]");
    rules_.push_back(std::move(rule));
    check_rule_acyclic();
    return static_cast<int>(rules_.size()) - 1;
  }

  const std::vector<DirectedLink>& dlinks() const { return dlinks_; }
  const std::vector<CausalRule>& rules() const { return rules_; }
  const std::deque<StepChanges>& history() const { return history_; }

  int dlink_index(int from, int to) const {
    auto it = dlink_index_.find({from, to});
    if (it == dlink_index_.end())
      throw Error(Errc::unknown_node, "no dlink " + node(from) + "->" + node(to));
    return it->second;
  }

  double distinctness(int dlink) const {
    return 1.0 - dlinks_[static_cast<size_t>(dlink)].p;
  }
  void set_distinctness(int dlink, double d) {
    auto& link = dlinks_[static_cast<size_t>(dlink)];
    link.p = 1.0 - std::min(std::max(d, 0.0), 1.0);
  }
  void set_trend(int dlink, Trend t) {
    dlinks_[static_cast<size_t>(dlink)].trend = t;
  }
  void set_rule_confidence(int rule, double c) {
    rules_[static_cast<size_t>(rule)].confidence =
        std::min(std::max(c, 0.0), 1.0);
  }

  void push_history(StepChanges changes) {
    history_.push_front(std::move(changes));
    int max_lag = 1;
    for (const auto& r : rules_) max_lag = std::max(max_lag, r.lag);
    while (static_cast<int>(history_.size()) > max_lag) history_.pop_back();
  }
  void set_history(std::deque<StepChanges> h) { history_ = std::move(h); }

  /// Directed cycle check over rule->rule references; RuleCycle on failure.
  void check_rule_acyclic() const {
    const int r = static_cast<int>(rules_.size());
    std::vector<int> state(static_cast<size_t>(r), 0);  // 0 new, 1 open, 2 done
    auto visit = [&](auto&& self, int i) -> void {
      state[static_cast<size_t>(i)] = 1;
      for (const RuleTerm* term :
           {&rules_[static_cast<size_t>(i)].antecedent,
            &rules_[static_cast<size_t>(i)].consequent}) {
        if (term->target.kind != RuleTargetRef::Kind::rule) continue;
        const int j = term->target.index;
        if (state[static_cast<size_t>(j)] == 1)
          throw Error(Errc::rule_cycle, "causal rules reference each other in a cycle");
        if (state[static_cast<size_t>(j)] == 0) self(self, j);
      }
      state[static_cast<size_t>(i)] = 2;
    };
    for (int i = 0; i < r; ++i)
      if (state[static_cast<size_t>(i)] == 0) visit(visit, i);
  }

 private:
  void validate_term(const RuleTerm& term, int rule_count) const {
    const int limit = term.target.kind == RuleTargetRef::Kind::dlink
                          ? static_cast<int>(dlinks_.size())
                          : rule_count;
    if (term.target.index < 0 || term.target.index >= limit)
      throw Error(Errc::index_out_of_range, "rule term references nothing");
  }

  DistinctionGraph skeleton_;
  std::vector<long long> counts_;
  std::vector<DirectedLink> dlinks_;
  std::vector<CausalRule> rules_;
  std::deque<StepChanges> history_;
  std::map<std::pair<int, int>, int> dlink_index_;
};

using DDG = DynamicDistinctionGraph;

/// Exogenous distinctness nudges applied during a step, per dlink index.
using ExogenousChanges = std::vector<std::pair<int, double>>;

/// Synchronous step: every rule whose antecedent changed (in its direction)
/// exactly `lag` steps ago fires, moving its consequent — a dlink's
/// distinctness or a rule's confidence — by multiplier x |change| x
/// confidence x delta, signed by the consequent direction. All firings read
/// the pre-step history, updates clamp to [0,1], and the actually applied
/// changes become the new head of the history.
inline DynamicDistinctionGraph step(const DynamicDistinctionGraph& ddg,
                                    const ExogenousChanges& exogenous,
                                    double delta = 1.0) {
  if (!(delta > 0.0))
    throw Error(Errc::invalid_pair, "step size must be positive");
  DynamicDistinctionGraph next = ddg;
  std::vector<double> dlink_effect(ddg.dlinks().size(), 0.0);
  std::vector<double> conf_effect(ddg.rules().size(), 0.0);

  const auto& history = ddg.history();
  for (const auto& rule : ddg.rules()) {
    if (static_cast<int>(history.size()) < rule.lag) continue;
    const StepChanges& past = history[static_cast<size_t>(rule.lag - 1)];
    const auto& ante = rule.antecedent;
    const double change =
        ante.target.kind == RuleTargetRef::Kind::dlink
            ? past.dlink_change[static_cast<size_t>(ante.target.index)]
            : past.rule_confidence_change[static_cast<size_t>(ante.target.index)];
    const bool fired =
        (ante.direction == ChangeDirection::more_distinct && change > 0.0) ||
        (ante.direction == ChangeDirection::less_distinct && change < 0.0);
    if (!fired) continue;
    const double magnitude = std::abs(change);
    const double sign =
        rule.consequent.direction == ChangeDirection::more_distinct ? 1.0 : -1.0;
    const double effect =
        sign * rule.multiplier * magnitude * rule.confidence * delta;
    if (rule.consequent.target.kind == RuleTargetRef::Kind::dlink)
      dlink_effect[static_cast<size_t>(rule.consequent.target.index)] += effect;
    else
      conf_effect[static_cast<size_t>(rule.consequent.target.index)] += effect;
  }
  for (const auto& [index, change] : exogenous) {
    if (index < 0 || index >= static_cast<int>(dlink_effect.size()))
      throw Error(Errc::index_out_of_range, "exogenous change on unknown dlink");
    dlink_effect[static_cast<size_t>(index)] += change;
  }

  StepChanges applied;
  applied.dlink_change.resize(ddg.dlinks().size(), 0.0);
  applied.rule_confidence_change.resize(ddg.rules().size(), 0.0);
  auto clamp01 = [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); };

  for (size_t i = 0; i < dlink_effect.size(); ++i) {
    const double before = ddg.distinctness(static_cast<int>(i));
    const double after = clamp01(before + dlink_effect[i]);
    next.set_distinctness(static_cast<int>(i), after);
    applied.dlink_change[i] = after - before;
    Trend t = Trend::steady;
    if (applied.dlink_change[i] > 0.0) t = Trend::increasing;
    if (applied.dlink_change[i] < 0.0) t = Trend::decreasing;
    next.set_trend(static_cast<int>(i), t);
  }
  for (size_t r = 0; r < conf_effect.size(); ++r) {
    const double before = ddg.rules()[r].confidence;
    const double after = clamp01(before + conf_effect[r]);
    next.set_rule_confidence(static_cast<int>(r), after);
    applied.rule_confidence_change[r] = after - before;
  }
  next.push_history(std::move(applied));
  return next;
}

inline DynamicDistinctionGraph step(const DynamicDistinctionGraph& ddg,
                                    double delta = 1.0) {
  return step(ddg, {}, delta);
}

/// Number of distinct causal rules reachable from any dlink incident to x,
/// closing over rule-to-rule references in both directions (a higher-order
/// rule pointing at one of x's rules is part of x's dynamics). Each rule
/// counts once.
inline long long node_complexity(const DynamicDistinctionGraph& ddg, int x) {
  if (x < 0 || x >= ddg.size())
    throw Error(Errc::index_out_of_range, "node index out of range");
  ddg.check_rule_acyclic();
  const auto& rules = ddg.rules();
  const int r = static_cast<int>(rules.size());

  auto touches_dlink_of_x = [&](const RuleTerm& term) {
    if (term.target.kind != RuleTargetRef::Kind::dlink) return false;
    const auto& link = ddg.dlinks()[static_cast<size_t>(term.target.index)];
    return link.from == x || link.to == x;
  };

  std::vector<bool> in_set(static_cast<size_t>(r), false);
  bool grew = true;
  for (int i = 0; i < r; ++i)
    if (touches_dlink_of_x(rules[static_cast<size_t>(i)].antecedent) ||
        touches_dlink_of_x(rules[static_cast<size_t>(i)].consequent))
      in_set[static_cast<size_t>(i)] = true;
  while (grew) {
    grew = false;
    for (int i = 0; i < r; ++i) {
      if (in_set[static_cast<size_t>(i)]) continue;
      for (const RuleTerm* term : {&rules[static_cast<size_t>(i)].antecedent,
                                   &rules[static_cast<size_t>(i)].consequent}) {
        if (term->target.kind == RuleTargetRef::Kind::rule &&
            in_set[static_cast<size_t>(term->target.index)]) {
          in_set[static_cast<size_t>(i)] = true;
          grew = true;
          break;
        }
      }
    }
    // Also pull in rules referenced BY members (downward references).
    for (int i = 0; i < r; ++i) {
      if (!in_set[static_cast<size_t>(i)]) continue;
      for (const RuleTerm* term : {&rules[static_cast<size_t>(i)].antecedent,
                                   &rules[static_cast<size_t>(i)].consequent}) {
        if (term->target.kind == RuleTargetRef::Kind::rule &&
            !in_set[static_cast<size_t>(term->target.index)]) {
          in_set[static_cast<size_t>(term->target.index)] = true;
          grew = true;
        }
      }
    }
  }
  long long count = 0;
  for (bool b : in_set) count += b ? 1 : 0;
  return count;
}

/// Grouping primitive: replace node x by k fully-interlinked copies
/// (pairwise dlinks with p = 1 in both directions), each inheriting x's
/// dlinks, occurrence count, and — aligned per copy — the rules referencing
/// those dlinks. Higher-order rules over duplicated rules duplicate in
/// parallel.
inline DynamicDistinctionGraph expand_node(const DynamicDistinctionGraph& ddg,
                                           int x, int k) {
  if (x < 0 || x >= ddg.size())
    throw Error(Errc::index_out_of_range, "node index out of range");
  if (k < 1) throw Error(Errc::invalid_pair, "copy count must be >= 1");

  std::vector<std::string> ids;
  std::vector<long long> counts;
  std::vector<int> remap(static_cast<size_t>(ddg.size()), -1);
  std::vector<int> copies;
  for (int i = 0; i < ddg.size(); ++i) {
    if (i == x) {
      for (int c = 0; c < k; ++c) {
        copies.push_back(static_cast<int>(ids.size()));
        ids.push_back(ddg.node(x) + "#" + std::to_string(c));
        counts.push_back(ddg.occurrence_count(x));
      }
      remap[static_cast<size_t>(i)] = copies.front();
    } else {
      remap[static_cast<size_t>(i)] = static_cast<int>(ids.size());
      ids.push_back(ddg.node(i));
      counts.push_back(ddg.occurrence_count(i));
    }
  }
  DynamicDistinctionGraph out(std::move(ids), std::move(counts));

  // dlink index per copy; non-incident dlinks map to a single new index.
  std::vector<std::vector<int>> dlink_map(ddg.dlinks().size());
  for (size_t d = 0; d < ddg.dlinks().size(); ++d) {
    const auto& link = ddg.dlinks()[d];
    if (link.from != x && link.to != x) {
      dlink_map[d] = {out.add_dlink(remap[static_cast<size_t>(link.from)],
                                    remap[static_cast<size_t>(link.to)], link.p,
                                    link.trend)};
    } else {
      for (int c = 0; c < k; ++c) {
        const int from = link.from == x ? copies[static_cast<size_t>(c)]
                                        : remap[static_cast<size_t>(link.from)];
        const int to = link.to == x ? copies[static_cast<size_t>(c)]
                                    : remap[static_cast<size_t>(link.to)];
        dlink_map[d].push_back(out.add_dlink(from, to, link.p, link.trend));
      }
    }
  }
  // Full interlinking between copies: indistinct both ways.
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (a != b)
        out.add_dlink(copies[static_cast<size_t>(a)],
                      copies[static_cast<size_t>(b)], 1.0);

  // Duplicate rules whose terms fan out, aligned by copy index.
  std::vector<std::vector<int>> rule_map(ddg.rules().size());
  for (size_t r = 0; r < ddg.rules().size(); ++r) {
    const auto& rule = ddg.rules()[static_cast<size_t>(r)];
    auto fanout = [&](const RuleTerm& term) -> size_t {
      if (term.target.kind == RuleTargetRef::Kind::dlink)
        return dlink_map[static_cast<size_t>(term.target.index)].size();
      return rule_map[static_cast<size_t>(term.target.index)].size();
    };
    const size_t copies_needed = std::max(fanout(rule.antecedent),
                                          fanout(rule.consequent));
    for (size_t c = 0; c < copies_needed; ++c) {
      auto remap_term = [&](const RuleTerm& term) {
        RuleTerm t = term;
        const auto& targets =
            term.target.kind == RuleTargetRef::Kind::dlink
                ? dlink_map[static_cast<size_t>(term.target.index)]
                : rule_map[static_cast<size_t>(term.target.index)];
        t.target.index = targets[targets.size() == 1 ? 0 : c];
        return t;
      };
      CausalRule copy = rule;
      copy.antecedent = remap_term(rule.antecedent);
      copy.consequent = remap_term(rule.consequent);
      rule_map[r].push_back(out.add_rule(std::move(copy)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rule mining
// ---------------------------------------------------------------------------

/// Labeled time series of pair-distinctness channels: values[t][c] is the
/// distinctness of channel c at step t.
struct ChannelSeries {
  std::vector<std::pair<std::string, std::string>> channels;
  std::vector<std::vector<double>> values;
};

struct MinedRule {
  int ante_channel = 0;
  ChangeDirection ante_direction = ChangeDirection::more_distinct;
  int cons_channel = 0;
  ChangeDirection cons_direction = ChangeDirection::more_distinct;
  int lag = 1;
  double confidence = 0.0;
  double multiplier = 0.0;
  long long support = 0;
};

struct MinerConfig {
  double min_confidence = 0.9;
  int max_lag = 3;
  long long min_support = 2;
};

/// Mine point-lag causal rules from a distinctness time series. For each
/// candidate (antecedent channel+direction, consequent channel+direction,
/// lag), confidence = co-occurrences / antecedent events (counting only
/// antecedents whose outcome window lies inside the trace) and multiplier =
/// mean ratio of consequent to antecedent change magnitudes.
inline std::vector<MinedRule> mine_rules(const ChannelSeries& series,
                                         const MinerConfig& config = {}) {
  const int rows = static_cast<int>(series.values.size());
  if (rows <= config.max_lag || rows < 2)
    throw Error(Errc::trace_too_short,
                "trace must be longer than the maximum lag");
  const int n_channels = static_cast<int>(series.channels.size());
  for (const auto& row : series.values)
    if (static_cast<int>(row.size()) != n_channels)
      throw Error(Errc::length_mismatch, "ragged channel series");

  // deltas[t][c] = change during step t+1.
  const int n_deltas = rows - 1;
  std::vector<std::vector<double>> deltas(
      static_cast<size_t>(n_deltas),
      std::vector<double>(static_cast<size_t>(n_channels), 0.0));
  for (int t = 0; t < n_deltas; ++t)
    for (int c = 0; c < n_channels; ++c)
      deltas[static_cast<size_t>(t)][static_cast<size_t>(c)] =
          series.values[static_cast<size_t>(t + 1)][static_cast<size_t>(c)] -
          series.values[static_cast<size_t>(t)][static_cast<size_t>(c)];

  auto matches = [](double change, ChangeDirection dir) {
    return dir == ChangeDirection::more_distinct ? change > 0.0 : change < 0.0;
  };

  std::vector<MinedRule> mined;
  const ChangeDirection dirs[2] = {ChangeDirection::more_distinct,
                                   ChangeDirection::less_distinct};
  for (int a = 0; a < n_channels; ++a)
    for (ChangeDirection da : dirs)
      for (int c = 0; c < n_channels; ++c)
        for (ChangeDirection dc : dirs)
          for (int lag = 1; lag <= config.max_lag; ++lag) {
            long long ante = 0, both = 0;
            double ratio_sum = 0.0;
            for (int t = 0; t + lag < n_deltas; ++t) {
              const double da_val =
                  deltas[static_cast<size_t>(t)][static_cast<size_t>(a)];
              if (!matches(da_val, da)) continue;
              ++ante;
              const double dc_val =
                  deltas[static_cast<size_t>(t + lag)][static_cast<size_t>(c)];
              if (matches(dc_val, dc)) {
                ++both;
                ratio_sum += std::abs(dc_val) / std::abs(da_val);
              }
            }
            if (ante == 0 || both < config.min_support) continue;
            const double confidence =
                static_cast<double>(both) / static_cast<double>(ante);
            if (confidence < config.min_confidence) continue;
            mined.push_back({a, da, c, dc, lag, confidence,
                             ratio_sum / static_cast<double>(both), both});
          }
  return mined;
}

/// Distinctness channel series of a crisp observation trace: one channel per
/// unordered pair, value 1 when the pair is a dit.
inline ChannelSeries channel_series_from_graphs(
    const std::vector<DistinctionGraph>& trace) {
  if (trace.empty()) throw Error(Errc::empty_trace, "empty observation trace");
  const DistinctionGraph& first = trace.front();
  ChannelSeries series;
  for (int u = 0; u < first.size(); ++u)
    for (int v = u + 1; v < first.size(); ++v)
      series.channels.emplace_back(first.node(u), first.node(v));
  for (const auto& g : trace) {
    if (!g.same_node_list(first))
      throw Error(Errc::node_set_mismatch, "trace node sets differ");
    std::vector<double> row;
    row.reserve(series.channels.size());
    for (int u = 0; u < first.size(); ++u)
      for (int v = u + 1; v < first.size(); ++v)
        row.push_back(g.linked(u, v) ? 0.0 : 1.0);
    series.values.push_back(std::move(row));
  }
  return series;
}

// ---------------------------------------------------------------------------
// Observers as DDGs
// ---------------------------------------------------------------------------

/// A DDG observed through designated sensor nodes (optionally with per-sensor
/// sensitivity in [0,1], default 1).
struct ObserverSpec {
  DynamicDistinctionGraph ddg;
  std::vector<int> sensors;
  std::vector<double> sensitivity;  // empty = all ones
};

/// stimulus[t][i] = drive applied at step t to sensor i (scaled by its
/// sensitivity and fanned out over the dlinks leaving that sensor).
using StimulusSequence = std::vector<std::vector<double>>;

namespace detail {
inline std::vector<double> response_trajectory(const ObserverSpec& spec,
                                               const StimulusSequence& stimulus) {
  DynamicDistinctionGraph state = spec.ddg;
  std::vector<double> trajectory;
  trajectory.reserve(stimulus.size() * state.dlinks().size());
  for (const auto& frame : stimulus) {
    if (frame.size() != spec.sensors.size())
      throw Error(Errc::length_mismatch,
                  "stimulus frame size != number of sensors");
    ExogenousChanges exo;
    for (size_t i = 0; i < spec.sensors.size(); ++i) {
      const double gain =
          spec.sensitivity.empty() ? 1.0 : spec.sensitivity[i];
      for (size_t d = 0; d < state.dlinks().size(); ++d)
        if (state.dlinks()[d].from == spec.sensors[i])
          exo.emplace_back(static_cast<int>(d), frame[i] * gain);
    }
    state = step(state, exo, 1.0);
    for (size_t d = 0; d < state.dlinks().size(); ++d)
      trajectory.push_back(state.distinctness(static_cast<int>(d)));
  }
  return trajectory;
}
}  // namespace detail

/// Second-observer construction: categories of stimuli are linked
/// (indistinct to A) iff every cross-pair of their stimulus sequences drives
/// A's dlink-weight trajectories within `tolerance` of each other, uniformly.
inline DistinctionGraph derive_observer_graph(
    const ObserverSpec& spec,
    const std::map<std::string, std::vector<StimulusSequence>>& categories,
    double tolerance) {
  if (categories.empty())
    throw Error(Errc::empty_category, "no stimulus categories");
  size_t length = 0;
  bool first_seq = true;
  for (const auto& [name, sequences] : categories) {
    if (sequences.empty())
      throw Error(Errc::empty_category,
                  "category '" + name + "' has no stimulus sequences");
    for (const auto& seq : sequences) {
      if (first_seq) {
        length = seq.size();
        first_seq = false;
      } else if (seq.size() != length) {
        throw Error(Errc::length_mismatch,
                    "stimulus sequences must share a length");
      }
    }
  }

  std::vector<std::string> names;
  std::vector<std::vector<std::vector<double>>> responses;
  for (const auto& [name, sequences] : categories) {
    names.push_back(name);
    std::vector<std::vector<double>> per_category;
    for (const auto& seq : sequences)
      per_category.push_back(detail::response_trajectory(spec, seq));
    responses.push_back(std::move(per_category));
  }

  DistinctionGraph g = DistinctionGraph::edgeless(names);
  for (size_t x = 0; x < responses.size(); ++x)
    for (size_t y = x + 1; y < responses.size(); ++y) {
      double worst = 0.0;
      for (const auto& rx : responses[x])
        for (const auto& ry : responses[y])
          for (size_t i = 0; i < rx.size(); ++i)
            worst = std::max(worst, std::abs(rx[i] - ry[i]));
      if (worst <= tolerance) g.add_link(static_cast<int>(x), static_cast<int>(y));
    }
  return g;
}

// ---------------------------------------------------------------------------
// Quantum DDG compilation
// ---------------------------------------------------------------------------

/// "If amplitude at `source` changes, amplitude at `target` changes by
/// multiplier alpha": one entry of the evolution matrix.
struct QuantumCausalLink {
  int source = 0;
  int target = 0;
  std::complex<double> multiplier;
};

/// Matrix with entry (target, source) = sum of multipliers of matching
/// links. Enacting all links at once is exactly multiplication by this
/// matrix.
inline Eigen::MatrixXcd compile_quantum(const std::vector<QuantumCausalLink>& links,
                                        int dimension) {
  if (dimension <= 0)
    throw Error(Errc::index_out_of_range, "dimension must be positive");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dimension, dimension);
  for (const auto& link : links) {
    if (link.source < 0 || link.source >= dimension || link.target < 0 ||
        link.target >= dimension)
      throw Error(Errc::index_out_of_range, "quantum link index out of range");
    m(link.target, link.source) += link.multiplier;
  }
  return m;
}

inline Eigen::VectorXcd apply_quantum(const Eigen::MatrixXcd& m,
                                      const Eigen::VectorXcd& amplitudes) {
  if (amplitudes.size() != m.cols())
    throw Error(Errc::length_mismatch, "amplitude vector has wrong dimension");
  return m * amplitudes;
}

inline bool is_unitary(const Eigen::MatrixXcd& m, double tolerance = 1e-9) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const Eigen::MatrixXcd delta =
      m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return delta.cwiseAbs().maxCoeff() <= tolerance;
}

/// Inverse of compile_quantum: one link per nonzero entry, in (source,
/// target) order.
inline std::vector<QuantumCausalLink> derive_links(const Eigen::MatrixXcd& m) {
  std::vector<QuantumCausalLink> links;
  for (int source = 0; source < m.cols(); ++source)
    for (int target = 0; target < m.rows(); ++target)
      if (m(target, source) != std::complex<double>(0.0, 0.0))
        links.push_back({source, target, m(target, source)});
  return links;
}

}  // namespace gtropy
