#pragma once

#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "graphtropy/ddg.hpp"
#include "graphtropy/error.hpp"
#include "graphtropy/graph.hpp"
#include "graphtropy/weighted.hpp"

namespace gtropy {

using Json = nlohmann::ordered_json;

using AnyGraph =
    std::variant<DistinctionGraph, WeightedDistinctionGraph, DynamicDistinctionGraph>;

namespace jsondetail {

[[noreturn]] inline void schema_error(const std::string& pointer,
                                      const std::string& what) {
  throw Error(Errc::schema_error, what + " at " + pointer);
}

inline void require_keys(const Json& obj, const std::string& pointer,
                         const std::vector<std::string>& allowed) {
  if (!obj.is_object()) schema_error(pointer, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const auto& k : allowed)
      if (k == key) {
        known = true;
        break;
      }
    if (!known) schema_error(pointer + "/" + key, "unknown field");
  }
}

inline std::string get_string(const Json& obj, const std::string& pointer,
                              const std::string& key) {
  if (!obj.contains(key)) schema_error(pointer, "missing field '" + key + "'");
  if (!obj[key].is_string())
    schema_error(pointer + "/" + key, "expected a string");
  return obj[key].get<std::string>();
}

inline double get_number(const Json& obj, const std::string& pointer,
                         const std::string& key) {
  if (!obj.contains(key)) schema_error(pointer, "missing field '" + key + "'");
  if (!obj[key].is_number())
    schema_error(pointer + "/" + key, "expected a number");
  return obj[key].get<double>();
}

}  // namespace jsondetail

/// What kind of graph a JSON document describes, detected from the fields
/// present: dlinks/rules => DDG; interval weights or node weights =>
/// weighted; otherwise a plain distinction graph.
enum class GraphKind { plain, weighted, ddg };

inline GraphKind detect_graph_kind(const Json& doc) {
  if (!doc.is_object()) jsondetail::schema_error("", "expected an object");
  if (doc.contains("dlinks") || doc.contains("rules")) return GraphKind::ddg;
  if (doc.contains("links") && doc["links"].is_array())
    for (const auto& link : doc["links"])
      if (link.is_object() && (link.contains("d_lo") || link.contains("d_hi")))
        return GraphKind::weighted;
  if (doc.contains("nodes") && doc["nodes"].is_array())
    for (const auto& node : doc["nodes"])
      if (node.is_object() && node.contains("weight") && !node["weight"].is_null())
        return GraphKind::weighted;
  return GraphKind::plain;
}

namespace jsondetail {

struct ParsedNodes {
  std::vector<std::string> ids;
  std::vector<Json> weights;  // null or integer
  std::vector<long long> counts;
  bool any_count = false;
};

inline ParsedNodes parse_nodes(const Json& doc, bool allow_count) {
  if (!doc.contains("nodes")) schema_error("", "missing field 'nodes'");
  const Json& nodes = doc["nodes"];
  if (!nodes.is_array()) schema_error("/nodes", "expected an array");
  ParsedNodes out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const std::string pointer = "/nodes/" + std::to_string(i);
    const Json& node = nodes[i];
    std::vector<std::string> allowed{"id", "weight"};
    if (allow_count) allowed.push_back("count");
    require_keys(node, pointer, allowed);
    out.ids.push_back(get_string(node, pointer, "id"));
    if (node.contains("weight")) {
      if (!node["weight"].is_null() && !node["weight"].is_number_integer())
        schema_error(pointer + "/weight", "expected null or an integer");
      out.weights.push_back(node["weight"]);
    } else {
      out.weights.push_back(Json(nullptr));
    }
    long long count = 0;
    if (allow_count && node.contains("count")) {
      if (!node["count"].is_number_integer())
        schema_error(pointer + "/count", "expected an integer");
      count = node["count"].get<long long>();
      out.any_count = true;
    }
    out.counts.push_back(count);
  }
  return out;
}

}  // namespace jsondetail

inline DistinctionGraph graph_from_json(const Json& doc) {
  jsondetail::require_keys(doc, "", {"nodes", "links"});
  auto nodes = jsondetail::parse_nodes(doc, false);
  std::vector<std::pair<std::string, std::string>> links;
  if (doc.contains("links")) {
    if (!doc["links"].is_array()) jsondetail::schema_error("/links", "expected an array");
    for (size_t i = 0; i < doc["links"].size(); ++i) {
      const std::string pointer = "/links/" + std::to_string(i);
      const Json& link = doc["links"][i];
      jsondetail::require_keys(link, pointer, {"u", "v"});
      links.emplace_back(jsondetail::get_string(link, pointer, "u"),
                         jsondetail::get_string(link, pointer, "v"));
    }
  }
  try {
    return DistinctionGraph::create(std::move(nodes.ids), links);
  } catch (const Error& e) {
    if (e.code() == Errc::duplicate_node || e.code() == Errc::unknown_node ||
        e.code() == Errc::self_link)
      throw Error(Errc::schema_error, std::string(e.what()) + " at /links");
    throw;
  }
}

inline WeightedDistinctionGraph weighted_from_json(const Json& doc) {
  jsondetail::require_keys(doc, "", {"nodes", "links"});
  auto nodes = jsondetail::parse_nodes(doc, false);
  WeightedDistinctionGraph wg(nodes.ids);
  for (size_t i = 0; i < nodes.ids.size(); ++i)
    if (!nodes.weights[i].is_null())
      wg.set_node_weight(static_cast<int>(i), nodes.weights[i].get<long long>());
  if (doc.contains("links")) {
    if (!doc["links"].is_array()) jsondetail::schema_error("/links", "expected an array");
    for (size_t i = 0; i < doc["links"].size(); ++i) {
      const std::string pointer = "/links/" + std::to_string(i);
      const Json& link = doc["links"][i];
      jsondetail::require_keys(link, pointer, {"u", "v", "d_lo", "d_hi"});
      const int u = wg.require_index(jsondetail::get_string(link, pointer, "u"));
      const int v = wg.require_index(jsondetail::get_string(link, pointer, "v"));
      double lo = 0.0, hi = 0.0;
      if (link.contains("d_lo") || link.contains("d_hi")) {
        lo = jsondetail::get_number(link, pointer, "d_lo");
        hi = jsondetail::get_number(link, pointer, "d_hi");
      }
      try {
        wg.set_distinctness(u, v, IntervalWeight(lo, hi));
      } catch (const Error& e) {
        throw Error(Errc::schema_error, std::string(e.what()) + " at " + pointer);
      }
    }
  }
  return wg;
}

namespace jsondetail {

inline ChangeDirection direction_from_string(const std::string& s,
                                             const std::string& pointer) {
  if (s == "more") return ChangeDirection::more_distinct;
  if (s == "less") return ChangeDirection::less_distinct;
  schema_error(pointer, "direction must be \"more\" or \"less\"");
}

inline std::string direction_to_string(ChangeDirection d) {
  return d == ChangeDirection::more_distinct ? "more" : "less";
}

inline Trend trend_from_string(const std::string& s, const std::string& pointer) {
  if (s == "increasing") return Trend::increasing;
  if (s == "decreasing") return Trend::decreasing;
  if (s == "steady") return Trend::steady;
  schema_error(pointer, "trend must be increasing/decreasing/steady");
}

inline std::string trend_to_string(Trend t) {
  switch (t) {
    case Trend::increasing: return "increasing";
    case Trend::decreasing: return "decreasing";
    case Trend::steady: return "steady";
  }
  return "steady";
}

inline RuleTerm rule_term_from_json(const Json& term, const std::string& pointer,
                                    const DynamicDistinctionGraph& ddg) {
  require_keys(term, pointer, {"dlink", "rule", "dir"});
  RuleTerm out;
  out.direction = direction_from_string(get_string(term, pointer, "dir"), pointer);
  if (term.contains("dlink") == term.contains("rule"))
    schema_error(pointer, "exactly one of 'dlink'/'rule' required");
  if (term.contains("dlink")) {
    const Json& d = term["dlink"];
    require_keys(d, pointer + "/dlink", {"from", "to"});
    const int from = ddg.require_index(get_string(d, pointer + "/dlink", "from"));
    const int to = ddg.require_index(get_string(d, pointer + "/dlink", "to"));
    out.target = {RuleTargetRef::Kind::dlink, ddg.dlink_index(from, to)};
  } else {
    if (!term["rule"].is_number_integer())
      schema_error(pointer + "/rule", "expected an integer rule index");
    out.target = {RuleTargetRef::Kind::rule, term["rule"].get<int>()};
  }
  return out;
}

}  // namespace jsondetail

inline DynamicDistinctionGraph ddg_from_json(const Json& doc) {
  jsondetail::require_keys(doc, "", {"nodes", "links", "dlinks", "rules", "history"});
  if (doc.contains("links") && !doc["links"].empty())
    jsondetail::schema_error("/links",
                             "a DDG uses 'dlinks'; symmetric links are two dlinks");
  auto nodes = jsondetail::parse_nodes(doc, true);
  DynamicDistinctionGraph ddg(nodes.ids, nodes.counts);

  if (doc.contains("dlinks")) {
    if (!doc["dlinks"].is_array())
      jsondetail::schema_error("/dlinks", "expected an array");
    for (size_t i = 0; i < doc["dlinks"].size(); ++i) {
      const std::string pointer = "/dlinks/" + std::to_string(i);
      const Json& d = doc["dlinks"][i];
      jsondetail::require_keys(d, pointer, {"from", "to", "p", "trend"});
      const int from = ddg.require_index(jsondetail::get_string(d, pointer, "from"));
      const int to = ddg.require_index(jsondetail::get_string(d, pointer, "to"));
      const double p = jsondetail::get_number(d, pointer, "p");
      Trend trend = Trend::steady;
      if (d.contains("trend"))
        trend = jsondetail::trend_from_string(
            jsondetail::get_string(d, pointer, "trend"), pointer + "/trend");
      try {
        ddg.add_dlink(from, to, p, trend);
      } catch (const Error& e) {
        throw Error(Errc::schema_error, std::string(e.what()) + " at " + pointer);
      }
    }
  }
  if (doc.contains("rules")) {
    if (!doc["rules"].is_array())
      jsondetail::schema_error("/rules", "expected an array");
    for (size_t i = 0; i < doc["rules"].size(); ++i) {
      const std::string pointer = "/rules/" + std::to_string(i);
      const Json& r = doc["rules"][i];
      jsondetail::require_keys(r, pointer, {"ante", "cons", "alpha", "lag", "conf"});
      if (!r.contains("ante") || !r.contains("cons"))
        jsondetail::schema_error(pointer, "rule needs 'ante' and 'cons'");
      CausalRule rule;
      rule.antecedent =
          jsondetail::rule_term_from_json(r["ante"], pointer + "/ante", ddg);
      rule.consequent =
          jsondetail::rule_term_from_json(r["cons"], pointer + "/cons", ddg);
      rule.multiplier = jsondetail::get_number(r, pointer, "alpha");
      if (!r.contains("lag") || !r["lag"].is_number_integer())
        jsondetail::schema_error(pointer + "/lag", "expected an integer");
      rule.lag = r["lag"].get<int>();
      rule.confidence = r.contains("conf")
                            ? jsondetail::get_number(r, pointer, "conf")
                            : 1.0;
      // Forward references to later rules can't be validated incrementally.
      if (rule.antecedent.target.kind == RuleTargetRef::Kind::rule &&
          rule.antecedent.target.index >= static_cast<int>(i))
        jsondetail::schema_error(pointer + "/ante/rule",
                                 "rule may only reference earlier rules");
      if (rule.consequent.target.kind == RuleTargetRef::Kind::rule &&
          rule.consequent.target.index >= static_cast<int>(i))
        jsondetail::schema_error(pointer + "/cons/rule",
                                 "rule may only reference earlier rules");
      try {
        ddg.add_rule(std::move(rule));
      } catch (const Error& e) {
        throw Error(Errc::schema_error, std::string(e.what()) + " at " + pointer);
      }
    }
  }
  if (doc.contains("history")) {
    if (!doc["history"].is_array())
      jsondetail::schema_error("/history", "expected an array");
    std::deque<StepChanges> history;
    for (size_t i = 0; i < doc["history"].size(); ++i) {
      const std::string pointer = "/history/" + std::to_string(i);
      const Json& h = doc["history"][i];
      jsondetail::require_keys(h, pointer, {"dlinks", "rules"});
      StepChanges changes;
      changes.dlink_change.assign(ddg.dlinks().size(), 0.0);
      changes.rule_confidence_change.assign(ddg.rules().size(), 0.0);
      if (h.contains("dlinks")) {
        if (!h["dlinks"].is_array() ||
            h["dlinks"].size() != ddg.dlinks().size())
          jsondetail::schema_error(pointer + "/dlinks",
                                   "expected one change per dlink");
        for (size_t d = 0; d < changes.dlink_change.size(); ++d)
          changes.dlink_change[d] = h["dlinks"][d].get<double>();
      }
      if (h.contains("rules")) {
        if (!h["rules"].is_array() || h["rules"].size() != ddg.rules().size())
          jsondetail::schema_error(pointer + "/rules",
                                   "expected one change per rule");
        for (size_t d = 0; d < changes.rule_confidence_change.size(); ++d)
          changes.rule_confidence_change[d] = h["rules"][d].get<double>();
      }
      history.push_back(std::move(changes));
    }
    ddg.set_history(std::move(history));
  }
  return ddg;
}

inline AnyGraph any_graph_from_json(const Json& doc) {
  switch (detect_graph_kind(doc)) {
    case GraphKind::plain: return graph_from_json(doc);
    case GraphKind::weighted: return weighted_from_json(doc);
    case GraphKind::ddg: return ddg_from_json(doc);
  }
  throw Error(Errc::schema_error, "unrecognised graph document");
}

// --- serialization ---------------------------------------------------------

inline Json graph_to_json(const DistinctionGraph& g) {
  Json doc;
  doc["nodes"] = Json::array();
  for (const auto& id : g.nodes())
    doc["nodes"].push_back(Json{{"id", id}, {"weight", nullptr}});
  doc["links"] = Json::array();
  for (int u = 0; u < g.size(); ++u)
    for (int v = u + 1; v < g.size(); ++v)
      if (g.linked(u, v))
        doc["links"].push_back(Json{{"u", g.node(u)}, {"v", g.node(v)}});
  return doc;
}

inline Json weighted_to_json(const WeightedDistinctionGraph& wg) {
  Json doc;
  doc["nodes"] = Json::array();
  for (int i = 0; i < wg.size(); ++i) {
    Json node{{"id", wg.node(i)}};
    auto w = wg.node_weight_opt(i);
    node["weight"] = w ? Json(*w) : Json(nullptr);
    doc["nodes"].push_back(std::move(node));
  }
  doc["links"] = Json::array();
  for (const auto& [pq, d] : wg.explicit_pairs())
    doc["links"].push_back(Json{{"u", wg.node(pq.first)},
                                {"v", wg.node(pq.second)},
                                {"d_lo", d.lo},
                                {"d_hi", d.hi}});
  return doc;
}

inline Json ddg_to_json(const DynamicDistinctionGraph& ddg) {
  Json doc;
  doc["nodes"] = Json::array();
  for (int i = 0; i < ddg.size(); ++i)
    doc["nodes"].push_back(Json{{"id", ddg.node(i)},
                                {"weight", nullptr},
                                {"count", ddg.occurrence_count(i)}});
  doc["dlinks"] = Json::array();
  for (const auto& link : ddg.dlinks())
    doc["dlinks"].push_back(Json{{"from", ddg.node(link.from)},
                                 {"to", ddg.node(link.to)},
                                 {"p", link.p},
                                 {"trend", jsondetail::trend_to_string(link.trend)}});
  doc["rules"] = Json::array();
  for (const auto& rule : ddg.rules()) {
    auto term_json = [&](const RuleTerm& term) {
      Json t;
      if (term.target.kind == RuleTargetRef::Kind::dlink) {
        const auto& link = ddg.dlinks()[static_cast<size_t>(term.target.index)];
        t["dlink"] = Json{{"from", ddg.node(link.from)}, {"to", ddg.node(link.to)}};
      } else {
        t["rule"] = term.target.index;
      }
      t["dir"] = jsondetail::direction_to_string(term.direction);
      return t;
    };
    doc["rules"].push_back(Json{{"ante", term_json(rule.antecedent)},
                                {"cons", term_json(rule.consequent)},
                                {"alpha", rule.multiplier},
                                {"lag", rule.lag},
                                {"conf", rule.confidence}});
  }
  if (!ddg.history().empty()) {
    doc["history"] = Json::array();
    for (const auto& changes : ddg.history())
      doc["history"].push_back(Json{{"dlinks", changes.dlink_change},
                                    {"rules", changes.rule_confidence_change}});
  }
  return doc;
}

// --- files -----------------------------------------------------------------

inline Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
}

inline AnyGraph parse_graph_file(const std::string& path) {
  return any_graph_from_json(parse_json_file(path));
}

}  // namespace gtropy
