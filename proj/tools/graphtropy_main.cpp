// graphtropy: distinction graphs, graphtropy and its extensions on the
// command line. JSON in, JSON or CSV out; every seeded command echoes its
// seed and is byte-reproducible.
//
// Exit codes: 0 success, 1 domain error, 2 input error.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "graphtropy/graphtropy.hpp"

namespace gt = gtropy;
using gt::Json;

namespace {

std::string fmt_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

Json rational_json(const gt::Rational& r) {
  return Json{{"num", r.num()}, {"den", r.den()}};
}

void emit(const Json& doc) { std::cout << doc.dump() << "\n"; }

gt::SearchLimits limits_from_env() {
  gt::SearchLimits limits;
  if (const char* budget = std::getenv("GRAPHTROPY_BUDGET"))
    limits.budget = std::strtoll(budget, nullptr, 10);
  return limits;
}

gt::DistinctionGraph load_plain_graph(const std::string& path) {
  gt::AnyGraph any = gt::parse_graph_file(path);
  if (auto* g = std::get_if<gt::DistinctionGraph>(&any)) return *g;
  if (auto* wg = std::get_if<gt::WeightedDistinctionGraph>(&any))
    return wg->to_unweighted();
  throw gt::Error(gt::Errc::schema_error,
                  "'" + path + "' does not describe a plain distinction graph");
}

gt::WeightedDistinctionGraph load_weighted_graph(const std::string& path) {
  gt::AnyGraph any = gt::parse_graph_file(path);
  if (auto* wg = std::get_if<gt::WeightedDistinctionGraph>(&any)) return *wg;
  if (auto* g = std::get_if<gt::DistinctionGraph>(&any))
    return gt::WeightedDistinctionGraph::from_unweighted(*g);
  throw gt::Error(gt::Errc::schema_error,
                  "'" + path + "' does not describe a weighted graph");
}

gt::DynamicDistinctionGraph load_ddg(const std::string& path) {
  gt::AnyGraph any = gt::parse_graph_file(path);
  if (auto* ddg = std::get_if<gt::DynamicDistinctionGraph>(&any)) return *ddg;
  throw gt::Error(gt::Errc::schema_error, "'" + path + "' is not a DDG file");
}

std::complex<double> complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw gt::Error(gt::Errc::schema_error,
                    "expected [re, im] at " + where);
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(const std::complex<double>& z) {
  return Json::array({z.real(), z.imag()});
}

std::pair<std::string, std::string> split_pair(const std::string& arg) {
  const auto comma = arg.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == arg.size())
    throw gt::Error(gt::Errc::schema_error,
                    "expected 'u,v' but got '" + arg + "'");
  return {arg.substr(0, comma), arg.substr(comma + 1)};
}

gt::Rational parse_rational(const std::string& arg) {
  const auto slash = arg.find('/');
  try {
    if (slash == std::string::npos) return gt::Rational(std::stoll(arg));
    return gt::Rational(std::stoll(arg.substr(0, slash)),
                        std::stoll(arg.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw gt::Error(gt::Errc::schema_error,
                    "expected 'num/den' but got '" + arg + "'");
  }
}

// Trajectory CSV shared by secondlaw and mep: a seed comment, a fixed
// header, one row per step. Fields that do not apply stay empty.
void print_trajectory_header(uint64_t seed) {
  std::cout << "# seed=" << seed << "\n";
  std::cout << "step,graphtropy_num,graphtropy_den,shannon_nats,violations\n";
}

int run_second_law_command(int nodes, int steps, double flip_p, double forget_p,
                           uint64_t seed) {
  gt::SecondLawRun run =
      gt::run_second_law_sim(nodes, steps, flip_p, seed, forget_p);
  print_trajectory_header(seed);
  for (const auto& point : run.trajectory)
    std::cout << point.step << "," << point.memory_graphtropy.num() << ","
              << point.memory_graphtropy.den() << ",,"
              << (point.decreased ? 1 : 0) << "\n";
  return 0;
}

gt::GraphDistribution load_distribution(const std::string& path) {
  Json doc = gt::parse_json_file(path);
  if (!doc.is_array() || doc.empty())
    throw gt::Error(gt::Errc::schema_error,
                    "distribution file must be a nonempty array");
  std::vector<gt::GraphDistribution::Entry> support;
  for (size_t i = 0; i < doc.size(); ++i) {
    const std::string pointer = "/" + std::to_string(i);
    const Json& entry = doc[i];
    if (!entry.is_object() || !entry.contains("x") || !entry.contains("y") ||
        !entry.contains("w"))
      throw gt::Error(gt::Errc::schema_error,
                      "expected {x, y, w} at " + pointer);
    support.push_back({gt::graph_from_json(entry["x"]),
                       gt::graph_from_json(entry["y"]),
                       entry["w"].get<double>()});
  }
  std::vector<std::string> x_nodes = support.front().x.nodes();
  std::vector<std::string> y_nodes = support.front().y.nodes();
  return gt::GraphDistribution(std::move(x_nodes), std::move(y_nodes),
                               std::move(support));
}

int index_in(const std::vector<std::string>& ids, const std::string& id,
             const std::string& side) {
  for (size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return static_cast<int>(i);
  throw gt::Error(gt::Errc::unknown_node,
                  "node '" + id + "' not in the " + side + " node set");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distinction graphs and graphtropy"};
  app.require_subcommand(1);

  // ---- plain graph commands ------------------------------------------------
  std::string input_path, g_path, h_path;

  auto* compute = app.add_subcommand("compute", "graphtropy of a graph");
  compute->add_option("--input", input_path)->required();

  // These take --h for the second graph, so their help flag is --help only.
  auto* conditional = app.add_subcommand("conditional", "h(G|H)");
  conditional->set_help_flag("--help", "print help");
  conditional->add_option("--g", g_path)->required();
  conditional->add_option("--h", h_path)->required();

  auto* mutual = app.add_subcommand("mutual", "m(G,H)");
  mutual->set_help_flag("--help", "print help");
  mutual->add_option("--g", g_path)->required();
  mutual->add_option("--h", h_path)->required();

  auto* product = app.add_subcommand("product", "co-normal product");
  product->set_help_flag("--help", "print help");
  product->add_option("--g", g_path)->required();
  product->add_option("--h", h_path)->required();

  auto* union_cmd = app.add_subcommand("union", "disjoint union, both graphtropies");
  union_cmd->set_help_flag("--help", "print help");
  union_cmd->add_option("--g", g_path)->required();
  union_cmd->add_option("--h", h_path)->required();

  auto* partition = app.add_subcommand("partition", "partition view + logical entropy");
  partition->add_option("--input", input_path)->required();

  auto* weighted = app.add_subcommand("weighted", "weighted graphtropy interval");
  weighted->add_option("--input", input_path)->required();

  // ---- distributions ---------------------------------------------------------
  auto* dist = app.add_subcommand("dist", "graphtropy of a graph distribution");
  std::string ref_x_arg, ref_y_arg;
  dist->add_option("--input", input_path)->required();
  dist->add_option("--ref-x", ref_x_arg, "x-side reference pair 'u,v'");
  dist->add_option("--ref-y", ref_y_arg, "y-side reference pair 'u,v'");

  // ---- thermo ----------------------------------------------------------------
  auto* thermo = app.add_subcommand("thermo", "automorphism thermodynamics");
  thermo->require_subcommand(1);
  auto* autos = thermo->add_subcommand("autos", "enumerate automorphisms");
  autos->add_option("--input", input_path)->required();

  auto* maxlik = thermo->add_subcommand("maxlik", "maximum-likelihood weighting");
  std::vector<long long> alphabet;
  long long target_sum = 0;
  std::string constraint_kind = "none";
  long long degree_bound = 0;
  std::string h_target_arg = "0/1", h_tol_arg = "0/1";
  maxlik->add_option("--input", input_path)->required();
  maxlik->add_option("--alphabet", alphabet)->required()->delimiter(',');
  maxlik->add_option("--sum", target_sum)->required();
  maxlik->add_option("--constraint", constraint_kind)
      ->check(CLI::IsMember({"none", "partition", "degree", "graphtropy"}));
  maxlik->add_option("--degree-bound", degree_bound);
  maxlik->add_option("--h-target", h_target_arg, "target as num/den");
  maxlik->add_option("--h-tol", h_tol_arg, "tolerance as num/den");

  auto* gibbs = thermo->add_subcommand("gibbs", "Gibbs cell distribution");
  std::vector<long long> gibbs_values;
  long long gibbs_sum = 0;
  gibbs->add_option("--input", input_path)->required();
  gibbs->add_option("--values", gibbs_values)->required()->delimiter(',');
  gibbs->add_option("--sum", gibbs_sum)->required();

  auto* wdist = thermo->add_subcommand("wdist", "weighted automorphism distance");
  std::string wdist_set = "support";
  wdist->add_option("--input", input_path)->required();
  wdist->add_option("--set", wdist_set)
      ->check(CLI::IsMember({"support", "symmetric"}));

  // ---- algoinfo ----------------------------------------------------------------
  auto* algoinfo = app.add_subcommand("algoinfo", "algorithmic-information link");
  algoinfo->require_subcommand(1);
  long long k_bits = 0, m_bits = 0, s_bits = 0;
  double d_ratio = 1.0;
  auto* predict = algoinfo->add_subcommand("predict", "closed-form prediction");
  predict->add_option("--k", k_bits)->required();
  auto* m_opt = predict->add_option("--m", m_bits);
  auto* s_opt = predict->add_option("--s", s_bits);
  predict->add_option("--d", d_ratio);
  std::string d_sweep;
  predict->add_option("--d-sweep", d_sweep,
                      "sweep the compression ratio, 'start:stop:step'");

  auto* simulate = algoinfo->add_subcommand("simulate", "bounded-observer run");
  int sim_states = 0, sim_bits = 32;
  uint64_t seed = 0;
  simulate->add_option("--k", k_bits)->required();
  simulate->add_option("--states", sim_states)->required();
  simulate->add_option("--bits", sim_bits);
  simulate->add_option("--seed", seed)->required();

  auto* energy = algoinfo->add_subcommand("energy", "graph energy of node weights");
  std::vector<long long> energy_weights;
  std::string energy_input;
  energy->add_option("--weights", energy_weights)->delimiter(',');
  energy->add_option("--input", energy_input, "weighted graph with node weights");

  // ---- secondlaw / mep ----------------------------------------------------------
  auto* secondlaw = app.add_subcommand("secondlaw", "memory-graph Second Law");
  secondlaw->require_subcommand(1);
  int sl_nodes = 6, sl_steps = 100;
  double sl_flip = 0.1, sl_forget = 0.05;
  auto* sl_run = secondlaw->add_subcommand("run", "join-only memory");
  sl_run->add_option("--nodes", sl_nodes)->required();
  sl_run->add_option("--steps", sl_steps)->required();
  sl_run->add_option("--flip-p", sl_flip)->required();
  sl_run->add_option("--seed", seed)->required();
  auto* sl_forget_cmd = secondlaw->add_subcommand("forget", "memory with forgetting");
  sl_forget_cmd->add_option("--nodes", sl_nodes)->required();
  sl_forget_cmd->add_option("--steps", sl_steps)->required();
  sl_forget_cmd->add_option("--flip-p", sl_flip)->required();
  sl_forget_cmd->add_option("--forget-p", sl_forget)->required();
  sl_forget_cmd->add_option("--seed", seed)->required();

  auto* mep = app.add_subcommand("mep", "maximum entropy production");
  mep->require_subcommand(1);
  int mep_nodes = 256, mep_events = 50;
  auto* mep_run_cmd = mep->add_subcommand("run", "ternary-event refinement");
  mep_run_cmd->add_option("--nodes", mep_nodes)->required();
  mep_run_cmd->add_option("--events", mep_events)->required();
  mep_run_cmd->add_option("--seed", seed)->required();

  // ---- ddg ----------------------------------------------------------------------
  auto* ddg_cmd = app.add_subcommand("ddg", "dynamic distinction graphs");
  ddg_cmd->require_subcommand(1);
  auto* ddg_step = ddg_cmd->add_subcommand("step", "advance the stepper");
  int step_count = 1;
  double step_delta = 1.0;
  ddg_step->add_option("--input", input_path)->required();
  ddg_step->add_option("--steps", step_count);
  ddg_step->add_option("--delta", step_delta);

  auto* ddg_mine = ddg_cmd->add_subcommand("mine", "mine causal rules");
  double min_confidence = 0.9;
  int max_lag = 3;
  long long min_support = 2;
  ddg_mine->add_option("--input", input_path)->required();
  ddg_mine->add_option("--min-confidence", min_confidence);
  ddg_mine->add_option("--max-lag", max_lag);
  ddg_mine->add_option("--min-support", min_support);

  auto* ddg_observe = ddg_cmd->add_subcommand("observe", "derive a category graph");
  std::string ddg_path, stimuli_path;
  double tolerance = 1e-9;
  ddg_observe->add_option("--ddg", ddg_path)->required();
  ddg_observe->add_option("--stimuli", stimuli_path)->required();
  ddg_observe->add_option("--tolerance", tolerance)->required();

  auto* ddg_complexity = ddg_cmd->add_subcommand("complexity", "node complexity");
  std::string node_id;
  ddg_complexity->add_option("--input", input_path)->required();
  ddg_complexity->add_option("--node", node_id);

  auto* ddg_quantum = ddg_cmd->add_subcommand("quantum", "compile quantum links");
  std::string links_path, apply_path;
  int dimension = 0;
  double unitary_tol = 1e-9;
  ddg_quantum->add_option("--links", links_path)->required();
  ddg_quantum->add_option("--dim", dimension)->required();
  ddg_quantum->add_option("--apply", apply_path);
  ddg_quantum->add_option("--tolerance", unitary_tol);

  // ---- quantum --------------------------------------------------------------------
  auto* quantum = app.add_subcommand("quantum", "density matrices and quangraphtropy");
  quantum->require_subcommand(1);
  auto* purity = quantum->add_subcommand("purity", "quantum logical entropy");
  std::string rho_path;
  purity->add_option("--rho", rho_path)->required();

  auto* quangraph = quantum->add_subcommand("quangraph", "most likely graph search");
  std::string actions_path;
  quangraph->add_option("--actions", actions_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const gt::SearchLimits limits = limits_from_env();

  try {
    if (*compute) {
      const gt::Rational h = gt::graphtropy(load_plain_graph(input_path));
      emit(Json{{"graphtropy", rational_json(h)}});
    } else if (*conditional) {
      const gt::Rational h = gt::conditional_graphtropy(
          load_plain_graph(g_path), load_plain_graph(h_path));
      emit(Json{{"conditional_graphtropy", rational_json(h)}});
    } else if (*mutual) {
      const gt::Rational m = gt::mutual_graphtropy(load_plain_graph(g_path),
                                                   load_plain_graph(h_path));
      emit(Json{{"mutual_graphtropy", rational_json(m)}});
    } else if (*product) {
      gt::DistinctionGraph p =
          gt::conormal_product(load_plain_graph(g_path), load_plain_graph(h_path));
      const gt::Rational h = gt::graphtropy(p);
      emit(Json{{"graphtropy", rational_json(h)},
                {"graph", gt::graph_to_json(p)}});
    } else if (*union_cmd) {
      gt::DistinctionGraph g = load_plain_graph(g_path);
      gt::DistinctionGraph h = load_plain_graph(h_path);
      gt::DistinctionGraph u = gt::disjoint_union(g, h);
      const gt::Rational mean_h = gt::union_graphtropy_weighted_mean(g, h);
      const gt::Rational raw_h = gt::graphtropy(u);
      emit(Json{{"weighted_mean_graphtropy", rational_json(mean_h)},
                {"raw_graphtropy", rational_json(raw_h)},
                {"graph", gt::graph_to_json(u)}});
    } else if (*partition) {
      gt::DistinctionGraph g = load_plain_graph(input_path);
      gt::PartitionView view = gt::as_partition(g);
      Json cells = Json::array();
      for (const auto& cell : view.cells) {
        Json ids = Json::array();
        for (int v : cell) ids.push_back(g.node(v));
        cells.push_back(std::move(ids));
      }
      Json probs = Json::array();
      for (const auto& p : view.probabilities()) probs.push_back(rational_json(p));
      emit(Json{{"cells", cells},
                {"probabilities", probs},
                {"logical_entropy", rational_json(gt::logical_entropy(view))}});
    } else if (*weighted) {
      gt::IntervalWeight h = gt::weighted_graphtropy(load_weighted_graph(input_path));
      emit(Json{{"weighted_graphtropy", Json{{"lo", h.lo}, {"hi", h.hi}}}});
    } else if (*dist) {
      gt::GraphDistribution d = load_distribution(input_path);
      Json out;
      std::optional<gt::ReferencePair> rx, ry;
      if (!ref_x_arg.empty()) {
        auto [u, v] = split_pair(ref_x_arg);
        rx = gt::ReferencePair{gt::Side::x, index_in(d.x_nodes(), u, "x"),
                               index_in(d.x_nodes(), v, "x")};
        out["h_x"] = gt::dist_h(d, *rx);
      }
      if (!ref_y_arg.empty()) {
        auto [u, v] = split_pair(ref_y_arg);
        ry = gt::ReferencePair{gt::Side::y, index_in(d.y_nodes(), u, "y"),
                               index_in(d.y_nodes(), v, "y")};
        out["h_y"] = gt::dist_h(d, *ry);
      }
      if (rx && ry) {
        out["joint"] = gt::dist_joint_h(d, *rx, *ry);
        out["mutual"] = gt::dist_mutual(d, *rx, *ry);
      }
      if (!rx && !ry)
        throw gt::Error(gt::Errc::invalid_reference_pair,
                        "provide --ref-x and/or --ref-y");
      emit(out);
    } else if (*autos) {
      gt::DistinctionGraph g = load_plain_graph(input_path);
      auto perms = gt::automorphisms(g, limits);
      Json list = Json::array();
      for (const auto& perm : perms) {
        Json images = Json::array();
        for (int v : perm) images.push_back(g.node(v));
        list.push_back(std::move(images));
      }
      emit(Json{{"count", perms.size()},
                {"microstate_entropy", std::log(static_cast<double>(perms.size()))},
                {"automorphisms", list}});
    } else if (*maxlik) {
      gt::WeightingConstraint c;
      c.target_sum = target_sum;
      if (constraint_kind == "partition")
        c.kind = gt::StructuralConstraintKind::partition_graph;
      else if (constraint_kind == "degree") {
        c.kind = gt::StructuralConstraintKind::max_degree;
        c.degree_bound = degree_bound;
      } else if (constraint_kind == "graphtropy") {
        c.kind = gt::StructuralConstraintKind::graphtropy_near;
        c.graphtropy_target = parse_rational(h_target_arg);
        c.graphtropy_tolerance = parse_rational(h_tol_arg);
      }
      gt::MaxLikelihoodResult result = gt::max_likelihood_weighting(
          load_plain_graph(input_path), alphabet, c, limits);
      emit(Json{{"preserved_count", result.preserved_count},
                {"weightings", result.weightings}});
    } else if (*gibbs) {
      gt::PartitionView view = gt::as_partition(load_plain_graph(input_path));
      gt::GibbsResult result = gt::gibbs_reference(view, gibbs_values, gibbs_sum);
      emit(Json{{"beta", result.beta},
                {"probabilities", result.probabilities},
                {"mean", result.mean},
                {"at_boundary", result.at_boundary}});
    } else if (*wdist) {
      const auto set = wdist_set == "symmetric"
                           ? gt::WeightedAutoSet::symmetric_group
                           : gt::WeightedAutoSet::support_graph;
      const double distance = gt::weighted_automorphism_distance(
          load_weighted_graph(input_path), set, limits);
      emit(Json{{"distance", distance}});
    } else if (*predict) {
      std::cout << "k,m,s,d,predicted,measured,n_states\n";
      if (!d_sweep.empty()) {
        // Temperature experiment: sweep the compression ratio for fixed K, S.
        if (s_opt->count() == 0)
          throw gt::Error(gt::Errc::schema_error, "--d-sweep needs --s");
        double start = 0.0, stop = 0.0, step_size = 0.0;
        if (std::sscanf(d_sweep.c_str(), "%lf:%lf:%lf", &start, &stop,
                        &step_size) != 3 ||
            step_size <= 0.0)
          throw gt::Error(gt::Errc::schema_error,
                          "--d-sweep expects 'start:stop:step'");
        for (double d = start; d <= stop + 1e-12; d += step_size) {
          gt::GraphtropyPrediction p =
              gt::predicted_graphtropy_compressible(k_bits, s_bits, d);
          std::cout << k_bits << ",," << s_bits << "," << fmt_double(d) << ","
                    << fmt_double(p.value)
                    << (p.in_range ? "" : " (out-of-range)") << ",,\n";
        }
      } else if (s_opt->count() > 0) {
        gt::GraphtropyPrediction p =
            gt::predicted_graphtropy_compressible(k_bits, s_bits, d_ratio);
        std::cout << k_bits << ",," << s_bits << "," << fmt_double(d_ratio) << ","
                  << fmt_double(p.value) << (p.in_range ? "" : " (out-of-range)")
                  << ",,\n";
      } else {
        if (m_opt->count() == 0)
          throw gt::Error(gt::Errc::schema_error, "predict needs --m or --s/--d");
        gt::GraphtropyPrediction p = gt::predicted_graphtropy(k_bits, m_bits);
        std::cout << k_bits << "," << m_bits << ",,," << fmt_double(p.value)
                  << (p.in_range ? "" : " (out-of-range)") << ",,\n";
      }
    } else if (*simulate) {
      gt::Rng rng(seed);
      auto states = gt::random_states(sim_states, sim_bits, rng);
      gt::EmpiricalObserverResult result =
          gt::empirical_observer_graph(states, static_cast<int>(k_bits), seed);
      std::cout << "# seed=" << seed << "\n";
      std::cout << "k,m,s,d,predicted,measured,n_states\n";
      std::cout << k_bits << ",,,,"
                << fmt_double(result.uniform_collision_prediction) << ","
                << fmt_double(result.measured_graphtropy.to_double()) << ","
                << sim_states << "\n";
    } else if (*energy) {
      std::vector<long long> weights = energy_weights;
      if (weights.empty() && !energy_input.empty()) {
        gt::WeightedDistinctionGraph wg = load_weighted_graph(energy_input);
        for (int i = 0; i < wg.size(); ++i) weights.push_back(wg.node_weight(i));
      }
      gt::EnergySpectrum spectrum = gt::EnergySpectrum::from_weights(weights);
      emit(Json{{"energy", gt::graph_energy(weights)},
                {"spectrum", Json{{"values", spectrum.values},
                                  {"fractions", spectrum.fractions()}}}});
    } else if (*sl_run) {
      return run_second_law_command(sl_nodes, sl_steps, sl_flip, 0.0, seed);
    } else if (*sl_forget_cmd) {
      return run_second_law_command(sl_nodes, sl_steps, sl_flip, sl_forget, seed);
    } else if (*mep_run_cmd) {
      gt::MepRun run = gt::run_mep_sim(mep_nodes, mep_events, seed);
      print_trajectory_header(seed);
      for (const auto& point : run.trajectory)
        std::cout << point.step << "," << point.logical.num() << ","
                  << point.logical.den() << "," << fmt_double(point.shannon_nats)
                  << ",0\n";
    } else if (*ddg_step) {
      gt::DynamicDistinctionGraph ddg = load_ddg(input_path);
      for (int i = 0; i < step_count; ++i) ddg = gt::step(ddg, step_delta);
      emit(gt::ddg_to_json(ddg));
    } else if (*ddg_mine) {
      Json doc = gt::parse_json_file(input_path);
      gt::ChannelSeries series;
      if (doc.is_object() && doc.contains("graphs")) {
        std::vector<gt::DistinctionGraph> trace;
        for (const auto& g : doc["graphs"]) trace.push_back(gt::graph_from_json(g));
        series = gt::channel_series_from_graphs(trace);
      } else if (doc.is_object() && doc.contains("channels") &&
                 doc.contains("values")) {
        for (const auto& ch : doc["channels"])
          series.channels.emplace_back(ch["from"].get<std::string>(),
                                       ch["to"].get<std::string>());
        for (const auto& row : doc["values"])
          series.values.push_back(row.get<std::vector<double>>());
      } else {
        throw gt::Error(gt::Errc::schema_error,
                        "trace needs 'graphs' or 'channels'+'values'");
      }
      gt::MinerConfig config{min_confidence, max_lag, min_support};
      Json rules = Json::array();
      for (const auto& r : gt::mine_rules(series, config)) {
        auto term = [&](int channel, gt::ChangeDirection dir) {
          return Json{{"dlink",
                       Json{{"from", series.channels[static_cast<size_t>(channel)].first},
                            {"to", series.channels[static_cast<size_t>(channel)].second}}},
                      {"dir", dir == gt::ChangeDirection::more_distinct ? "more" : "less"}};
        };
        rules.push_back(Json{{"ante", term(r.ante_channel, r.ante_direction)},
                             {"cons", term(r.cons_channel, r.cons_direction)},
                             {"alpha", r.multiplier},
                             {"lag", r.lag},
                             {"conf", r.confidence},
                             {"support", r.support}});
      }
      emit(Json{{"rules", rules}});
    } else if (*ddg_observe) {
      gt::ObserverSpec spec;
      spec.ddg = load_ddg(ddg_path);
      Json doc = gt::parse_json_file(stimuli_path);
      if (!doc.is_object() || !doc.contains("sensors") || !doc.contains("categories"))
        throw gt::Error(gt::Errc::schema_error,
                        "stimuli file needs 'sensors' and 'categories'");
      for (const auto& s : doc["sensors"])
        spec.sensors.push_back(spec.ddg.require_index(s.get<std::string>()));
      if (doc.contains("sensitivity"))
        spec.sensitivity = doc["sensitivity"].get<std::vector<double>>();
      std::map<std::string, std::vector<gt::StimulusSequence>> categories;
      for (const auto& [name, sequences] : doc["categories"].items()) {
        std::vector<gt::StimulusSequence> list;
        for (const auto& seq : sequences)
          list.push_back(seq.get<gt::StimulusSequence>());
        categories[name] = std::move(list);
      }
      emit(gt::graph_to_json(gt::derive_observer_graph(spec, categories, tolerance)));
    } else if (*ddg_complexity) {
      gt::DynamicDistinctionGraph ddg = load_ddg(input_path);
      if (!node_id.empty()) {
        const long long complexity =
            gt::node_complexity(ddg, ddg.require_index(node_id));
        emit(Json{{"complexity", complexity}});
      } else {
        Json per_node;
        for (int i = 0; i < ddg.size(); ++i)
          per_node[ddg.node(i)] = gt::node_complexity(ddg, i);
        emit(Json{{"complexity", per_node}});
      }
    } else if (*ddg_quantum) {
      Json doc = gt::parse_json_file(links_path);
      if (!doc.is_array())
        throw gt::Error(gt::Errc::schema_error, "links file must be an array");
      std::vector<gt::QuantumCausalLink> links;
      for (size_t i = 0; i < doc.size(); ++i) {
        const Json& l = doc[i];
        links.push_back({l["source"].get<int>(), l["target"].get<int>(),
                         complex_from_json(l["alpha"], "/" + std::to_string(i) + "/alpha")});
      }
      Eigen::MatrixXcd m = gt::compile_quantum(links, dimension);
      Json matrix = Json::array();
      for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        matrix.push_back(std::move(row));
      }
      Json out{{"matrix", matrix}, {"unitary", gt::is_unitary(m, unitary_tol)}};
      if (!apply_path.empty()) {
        Json vec_doc = gt::parse_json_file(apply_path);
        Eigen::VectorXcd v(vec_doc.size());
        for (size_t i = 0; i < vec_doc.size(); ++i)
          v(static_cast<Eigen::Index>(i)) =
              complex_from_json(vec_doc[i], "/" + std::to_string(i));
        Eigen::VectorXcd result = gt::apply_quantum(m, v);
        Json applied = Json::array();
        for (Eigen::Index i = 0; i < result.size(); ++i)
          applied.push_back(complex_to_json(result(i)));
        out["applied"] = applied;
      }
      emit(out);
    } else if (*purity) {
      Json doc = gt::parse_json_file(rho_path);
      const Json& rows = doc.is_object() && doc.contains("matrix") ? doc["matrix"] : doc;
      if (!rows.is_array() || rows.empty())
        throw gt::Error(gt::Errc::schema_error, "rho must be a matrix of [re,im]");
      const int n = static_cast<int>(rows.size());
      Eigen::MatrixXcd m(n, n);
      for (int r = 0; r < n; ++r) {
        if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n)
          throw gt::Error(gt::Errc::schema_error, "rho must be square");
        for (int c = 0; c < n; ++c)
          m(r, c) = complex_from_json(rows[r][c], "/matrix");
      }
      gt::DensityMatrix rho = gt::DensityMatrix::from_matrix(std::move(m));
      emit(Json{{"quantum_logical_entropy", gt::quantum_logical_entropy(rho)}});
    } else if (*quangraph) {
      Json doc = gt::parse_json_file(actions_path);
      gt::ActionAssignment act;
      for (const auto& a : doc["actions"])
        act.action.push_back(complex_from_json(a, "/actions"));
      for (const auto& a : doc["amplitudes"])
        act.amplitude.push_back(complex_from_json(a, "/amplitudes"));
      const std::complex<double> expected =
          complex_from_json(doc["expected"], "/expected");
      const double tol = doc.contains("tolerance")
                             ? doc["tolerance"].get<double>()
                             : 1e-9;
      gt::QuangraphResult result = gt::quangraph_search(
          static_cast<int>(act.action.size()), act, expected, tol, limits);
      Json maximizers = Json::array();
      for (const auto& g : result.maximizers)
        maximizers.push_back(gt::graph_to_json(g));
      emit(Json{{"preserved_count", result.preserved_count},
                {"maximizers", maximizers}});
    }
  } catch (const gt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_input_error() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
