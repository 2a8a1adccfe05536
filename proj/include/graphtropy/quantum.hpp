#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "graphtropy/automorphism.hpp"
#include "graphtropy/error.hpp"
#include "graphtropy/graph.hpp"

namespace gtropy {

/// Validated density matrix: Hermitian, unit trace, positive semidefinite
/// (all within small tolerances, since the entries are floating point).
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(Eigen::MatrixXcd entries) {
    if (entries.rows() != entries.cols() || entries.rows() == 0)
      throw Error(Errc::invalid_density_matrix, "matrix must be square");
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      throw Error(Errc::invalid_density_matrix, "matrix is not Hermitian");
    if (std::abs(entries.trace() - std::complex<double>(1.0, 0.0)) > 1e-10)
      throw Error(Errc::invalid_density_matrix, "trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries,
                                                           Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10)
      throw Error(Errc::invalid_density_matrix,
                  "matrix has a negative eigenvalue");
    DensityMatrix rho;
    rho.entries_ = std::move(entries);
    return rho;
  }

  const Eigen::MatrixXcd& entries() const { return entries_; }
  int dimension() const { return static_cast<int>(entries_.rows()); }

  Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_,
                                                           Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }

 private:
  DensityMatrix() = default;
  Eigen::MatrixXcd entries_;
};

/// h(ρ) = 1 - tr[ρ²]: quantum logical entropy, the impurity of the state.
/// Zero exactly for pure states, at most 1 - 1/n.
inline double quantum_logical_entropy(const DensityMatrix& rho) {
  const std::complex<double> tr2 = (rho.entries() * rho.entries()).trace();
  return 1.0 - tr2.real();
}

/// ρ = Σ p_i |φ_i><φ_i| from orthonormal states and a distribution.
inline DensityMatrix density_from_mixture(
    const std::vector<Eigen::VectorXcd>& states,
    const std::vector<double>& probabilities) {
  if (states.empty() || states.size() != probabilities.size())
    throw Error(Errc::bad_distribution,
                "need one probability per state, at least one state");
  const Eigen::Index dim = states.front().size();
  double total = 0.0;
  for (double p : probabilities) {
    if (p < 0.0) throw Error(Errc::bad_distribution, "negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error(Errc::bad_distribution, "probabilities sum to " +
                                            std::to_string(total));
  for (size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != dim)
      throw Error(Errc::length_mismatch, "states have mixed dimensions");
    for (size_t j = 0; j <= i; ++j) {
      const std::complex<double> inner = states[j].dot(states[i]);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(inner - std::complex<double>(expected, 0.0)) > 1e-8)
        throw Error(Errc::not_orthonormal,
                    "states " + std::to_string(j) + " and " +
                        std::to_string(i) + " are not orthonormal");
    }
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (size_t i = 0; i < states.size(); ++i)
    rho += probabilities[i] * (states[i] * states[i].adjoint());
  return DensityMatrix::from_matrix(std::move(rho));
}

/// Diagonal mixture with the partition's cell probabilities. Its quantum
/// logical entropy equals the classical logical entropy of the partition.
inline DensityMatrix density_from_partition(const PartitionView& partition) {
  const int k = static_cast<int>(partition.cells.size());
  if (k == 0) throw Error(Errc::empty_graph, "empty partition");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(k, k);
  for (int i = 0; i < k; ++i)
    rho(i, i) = static_cast<double>(partition.cells[static_cast<size_t>(i)].size()) /
                static_cast<double>(partition.total_nodes);
  return DensityMatrix::from_matrix(std::move(rho));
}

/// Per-node action a(x) and amplitude A(x) of the quangraphtropy setup.
struct ActionAssignment {
  std::vector<std::complex<double>> action;
  std::vector<std::complex<double>> amplitude;
};

/// Count of graph automorphisms that also map every node onto a node of
/// equal action. Action values are user inputs, so equality is exact by
/// default; pass a tolerance for computed actions.
inline long long action_preserving_automorphisms(const DistinctionGraph& g,
                                                 const ActionAssignment& act,
                                                 double tolerance = 0.0,
                                                 SearchLimits limits = {}) {
  if (static_cast<int>(act.action.size()) != g.size())
    throw Error(Errc::length_mismatch, "one action per node required");
  long long count = 0;
  for (const auto& perm : automorphisms(g, limits)) {
    bool ok = true;
    for (int v = 0; v < g.size(); ++v) {
      const auto& a = act.action[static_cast<size_t>(v)];
      const auto& b = act.action[static_cast<size_t>(perm[static_cast<size_t>(v)])];
      if (tolerance == 0.0 ? a != b : std::abs(a - b) > tolerance) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

struct QuangraphResult {
  std::vector<DistinctionGraph> maximizers;  // canonical (edge-mask) order
  long long preserved_count = 0;
};

/// Exhaustive quangraphtropy search: over all graphs on n nodes (ids
/// "0".."n-1"), subject to |Σ A(x)a(x) - <a>| <= tol on the fixed
/// assignment, return every graph maximizing the number of
/// action-preserving automorphisms. n is capped at 6 (2^15 graphs); the
/// search IS the oracle — no variational shortcut exists.
inline QuangraphResult quangraph_search(int n_nodes,
                                        const ActionAssignment& act,
                                        std::complex<double> expected_action,
                                        double tolerance,
                                        SearchLimits limits = {}) {
  if (n_nodes < 1 || n_nodes > 6)
    throw Error(Errc::search_budget_exceeded,
                "exhaustive graph search is limited to 6 nodes");
  if (static_cast<int>(act.action.size()) != n_nodes ||
      static_cast<int>(act.amplitude.size()) != n_nodes)
    throw Error(Errc::length_mismatch,
                "need one action and one amplitude per node");
  std::complex<double> weighted(0.0, 0.0);
  for (int i = 0; i < n_nodes; ++i)
    weighted += act.amplitude[static_cast<size_t>(i)] *
                act.action[static_cast<size_t>(i)];
  if (std::abs(weighted - expected_action) > tolerance)
    throw Error(Errc::infeasible_constraint,
                "expected-action constraint is violated by the assignment");

  std::vector<std::string> ids;
  for (int i = 0; i < n_nodes; ++i) ids.push_back(std::to_string(i));
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n_nodes; ++u)
    for (int v = u + 1; v < n_nodes; ++v) pairs.emplace_back(u, v);

  QuangraphResult result;
  result.preserved_count = -1;
  for (uint64_t mask = 0; mask < (uint64_t{1} << pairs.size()); ++mask) {
    DistinctionGraph g = DistinctionGraph::edgeless(ids);
    for (size_t b = 0; b < pairs.size(); ++b)
      if ((mask >> b) & 1) g.add_link(pairs[b].first, pairs[b].second);
    const long long count =
        action_preserving_automorphisms(g, act, 0.0, limits);
    if (count > result.preserved_count) {
      result.preserved_count = count;
      result.maximizers.clear();
    }
    if (count == result.preserved_count) result.maximizers.push_back(std::move(g));
  }
  return result;
}

}  // namespace gtropy
