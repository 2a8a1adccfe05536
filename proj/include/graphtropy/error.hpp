#pragma once

#include <stdexcept>
#include <string>

namespace gtropy {

/// Every failure the library reports, by name. The CLI maps these onto exit
/// codes: parse/schema problems are input errors (exit 2), everything else
/// is a domain error (exit 1).
enum class Errc {
  duplicate_node,
  unknown_node,
  self_link,
  empty_graph,
  node_set_mismatch,
  undefined_conditional,
  not_a_partition_graph,
  pair_mismatch,
  missing_node_weights,
  division_by_zero_mu,
  graph_too_large,
  search_budget_exceeded,
  infeasible_constraint,
  no_feasible_beta,
  not_in_support,
  invalid_reference_pair,
  empty_trace,
  trace_too_short,
  rule_cycle,
  empty_category,
  length_mismatch,
  index_out_of_range,
  not_orthonormal,
  bad_distribution,
  invalid_density_matrix,
  invalid_compression_ratio,
  too_many_cells,
  empty_list,
  invalid_pair,
  arithmetic_overflow,
  parse_error,
  schema_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::duplicate_node: return "DuplicateNode";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::self_link: return "SelfLink";
    case Errc::empty_graph: return "EmptyGraph";
    case Errc::node_set_mismatch: return "NodeSetMismatch";
    case Errc::undefined_conditional: return "UndefinedConditional";
    case Errc::not_a_partition_graph: return "NotAPartitionGraph";
    case Errc::pair_mismatch: return "PairMismatch";
    case Errc::missing_node_weights: return "MissingNodeWeights";
    case Errc::division_by_zero_mu: return "DivisionByZeroMu";
    case Errc::graph_too_large: return "GraphTooLarge";
    case Errc::search_budget_exceeded: return "SearchBudgetExceeded";
    case Errc::infeasible_constraint: return "InfeasibleConstraint";
    case Errc::no_feasible_beta: return "NoFeasibleBeta";
    case Errc::not_in_support: return "NotInSupport";
    case Errc::invalid_reference_pair: return "InvalidReferencePair";
    case Errc::empty_trace: return "EmptyTrace";
    case Errc::trace_too_short: return "TraceTooShort";
    case Errc::rule_cycle: return "RuleCycle";
    case Errc::empty_category: return "EmptyCategory";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::not_orthonormal: return "NotOrthonormal";
    case Errc::bad_distribution: return "BadDistribution";
    case Errc::invalid_density_matrix: return "InvalidDensityMatrix";
    case Errc::invalid_compression_ratio: return "InvalidCompressionRatio";
    case Errc::too_many_cells: return "TooManyCells";
    case Errc::empty_list: return "EmptyList";
    case Errc::invalid_pair: return "InvalidPair";
    case Errc::arithmetic_overflow: return "ArithmeticOverflow";
    case Errc::parse_error: return "ParseError";
    case Errc::schema_error: return "SchemaError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

  /// Input errors come from malformed files or flags; everything else is a
  /// domain error raised on well-formed input.
  bool is_input_error() const {
    return code_ == Errc::parse_error || code_ == Errc::schema_error;
  }

 private:
  Errc code_;
};

}  // namespace gtropy
