#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphtropy/error.hpp"
#include "graphtropy/graph.hpp"
#include "graphtropy/rational.hpp"
#include "graphtropy/rng.hpp"

namespace gtropy {

/// A prediction of the closed-form graphtropy formulas. The raw value is
/// never clamped: the formula's validity domain is part of what gets
/// reported, so out-of-range results carry a flag instead.
struct GraphtropyPrediction {
  double value = 0.0;
  bool in_range = true;  // value within [0, 1]
};

/// 1 - 2^(K - M - 1): graphtropy of a graph of random states with
/// algorithmic information M, seen by an observer of complexity K.
inline GraphtropyPrediction predicted_graphtropy(long long observer_bits,
                                                 long long state_bits) {
  const double value =
      1.0 - std::exp2(static_cast<double>(observer_bits - state_bits - 1));
  return {value, value >= 0.0 && value <= 1.0};
}

/// 1 - 2^(K - S/D - 1): the compressible-state variant, states of size S
/// bits with compression ratio D >= 1.
inline GraphtropyPrediction predicted_graphtropy_compressible(
    long long observer_bits, long long state_size_bits,
    double compression_ratio) {
  if (compression_ratio < 1.0)
    throw Error(Errc::invalid_compression_ratio,
                "compression ratio must be >= 1");
  const double value =
      1.0 - std::exp2(static_cast<double>(observer_bits) -
                      static_cast<double>(state_size_bits) / compression_ratio -
                      1.0);
  return {value, value >= 0.0 && value <= 1.0};
}

/// Mean node weight (Σ v_i)/N. Computed via the exact integer sum so the
/// spectrum form below agrees bit-for-bit.
inline double graph_energy(const std::vector<long long>& weights) {
  if (weights.empty())
    throw Error(Errc::empty_list, "graph energy of an empty weight list");
  long long sum = 0;
  for (long long v : weights) sum += v;
  return static_cast<double>(sum) / static_cast<double>(weights.size());
}

/// Energy eigenvalue spectrum: the distinct weight values and the fraction
/// of nodes carrying each.
struct EnergySpectrum {
  std::vector<long long> values;
  std::vector<long long> counts;
  long long total = 0;

  static EnergySpectrum from_weights(const std::vector<long long>& weights) {
    if (weights.empty())
      throw Error(Errc::empty_list, "spectrum of an empty weight list");
    std::vector<long long> sorted = weights;
    std::sort(sorted.begin(), sorted.end());
    EnergySpectrum s;
    s.total = static_cast<long long>(sorted.size());
    for (long long v : sorted) {
      if (s.values.empty() || s.values.back() != v) {
        s.values.push_back(v);
        s.counts.push_back(0);
      }
      ++s.counts.back();
    }
    return s;
  }

  std::vector<double> fractions() const {
    std::vector<double> f(counts.size());
    for (size_t i = 0; i < counts.size(); ++i)
      f[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    return f;
  }
};

/// Σ_j E_j p(E_j) evaluated as Σ_j E_j c_j / N in integers, which makes it
/// identical to graph_energy on the same weights.
inline double graph_energy_spectrum(const EnergySpectrum& spectrum) {
  if (spectrum.values.empty())
    throw Error(Errc::empty_list, "energy of an empty spectrum");
  long long sum = 0;
  for (size_t j = 0; j < spectrum.values.size(); ++j)
    sum += spectrum.values[j] * spectrum.counts[j];
  return static_cast<double>(sum) / static_cast<double>(spectrum.total);
}

/// Result of the bounded-observer simulation: the distinction graph induced
/// by a random projection into 2^K cells, plus what it measured.
struct EmpiricalObserverResult {
  DistinctionGraph graph;
  std::vector<uint64_t> cell_of_state;
  Rational measured_graphtropy{0};
  double uniform_collision_prediction = 0.0;  // 1 - 2^-K
};

/// Bounded observer as a seeded random projection: states land in one of
/// 2^K cells keyed by their content, nodes are linked iff they share a
/// cell. Identical states always share a cell. K is capped so the cell
/// space stays addressable.
inline EmpiricalObserverResult empirical_observer_graph(
    const std::vector<std::string>& state_bits, int observer_bits,
    uint64_t seed) {
  if (observer_bits < 0 || observer_bits > 30)
    throw Error(Errc::too_many_cells,
                "observer complexity must be in [0, 30] bits");
  const uint64_t cells = uint64_t{1} << observer_bits;

  std::vector<std::string> ids;
  ids.reserve(state_bits.size());
  for (size_t i = 0; i < state_bits.size(); ++i)
    ids.push_back("s" + std::to_string(i));
  EmpiricalObserverResult result{DistinctionGraph::edgeless(std::move(ids)),
                                 {},
                                 Rational(0),
                                 1.0 - std::exp2(-observer_bits)};

  result.cell_of_state.reserve(state_bits.size());
  for (const auto& bits : state_bits) {
    uint64_t h = Rng::mix(seed, 0x853c49e6748fea9bULL);
    for (char c : bits) h = Rng::mix(h, static_cast<uint64_t>(c));
    result.cell_of_state.push_back(h % cells);
  }

  // Group by occupied cell, then link within each group.
  std::unordered_map<uint64_t, std::vector<int>> groups;
  for (size_t i = 0; i < result.cell_of_state.size(); ++i)
    groups[result.cell_of_state[i]].push_back(static_cast<int>(i));
  for (const auto& [cell, group] : groups) {
    (void)cell;
    for (size_t a = 0; a < group.size(); ++a)
      for (size_t b = a + 1; b < group.size(); ++b)
        result.graph.add_link(group[a], group[b]);
  }

  if (result.graph.size() > 0)
    result.measured_graphtropy = graphtropy(result.graph);
  return result;
}

/// Random '0'/'1' state strings for the simulation harness.
inline std::vector<std::string> random_states(int count, int bits_per_state,
                                              Rng& rng) {
  std::vector<std::string> states(static_cast<size_t>(count));
  for (auto& s : states) {
    s.resize(static_cast<size_t>(bits_per_state));
    for (auto& c : s) c = rng.bernoulli(0.5) ? '1' : '0';
  }
  return states;
}

/// Run/parse compressor: the computable stand-in for algorithmic
/// information. Emits a 32-bit length header, a 2-bit mode, then the
/// shortest of three encodings — raw passthrough, an LZ78 phrase stream, or
/// a short-period run encoding — so the estimate never exceeds the input
/// length plus the 34-bit overhead.
class Lz78Compressor {
 public:
  /// Compressed image of a '0'/'1' string, as 0/1 bytes.
  static std::vector<uint8_t> compress(const std::string& bits) {
    std::vector<uint8_t> raw;
    raw.reserve(bits.size());
    for (char c : bits) raw.push_back(c == '1' ? 1 : 0);
    std::vector<uint8_t> candidates[3] = {std::move(raw), lz78_stream(bits),
                                          periodic_stream(bits)};
    int mode = 0;
    for (int m = 1; m < 3; ++m)
      if (candidates[m].size() < candidates[static_cast<size_t>(mode)].size())
        mode = m;
    const std::vector<uint8_t>& body = candidates[static_cast<size_t>(mode)];

    std::vector<uint8_t> out;
    out.reserve(kHeaderBits + 2 + body.size());
    uint32_t len = static_cast<uint32_t>(bits.size());
    for (int b = kHeaderBits - 1; b >= 0; --b)
      out.push_back(static_cast<uint8_t>((len >> b) & 1));
    out.push_back(static_cast<uint8_t>((mode >> 1) & 1));
    out.push_back(static_cast<uint8_t>(mode & 1));
    out.insert(out.end(), body.begin(), body.end());
    return out;
  }

  /// Complexity estimate in bits = compressed length. Deterministic.
  static long long complexity_bits(const std::string& bits) {
    return static_cast<long long>(compress(bits).size());
  }

 private:
  static constexpr int kHeaderBits = 32;
  static constexpr size_t kMaxPeriod = 64;

  // Shortest period p <= 64 with bits[i] == bits[i-p]: 8 bits of period
  // length plus the pattern itself (total length lives in the header).
  static std::vector<uint8_t> periodic_stream(const std::string& bits) {
    for (size_t p = 1; p <= kMaxPeriod && p < bits.size(); ++p) {
      bool periodic = true;
      for (size_t i = p; i < bits.size(); ++i)
        if (bits[i] != bits[i - p]) {
          periodic = false;
          break;
        }
      if (!periodic) continue;
      std::vector<uint8_t> out;
      for (int b = 7; b >= 0; --b)
        out.push_back(static_cast<uint8_t>((p >> b) & 1));
      for (size_t i = 0; i < p; ++i) out.push_back(bits[i] == '1' ? 1 : 0);
      return out;
    }
    // No short period: return something never shorter than the raw mode.
    return std::vector<uint8_t>(bits.size() + 9, 0);
  }

  // Classic LZ78: each phrase is (index of longest known prefix, next bit),
  // with the index field growing as ceil(log2(dict size + 1)).
  static std::vector<uint8_t> lz78_stream(const std::string& bits) {
    std::vector<uint8_t> out;
    std::vector<std::array<int, 2>> trie{{-1, -1}};  // node 0 = empty phrase
    size_t pos = 0;
    while (pos < bits.size()) {
      int node = 0;
      while (pos < bits.size()) {
        const int b = bits[pos] == '1' ? 1 : 0;
        const int next = trie[static_cast<size_t>(node)][b];
        if (next == -1) {
          emit_phrase(out, node, b, static_cast<int>(trie.size()));
          trie[static_cast<size_t>(node)][b] = static_cast<int>(trie.size());
          trie.push_back({-1, -1});
          ++pos;
          node = -1;
          break;
        }
        node = next;
        ++pos;
      }
      if (node >= 0) {
        // Input ended inside a known phrase: emit its index with no literal.
        emit_phrase(out, node, -1, static_cast<int>(trie.size()));
      }
    }
    return out;
  }

  static void emit_phrase(std::vector<uint8_t>& out, int node, int literal,
                          int dict_size) {
    int width = 0;
    while ((1 << width) < dict_size) ++width;
    for (int b = width - 1; b >= 0; --b)
      out.push_back(static_cast<uint8_t>((node >> b) & 1));
    if (literal >= 0) out.push_back(static_cast<uint8_t>(literal));
  }
};

}  // namespace gtropy
