#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "conclude/graph.hpp"

namespace conclude {

/// SplitMix64 stream. Each walk gets its own stream derived from
/// (seed, walk index), so results never depend on how walks are scheduled.
/// Satisfies UniformRandomBitGenerator.
class WalkRng {
 public:
  using result_type = std::uint64_t;

  explicit WalkRng(std::uint64_t state) noexcept : state_(state) {}
  static WalkRng for_walk(std::uint64_t seed, std::uint64_t walk) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept;

  /// Unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

/// A simple κ-path: consecutive edges share a vertex and no edge repeats.
struct WalkTrace {
  VertexId start = 0;
  std::vector<EdgeId> edges;
};

/// Walks from `start`, each hop choosing uniformly among incident edges not
/// yet used by this walk. Stops after `kappa` edges or at a dead end.
WalkTrace simulate_walk(const Graph& g, VertexId start, unsigned kappa, WalkRng& rng);

struct KpathParams {
  unsigned kappa = 20;
  std::uint64_t rho = 0;
  std::uint64_t seed = 0;
};

/// Per-edge κ-path centrality. `traversals[e]` is the integer number of walks
/// that used edge e; `values[e] = traversals[e] / rho`.
struct EdgeCentralities {
  std::vector<double> values;
  std::vector<std::uint64_t> traversals;
  unsigned kappa = 0;
  std::uint64_t rho = 0;
  std::uint64_t seed = 0;

  std::uint64_t total_traversals() const;
};

/// Monte-Carlo estimator run on `workers` OpenMP threads (0 = runtime
/// default). Bit-identical to erw_kpath_serial for the same parameters.
EdgeCentralities erw_kpath(const Graph& g, const KpathParams& params, int workers = 0);

/// Single-threaded reference for erw_kpath.
EdgeCentralities erw_kpath_serial(const Graph& g, const KpathParams& params);

/// Exact expectation of the estimator, (1/|V|) Σ_s Pr(e | s), by exhaustive
/// enumeration of every walk. Throws once more than `node_cap` walk prefixes
/// have been expanded.
EdgeCentralities exact_kpath_centrality(const Graph& g, unsigned kappa,
                                        std::uint64_t node_cap = 50'000'000);

/// "label_i<TAB>label_j<TAB>value" per edge, 12 significant digits, sorted by
/// label pair. Used for both centralities and weights.
void write_edge_values(std::ostream& out, const Graph& g, const std::vector<double>& values);

}  // namespace conclude
