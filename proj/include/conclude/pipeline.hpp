#pragma once

#include <cstdint>
#include <optional>

#include "conclude/distance.hpp"
#include "conclude/graph.hpp"
#include "conclude/kpath.hpp"
#include "conclude/louvain.hpp"

namespace conclude {

struct PipelineOptions {
  unsigned kappa = 20;
  /// Absolute walk count; when unset, rho = ceil(rho_multiplier * |E|).
  std::optional<std::uint64_t> rho;
  double rho_multiplier = 100.0;
  std::uint64_t seed = 0;
  double min_gain = 1e-6;
  int workers = 0;
};

std::uint64_t resolve_rho(const Graph& g, const PipelineOptions& options);

struct PipelineResult {
  EdgeCentralities centralities;
  EdgeWeights weights;
  LouvainResult clustering;
  /// Modularity of the partition on the input graph with unit weights.
  double modularity = 0.0;
  double seconds_centrality = 0.0;
  double seconds_distance = 0.0;
  double seconds_louvain = 0.0;
};

/// Centralities, then edge weights, then weighted Louvain.
PipelineResult run_pipeline(const Graph& g, const PipelineOptions& options);

}  // namespace conclude
