#include "conclude/pipeline.hpp"

#include <chrono>
#include <cmath>

namespace conclude {

std::uint64_t resolve_rho(const Graph& g, const PipelineOptions& options) {
  if (options.rho) {
    if (*options.rho == 0) throw Error("rho must be >= 1");
    return *options.rho;
  }
  if (!(options.rho_multiplier > 0.0)) throw Error("rho multiplier must be positive");
  const double rho = std::ceil(options.rho_multiplier * static_cast<double>(g.edge_count()));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(rho));
}

PipelineResult run_pipeline(const Graph& g, const PipelineOptions& options) {
  using clock = std::chrono::steady_clock;
  auto seconds_since = [](clock::time_point t) {
    return std::chrono::duration<double>(clock::now() - t).count();
  };
  if (g.edge_count() == 0) throw Error("graph has no edges");

  PipelineResult r;
  auto t = clock::now();
  r.centralities =
      erw_kpath(g, {options.kappa, resolve_rho(g, options), options.seed}, options.workers);
  r.seconds_centrality = seconds_since(t);

  t = clock::now();
  r.weights = edge_distances(g, r.centralities, options.workers);
  r.seconds_distance = seconds_since(t);

  t = clock::now();
  r.clustering = louvain(g, r.weights, {options.min_gain, options.seed, false});
  r.seconds_louvain = seconds_since(t);

  r.modularity = modularity(g, EdgeWeights::uniform(g), r.clustering.partition);
  return r;
}

}  // namespace conclude
