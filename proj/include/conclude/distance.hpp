#pragma once

#include <cstdint>
#include <vector>

#include "conclude/graph.hpp"
#include "conclude/kpath.hpp"

namespace conclude {

/// Per-edge similarity weights in [0, 1], indexed by edge id.
struct EdgeWeights {
  std::vector<double> values;
  unsigned kappa = 0;
  std::uint64_t rho = 0;
  std::uint64_t seed = 0;

  /// Unit weight on every edge.
  static EdgeWeights uniform(const Graph& g, double w = 1.0);
};

enum class SigmaNormalization {
  /// Each third-party term divided by deg(k).
  degree,
  /// Plain Euclidean sum over third parties.
  none,
};

/// Proximity summed over every vertex k of the graph:
/// sqrt(Σ_k [L(k,i) − L(k,j)]² / deg(k)), where L(k,x) is the centrality of
/// edge k-x, or 0 when no such edge exists. Vertices of degree 0 contribute
/// nothing. O(|V| log d) per pair; used as a reference, not in the pipeline.
double sigma_full(const Graph& g, const EdgeCentralities& c, VertexId i, VertexId j,
                  SigmaNormalization norm = SigmaNormalization::degree);

/// Proximity of the endpoints of edge e from their neighborhoods: the
/// averaged squared centralities over N(i)\CN, N(j)\CN, and the averaged
/// squared differences over CN(i, j), with i and j themselves excluded and
/// empty sets contributing 0.
double sigma_edge(const Graph& g, const EdgeCentralities& c, EdgeId e);

/// w_e = clamp(1 − sigma_edge(e), 0, 1) for every edge, on `workers` OpenMP
/// threads (0 = runtime default).
EdgeWeights edge_distances(const Graph& g, const EdgeCentralities& c, int workers = 0);

/// Single-threaded reference for edge_distances.
EdgeWeights edge_distances_serial(const Graph& g, const EdgeCentralities& c);

}  // namespace conclude
