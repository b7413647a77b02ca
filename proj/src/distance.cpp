#include "conclude/distance.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace conclude {

EdgeWeights EdgeWeights::uniform(const Graph& g, double w) {
  EdgeWeights out;
  out.values.assign(g.edge_count(), w);
  return out;
}

namespace {

void check_centralities(const Graph& g, const EdgeCentralities& c) {
  if (c.values.size() != g.edge_count())
    throw Error("centralities do not cover the edge set of the graph");
}

double centrality_between(const Graph& g, const EdgeCentralities& c, VertexId k, VertexId x) {
  if (k == x) return 0.0;
  auto e = g.find_edge(k, x);
  return e == g.edge_count() ? 0.0 : c.values[e];
}

double clamp_weight(double sigma) { return std::clamp(1.0 - sigma, 0.0, 1.0); }

}  // namespace

double sigma_full(const Graph& g, const EdgeCentralities& c, VertexId i, VertexId j,
                  SigmaNormalization norm) {
  check_centralities(g, c);
  if (i >= g.vertex_count() || j >= g.vertex_count())
    throw std::out_of_range("vertex id out of range");
  if (i == j) throw Error("sigma is defined for distinct vertices");
  double sum = 0.0;
  for (VertexId k = 0; k < g.vertex_count(); ++k) {
    const auto deg = g.degree(k);
    if (deg == 0) continue;
    const double diff = centrality_between(g, c, k, i) - centrality_between(g, c, k, j);
    const double sq = diff * diff;
    sum += norm == SigmaNormalization::degree ? sq / static_cast<double>(deg) : sq;
  }
  return std::sqrt(sum);
}

double sigma_edge(const Graph& g, const EdgeCentralities& c, EdgeId e) {
  auto [i, j] = g.endpoints(e);
  auto ni = g.neighbors(i);
  auto nj = g.neighbors(j);

  double only_i = 0.0, only_j = 0.0, common = 0.0;
  std::size_t n_only_i = 0, n_only_j = 0, n_common = 0;

  // Sorted merge over both adjacency lists.
  std::size_t a = 0, b = 0;
  while (a < ni.size() || b < nj.size()) {
    if (b == nj.size() || (a < ni.size() && ni[a].target < nj[b].target)) {
      if (ni[a].target != j) {
        const double l = c.values[ni[a].edge];
        only_i += l * l;
        ++n_only_i;
      }
      ++a;
    } else if (a == ni.size() || nj[b].target < ni[a].target) {
      if (nj[b].target != i) {
        const double l = c.values[nj[b].edge];
        only_j += l * l;
        ++n_only_j;
      }
      ++b;
    } else {
      const double d = c.values[ni[a].edge] - c.values[nj[b].edge];
      common += d * d;
      ++n_common;
      ++a;
      ++b;
    }
  }

  double total = 0.0;
  if (n_only_i > 0) total += only_i / static_cast<double>(n_only_i);
  if (n_only_j > 0) total += only_j / static_cast<double>(n_only_j);
  if (n_common > 0) total += common / static_cast<double>(n_common);
  return std::sqrt(total);
}

EdgeWeights edge_distances_serial(const Graph& g, const EdgeCentralities& c) {
  check_centralities(g, c);
  if (g.edge_count() == 0) throw Error("edge distances need at least one edge");
  EdgeWeights out{std::vector<double>(g.edge_count()), c.kappa, c.rho, c.seed};
  for (EdgeId e = 0; e < g.edge_count(); ++e) out.values[e] = clamp_weight(sigma_edge(g, c, e));
  return out;
}

EdgeWeights edge_distances(const Graph& g, const EdgeCentralities& c, int workers) {
  check_centralities(g, c);
  if (g.edge_count() == 0) throw Error("edge distances need at least one edge");
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  EdgeWeights out{std::vector<double>(g.edge_count()), c.kappa, c.rho, c.seed};
  const auto m = static_cast<std::int64_t>(g.edge_count());
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1024)
  for (std::int64_t e = 0; e < m; ++e)
    out.values[static_cast<std::size_t>(e)] =
        clamp_weight(sigma_edge(g, c, static_cast<EdgeId>(e)));
  return out;
}

}  // namespace conclude
