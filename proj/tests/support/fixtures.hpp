#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "conclude/distance.hpp"
#include "conclude/graph.hpp"

namespace conclude::testing {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

inline Graph make_graph(VertexId n, const EdgeList& edges) { return Graph::from_edges(n, edges); }

inline Graph k2() { return make_graph(2, {{0, 1}}); }
inline Graph path3() { return make_graph(3, {{0, 1}, {1, 2}}); }
inline Graph triangle() { return make_graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
/// Center 0 with leaves 1, 2, 3.
inline Graph star4() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}}); }
inline Graph two_triangles() {
  return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}
/// Triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline Graph two_triangles_bridge() {
  return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

/// G(n, p) with at least one edge.
inline Graph random_graph(VertexId n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  EdgeList edges;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  if (edges.empty() && n >= 2) edges.emplace_back(0, 1);
  return make_graph(n, edges);
}

inline EdgeWeights random_weights(const Graph& g, std::mt19937_64& rng, double lo = 0.05,
                                  double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  EdgeWeights w;
  for (std::size_t e = 0; e < g.edge_count(); ++e) w.values.push_back(u(rng));
  return w;
}

inline Partition random_partition(std::size_t n, std::size_t max_communities,
                                  std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(
      0, static_cast<std::uint32_t>(std::max<std::size_t>(max_communities, 1) - 1));
  std::vector<std::uint32_t> raw(n);
  for (auto& c : raw) c = pick(rng);
  return Partition::from_assignment(raw);
}

/// Average ranks, ties sharing the mean rank.
inline std::vector<double> ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && x[idx[j]] == x[idx[i]]) ++j;
    const double mean = (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0 + 1.0;
    for (std::size_t k = i; k < j; ++k) r[idx[k]] = mean;
    i = j;
  }
  return r;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  return pearson(ranks(a), ranks(b));
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace conclude::testing
