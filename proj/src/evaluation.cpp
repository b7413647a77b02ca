#include "conclude/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conclude/kpath.hpp"

namespace conclude {

std::size_t ConfusionMatrix::at(CommunityId row, CommunityId col) const {
  if (row >= rows() || col >= cols()) throw std::out_of_range("confusion cell out of range");
  auto it = std::lower_bound(cells_.begin(), cells_.end(), std::pair{row, col},
                             [](const Cell& c, std::pair<CommunityId, CommunityId> key) {
                               return std::pair{c.row, c.col} < key;
                             });
  return (it != cells_.end() && it->row == row && it->col == col) ? it->count : 0;
}

ConfusionMatrix confusion_matrix(const Partition& reference, const Partition& found) {
  if (reference.size() != found.size())
    throw Error("partitions cover different vertex sets");
  ConfusionMatrix cm;
  cm.row_sums_.assign(reference.community_count(), 0);
  cm.col_sums_.assign(found.community_count(), 0);
  cm.total_ = reference.size();

  std::vector<std::pair<CommunityId, CommunityId>> pairs(reference.size());
  for (VertexId v = 0; v < reference.size(); ++v) {
    pairs[v] = {reference[v], found[v]};
    ++cm.row_sums_[reference[v]];
    ++cm.col_sums_[found[v]];
  }
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 0; i < pairs.size();) {
    std::size_t j = i;
    while (j < pairs.size() && pairs[j] == pairs[i]) ++j;
    cm.cells_.push_back({pairs[i].first, pairs[i].second, j - i});
    i = j;
  }
  return cm;
}

double nmi(const Partition& a, const Partition& b) {
  if (a.size() == 0) throw Error("NMI needs at least one vertex");
  const auto cm = confusion_matrix(a, b);
  const double n = static_cast<double>(cm.total());

  double num = 0.0;
  for (const auto& cell : cm.cells()) {
    const double nij = static_cast<double>(cell.count);
    const double ni = static_cast<double>(cm.row_sum(cell.row));
    const double nj = static_cast<double>(cm.col_sum(cell.col));
    num += nij * std::log(nij * n / (ni * nj));
  }
  num *= -2.0;

  double den = 0.0;
  for (CommunityId i = 0; i < cm.rows(); ++i) {
    const double ni = static_cast<double>(cm.row_sum(i));
    den += ni * std::log(ni / n);
  }
  for (CommunityId j = 0; j < cm.cols(); ++j) {
    const double nj = static_cast<double>(cm.col_sum(j));
    den += nj * std::log(nj / n);
  }
  // Both entropies vanish only when both partitions are a single cluster.
  if (den == 0.0) return 1.0;
  return std::clamp(num / den, 0.0, 1.0);
}

PlantedGraph planted_partition(const SyntheticSpec& spec) {
  if (spec.n == 0) throw Error("planted partition needs n >= 1");
  if (spec.q == 0 || spec.q > spec.n) throw Error("planted partition needs 1 <= q <= n");
  if (!(spec.p_in >= 0.0 && spec.p_in <= 1.0) || !(spec.p_out >= 0.0 && spec.p_out <= 1.0))
    throw Error("edge probabilities must lie in [0, 1]");
  if (spec.p_out > spec.p_in) throw Error("planted partition needs p_out <= p_in");
  if (spec.n > std::numeric_limits<VertexId>::max()) throw Error("too many vertices");

  std::vector<std::uint32_t> block(spec.n);
  for (std::size_t v = 0; v < spec.n; ++v)
    block[v] = static_cast<std::uint32_t>(v * spec.q / spec.n);

  PlantedGraph out;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<char> touched(spec.n, 0);
  WalkRng rng(spec.seed);
  constexpr double kUnit = 0x1.0p-53;
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = i + 1; j < spec.n; ++j) {
      const bool same = block[i] == block[j];
      const double u = static_cast<double>(rng() >> 11) * kUnit;
      if (u >= (same ? spec.p_in : spec.p_out)) continue;
      edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
      ++(same ? out.intra_edges : out.inter_edges);
      touched[i] = touched[j] = 1;
    }
  }
  out.isolated_vertices = static_cast<std::size_t>(std::count(touched.begin(), touched.end(), 0));
  out.graph = Graph::from_edges(static_cast<VertexId>(spec.n), edges);
  out.truth = Partition::from_assignment(block);
  return out;
}

}  // namespace conclude
