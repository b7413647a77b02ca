#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "conclude/graph.hpp"

namespace conclude {

/// Cross-tabulation of a reference partition (rows) against a found
/// partition (columns). Stored sparsely; only non-zero cells are kept.
class ConfusionMatrix {
 public:
  struct Cell {
    CommunityId row;
    CommunityId col;
    std::size_t count;
  };

  std::size_t rows() const noexcept { return row_sums_.size(); }
  std::size_t cols() const noexcept { return col_sums_.size(); }
  std::size_t total() const noexcept { return total_; }
  std::size_t at(CommunityId row, CommunityId col) const;
  std::size_t row_sum(CommunityId row) const { return row_sums_.at(row); }
  std::size_t col_sum(CommunityId col) const { return col_sums_.at(col); }
  /// Non-zero cells sorted by (row, col).
  const std::vector<Cell>& cells() const noexcept { return cells_; }

 private:
  friend ConfusionMatrix confusion_matrix(const Partition&, const Partition&);
  std::vector<Cell> cells_;
  std::vector<std::size_t> row_sums_;
  std::vector<std::size_t> col_sums_;
  std::size_t total_ = 0;
};

ConfusionMatrix confusion_matrix(const Partition& reference, const Partition& found);

/// Normalized mutual information in [0, 1] (natural log, 0·log 0 = 0).
/// Two single-cluster partitions score 1.
double nmi(const Partition& a, const Partition& b);

struct SyntheticSpec {
  std::size_t n = 0;
  std::size_t q = 1;
  double p_in = 0.0;
  double p_out = 0.0;
  std::uint64_t seed = 0;
};

struct PlantedGraph {
  Graph graph;
  Partition truth;
  std::size_t intra_edges = 0;
  std::size_t inter_edges = 0;
  std::size_t isolated_vertices = 0;
};

/// Planted-partition random graph: vertex v belongs to block v*q/n; each
/// intra-block pair is linked with probability p_in, each inter-block pair
/// with p_out. Labels are the dense ids. Deterministic per seed.
PlantedGraph planted_partition(const SyntheticSpec& spec);

}  // namespace conclude
