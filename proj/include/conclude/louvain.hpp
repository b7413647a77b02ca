#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "conclude/distance.hpp"
#include "conclude/graph.hpp"

namespace conclude {

/// Undirected weighted graph with self-loops; the working form for Louvain.
///
/// `self_loop(v)` is the diagonal entry A_vv as it enters the strength sum, so
/// strength(v) = Σ_arcs w + self_loop(v) and total_strength() = 2m.
class WeightedGraph {
 public:
  struct Arc {
    VertexId target;
    double weight;
  };

  WeightedGraph() = default;
  static WeightedGraph from_graph(const Graph& g, const EdgeWeights& w);

  /// `adjacency[v]` lists (target, weight) with target != v; each undirected
  /// edge must appear in both endpoint lists with the same weight.
  static WeightedGraph from_adjacency(std::vector<std::vector<Arc>> adjacency,
                                      std::vector<double> self_loops);

  std::size_t vertex_count() const noexcept { return strength_.size(); }
  std::span<const Arc> neighbors(VertexId v) const {
    return {arcs_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  double self_loop(VertexId v) const { return self_loop_[v]; }
  double strength(VertexId v) const { return strength_[v]; }
  double total_strength() const noexcept { return total_; }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
  std::vector<double> self_loop_;
  std::vector<double> strength_;
  double total_ = 0.0;
};

/// Weighted modularity of `p` on g with A_ij = w_ij.
double modularity(const Graph& g, const EdgeWeights& w, const Partition& p);

/// Modularity on a working graph; self-loops count on the diagonal.
double modularity(const WeightedGraph& g, std::span<const CommunityId> community);

/// Community bookkeeping for one Louvain level.
///
/// Community ids live in 0..n-1; a community may be empty. `internal(C)` is
/// Σ_{i,j∈C} A_ij over ordered pairs (so twice the internal edge weight plus
/// self-loops) and `total(C)` is the summed strength of C's members.
class LouvainState {
 public:
  explicit LouvainState(WeightedGraph g);
  LouvainState(WeightedGraph g, std::span<const CommunityId> communities);

  const WeightedGraph& graph() const noexcept { return graph_; }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }

  CommunityId community(VertexId v) const { return community_[v]; }
  std::span<const CommunityId> communities() const noexcept { return community_; }
  std::size_t community_size(CommunityId c) const { return size_[c]; }
  double internal(CommunityId c) const { return internal_[c]; }
  double total(CommunityId c) const { return total_[c]; }
  double strength(VertexId v) const { return graph_.strength(v); }

  /// k_i^C: weight of arcs from v into C, excluding v's self-loop.
  double weight_to(VertexId v, CommunityId c) const;

  /// Exact change in modularity from inserting isolated vertex `v` into
  /// community `c`. Throws if v is not alone or c is empty.
  double delta_q(VertexId v, CommunityId c) const;

  /// Moves v into an empty community of its own; no-op if already alone.
  void isolate(VertexId v);
  /// Moves v into community c (which may be empty).
  void move(VertexId v, CommunityId c);

  double modularity() const;
  std::size_t nonempty_communities() const;

  /// Partition of the original input vertices implied by this level.
  Partition induced_partition() const;
  /// Map from original vertices to vertices of the current graph.
  std::span<const VertexId> origin() const noexcept { return origin_; }

 private:
  friend LouvainState aggregate(const LouvainState& state);

  void detach(VertexId v, double w_own);
  void attach(VertexId v, CommunityId c, double w_to);

  WeightedGraph graph_;
  std::vector<CommunityId> community_;
  std::vector<std::size_t> size_;
  std::vector<double> internal_;
  std::vector<double> total_;
  std::vector<VertexId> origin_;
  friend bool local_move_phase(LouvainState&, std::span<const VertexId>);
};

/// Sweeps `order` repeatedly, moving each vertex to the neighboring community
/// with the largest positive gain (ties to the lowest id) until a full sweep
/// moves nothing. Returns whether any vertex moved.
bool local_move_phase(LouvainState& state, std::span<const VertexId> order);

/// Collapses every non-empty community to one vertex. Communities are
/// renumbered in ascending id order; intra-community weight becomes a
/// self-loop so total strength is preserved. The result starts as singletons.
LouvainState aggregate(const LouvainState& state);

struct LouvainOptions {
  double min_gain = 1e-6;
  std::uint64_t seed = 0;
  /// Sweep vertices in a seed-shuffled order instead of ascending id.
  bool shuffle = false;
};

struct LouvainResult {
  Partition partition;
  double modularity = 0.0;
  /// Outer iterations that moved at least one vertex.
  unsigned levels = 0;
  std::vector<double> level_modularity;
  std::vector<double> level_seconds;
};

LouvainResult louvain(const Graph& g, const EdgeWeights& w, const LouvainOptions& options = {});
LouvainResult louvain(const WeightedGraph& g, const LouvainOptions& options = {});

/// Globally optimal partition by enumerating every set partition. n <= 10.
std::pair<Partition, double> brute_force_best_partition(const Graph& g, const EdgeWeights& w);

}  // namespace conclude
