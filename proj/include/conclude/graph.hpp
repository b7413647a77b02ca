#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conclude {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using CommunityId = std::uint32_t;
using Label = std::int64_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge-list or partition input. `line()` is 1-based, 0 if unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable undirected graph in CSR form over dense vertex ids 0..n-1.
///
/// Every undirected edge has one id; it appears in the adjacency of both
/// endpoints. Adjacency lists are sorted by neighbor id. Edge ids are assigned
/// in lexicographic (i, j) order with i < j. An optional label table maps
/// dense ids back to the identifiers of the source file.
class Graph {
 public:
  struct Arc {
    VertexId target;
    EdgeId edge;
  };

  Graph() = default;

  /// Builds a graph from undirected edge pairs. Self-loops and repeated
  /// pairs (in either orientation) are rejected with an Error. An empty
  /// `labels` means the identity labelling.
  static Graph from_edges(VertexId n,
                          std::span<const std::pair<VertexId, VertexId>> edges,
                          std::vector<Label> labels = {},
                          bool symmetrized = false);

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return endpoints_.size(); }

  std::size_t degree(VertexId v) const;
  std::span<const Arc> neighbors(VertexId v) const;
  std::pair<VertexId, VertexId> endpoints(EdgeId e) const;

  /// Edge id joining u and v, or edge_count() when they are not adjacent.
  EdgeId find_edge(VertexId u, VertexId v) const;

  std::span<const Label> labels() const noexcept { return labels_; }
  Label label(VertexId v) const { return labels_.at(v); }

  /// True when the source was read as directed and symmetrized.
  bool symmetrized() const noexcept { return symmetrized_; }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
  std::vector<std::pair<VertexId, VertexId>> endpoints_;
  std::vector<Label> labels_;
  bool symmetrized_ = false;
};

/// Counters collected while reading an edge list.
struct ParseReport {
  std::size_t lines = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  /// Directed inputs only: arcs whose reverse arc was also present.
  std::size_t reciprocal_arcs = 0;
};

struct ParsedGraph {
  Graph graph;
  ParseReport report;
};

/// Reads a SNAP-style edge list: '#' comments, one "i j" integer pair per
/// line. Vertices are renumbered densely in order of first appearance.
/// Self-loops and duplicate edges are dropped and counted. Directed inputs
/// are symmetrized.
ParsedGraph parse_edge_list(std::istream& in, bool directed = false);

/// Writes "label_i<TAB>label_j" per edge, one line each, sorted by label pair.
void write_edge_list(std::ostream& out, const Graph& g);

/// Hard partition of vertices 0..n-1 into dense, non-empty community ids.
class Partition {
 public:
  Partition() = default;

  /// Renumbers arbitrary ids densely in order of first appearance.
  static Partition from_assignment(std::span<const std::uint32_t> raw);
  static Partition singletons(std::size_t n);
  static Partition single_community(std::size_t n);

  std::size_t size() const noexcept { return assignment_.size(); }
  std::size_t community_count() const noexcept { return communities_; }
  CommunityId operator[](VertexId v) const { return assignment_[v]; }
  std::span<const CommunityId> assignment() const noexcept { return assignment_; }

  /// Sizes of communities 0..q-1.
  std::vector<std::size_t> community_sizes() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<CommunityId> assignment_;
  std::size_t communities_ = 0;
};

/// One "label<TAB>community" line per vertex, sorted by label.
void write_partition(std::ostream& out, const Partition& p, std::span<const Label> labels);

/// A partition read back from TSV, keyed by label.
struct LabeledPartition {
  std::vector<Label> labels;  // sorted ascending
  Partition partition;        // indexed parallel to `labels`
};

LabeledPartition read_partition(std::istream& in);

}  // namespace conclude
