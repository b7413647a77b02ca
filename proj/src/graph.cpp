#include "conclude/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <string_view>
#include <unordered_map>

namespace conclude {

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

Graph Graph::from_edges(VertexId n, std::span<const std::pair<VertexId, VertexId>> edges,
                        std::vector<Label> labels, bool symmetrized) {
  if (labels.empty()) {
    labels.resize(n);
    std::iota(labels.begin(), labels.end(), Label{0});
  }
  if (labels.size() != n) throw Error("label table size does not match vertex count");

  std::vector<std::pair<VertexId, VertexId>> canon;
  canon.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw Error("edge endpoint out of range");
    if (u == v) throw Error("self-loop on vertex " + std::to_string(u));
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  if (std::adjacent_find(canon.begin(), canon.end()) != canon.end())
    throw Error("duplicate edge");

  Graph g;
  g.labels_ = std::move(labels);
  g.symmetrized_ = symmetrized;
  g.endpoints_ = std::move(canon);

  std::vector<std::size_t> deg(n + 1, 0);
  for (auto [u, v] : g.endpoints_) {
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (VertexId v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.arcs_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v); filling in that order leaves every list sorted
  // for the lower endpoint but not the upper one, so sort afterwards.
  for (EdgeId e = 0; e < g.endpoints_.size(); ++e) {
    auto [u, v] = g.endpoints_[e];
    g.arcs_[cursor[u]++] = {v, e};
    g.arcs_[cursor[v]++] = {u, e};
  }
  for (VertexId v = 0; v < n; ++v) {
    std::sort(g.arcs_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.arcs_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const Arc& a, const Arc& b) { return a.target < b.target; });
  }
  return g;
}

std::size_t Graph::degree(VertexId v) const {
  if (v >= vertex_count()) throw std::out_of_range("vertex id out of range");
  return offsets_[v + 1] - offsets_[v];
}

std::span<const Graph::Arc> Graph::neighbors(VertexId v) const {
  if (v >= vertex_count()) throw std::out_of_range("vertex id out of range");
  return {arcs_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::pair<VertexId, VertexId> Graph::endpoints(EdgeId e) const { return endpoints_.at(e); }

EdgeId Graph::find_edge(VertexId u, VertexId v) const {
  auto adj = neighbors(u);
  auto it = std::lower_bound(adj.begin(), adj.end(), v,
                             [](const Arc& a, VertexId t) { return a.target < t; });
  if (it != adj.end() && it->target == v) return it->edge;
  return static_cast<EdgeId>(edge_count());
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\v\f";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Splits on runs of blanks; returns false if there are not exactly `want` tokens.
bool split_tokens(std::string_view s, std::string_view* out, std::size_t want) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos >= s.size()) break;
    auto end = pos;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
    if (count == want) return false;
    out[count++] = s.substr(pos, end - pos);
    pos = end;
  }
  return count == want;
}

template <class T>
bool parse_integer(std::string_view tok, T& value) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

ParsedGraph parse_edge_list(std::istream& in, bool directed) {
  ParseReport report;
  std::unordered_map<Label, VertexId> ids;
  std::vector<Label> labels;
  std::vector<std::pair<VertexId, VertexId>> arcs;

  auto intern = [&](Label l) {
    auto [it, inserted] = ids.try_emplace(l, static_cast<VertexId>(labels.size()));
    if (inserted) labels.push_back(l);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::string_view tok[2];
    if (!split_tokens(body, tok, 2)) throw ParseError("expected two integer tokens", lineno);
    Label a = 0, b = 0;
    if (!parse_integer(tok[0], a) || !parse_integer(tok[1], b))
      throw ParseError("non-integer vertex id", lineno);
    ++report.lines;
    VertexId u = intern(a);
    VertexId v = intern(b);
    if (u == v) {
      ++report.self_loops;
      continue;
    }
    arcs.emplace_back(u, v);
  }
  if (report.lines == 0) throw ParseError("edge list is empty", 0);

  // Collapse orientation; for directed inputs a reciprocal pair is the normal
  // case and is reported separately from true duplicates.
  std::vector<std::pair<std::pair<VertexId, VertexId>, bool>> keyed;
  keyed.reserve(arcs.size());
  for (auto [u, v] : arcs) keyed.push_back({{std::min(u, v), std::max(u, v)}, u < v});
  std::sort(keyed.begin(), keyed.end());

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(keyed.size());
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t j = i;
    std::size_t forward = 0, backward = 0;
    while (j < keyed.size() && keyed[j].first == keyed[i].first) {
      (keyed[j].second ? forward : backward) += 1;
      ++j;
    }
    edges.push_back(keyed[i].first);
    if (directed) {
      if (forward > 0 && backward > 0) ++report.reciprocal_arcs;
      report.duplicates += (forward > 0 ? forward - 1 : 0) + (backward > 0 ? backward - 1 : 0);
    } else {
      report.duplicates += (j - i) - 1;
    }
    i = j;
  }

  auto n = static_cast<VertexId>(labels.size());
  return {Graph::from_edges(n, edges, std::move(labels), directed), report};
}

void write_edge_list(std::ostream& out, const Graph& g) {
  std::vector<std::pair<Label, Label>> rows;
  rows.reserve(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    auto a = g.label(u), b = g.label(v);
    rows.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(rows.begin(), rows.end());
  for (auto [a, b] : rows) out << a << '\t' << b << '\n';
}

Partition Partition::from_assignment(std::span<const std::uint32_t> raw) {
  Partition p;
  p.assignment_.resize(raw.size());
  std::unordered_map<std::uint32_t, CommunityId> remap;
  for (std::size_t v = 0; v < raw.size(); ++v) {
    auto [it, inserted] = remap.try_emplace(raw[v], static_cast<CommunityId>(remap.size()));
    p.assignment_[v] = it->second;
  }
  p.communities_ = remap.size();
  return p;
}

Partition Partition::singletons(std::size_t n) {
  Partition p;
  p.assignment_.resize(n);
  std::iota(p.assignment_.begin(), p.assignment_.end(), CommunityId{0});
  p.communities_ = n;
  return p;
}

Partition Partition::single_community(std::size_t n) {
  Partition p;
  p.assignment_.assign(n, 0);
  p.communities_ = n > 0 ? 1 : 0;
  return p;
}

std::vector<std::size_t> Partition::community_sizes() const {
  std::vector<std::size_t> sizes(communities_, 0);
  for (auto c : assignment_) ++sizes[c];
  return sizes;
}

void write_partition(std::ostream& out, const Partition& p, std::span<const Label> labels) {
  if (labels.size() != p.size()) throw Error("label table does not match partition size");
  std::vector<VertexId> order(p.size());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::sort(order.begin(), order.end(),
            [&](VertexId a, VertexId b) { return labels[a] < labels[b]; });
  for (auto v : order) out << labels[v] << '\t' << p[v] << '\n';
}

LabeledPartition read_partition(std::istream& in) {
  std::vector<std::pair<Label, std::uint32_t>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::string_view tok[2];
    if (!split_tokens(body, tok, 2)) throw ParseError("expected label and community", lineno);
    Label l = 0;
    std::uint32_t c = 0;
    if (!parse_integer(tok[0], l) || !parse_integer(tok[1], c))
      throw ParseError("non-integer field", lineno);
    rows.emplace_back(l, c);
  }
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].first == rows[i - 1].first)
      throw ParseError("label " + std::to_string(rows[i].first) + " listed twice", 0);

  LabeledPartition out;
  std::vector<std::uint32_t> raw;
  out.labels.reserve(rows.size());
  raw.reserve(rows.size());
  for (auto [l, c] : rows) {
    out.labels.push_back(l);
    raw.push_back(c);
  }
  out.partition = Partition::from_assignment(raw);
  return out;
}

}  // namespace conclude
