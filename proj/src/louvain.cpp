#include "conclude/louvain.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace conclude {

WeightedGraph WeightedGraph::from_graph(const Graph& g, const EdgeWeights& w) {
  if (w.values.size() != g.edge_count()) throw Error("weights do not cover the edge set");
  std::vector<std::vector<Arc>> adj(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto nb = g.neighbors(v);
    adj[v].reserve(nb.size());
    for (const auto& a : nb) {
      const double x = w.values[a.edge];
      if (!(x >= 0.0) || !std::isfinite(x)) throw Error("edge weights must be finite and >= 0");
      adj[v].push_back({a.target, x});
    }
  }
  return from_adjacency(std::move(adj), std::vector<double>(g.vertex_count(), 0.0));
}

WeightedGraph WeightedGraph::from_adjacency(std::vector<std::vector<Arc>> adjacency,
                                            std::vector<double> self_loops) {
  const std::size_t n = adjacency.size();
  if (self_loops.size() != n) throw Error("self-loop vector does not match vertex count");
  WeightedGraph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + adjacency[v].size();
  g.arcs_.reserve(g.offsets_[n]);
  g.strength_.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = adjacency[v];
    std::sort(list.begin(), list.end(),
              [](const Arc& a, const Arc& b) { return a.target < b.target; });
    double s = self_loops[v];
    for (const auto& a : list) {
      if (a.target == v || a.target >= n) throw Error("invalid arc in weighted adjacency");
      s += a.weight;
      g.arcs_.push_back(a);
    }
    g.strength_[v] = s;
  }
  g.self_loop_ = std::move(self_loops);
  // Summed in vertex order so the value is reproducible.
  g.total_ = std::accumulate(g.strength_.begin(), g.strength_.end(), 0.0);
  return g;
}

double modularity(const WeightedGraph& g, std::span<const CommunityId> community) {
  const std::size_t n = g.vertex_count();
  if (community.size() != n) throw Error("partition does not cover the graph");
  const double two_m = g.total_strength();
  if (!(two_m > 0.0)) throw Error("modularity is undefined when all weights are zero");
  const auto q = n == 0 ? 0 : *std::max_element(community.begin(), community.end()) + 1;
  std::vector<double> internal(q, 0.0), total(q, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    const auto c = community[v];
    total[c] += g.strength(v);
    internal[c] += g.self_loop(v);
    for (const auto& a : g.neighbors(v))
      if (community[a.target] == c) internal[c] += a.weight;
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < q; ++c) {
    const double t = total[c] / two_m;
    sum += internal[c] / two_m - t * t;
  }
  return sum;
}

double modularity(const Graph& g, const EdgeWeights& w, const Partition& p) {
  if (p.size() != g.vertex_count()) throw Error("partition does not cover the graph");
  return modularity(WeightedGraph::from_graph(g, w), p.assignment());
}

LouvainState::LouvainState(WeightedGraph g) : graph_(std::move(g)) {
  const std::size_t n = graph_.vertex_count();
  community_.resize(n);
  std::iota(community_.begin(), community_.end(), CommunityId{0});
  size_.assign(n, 1);
  internal_.resize(n);
  total_.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    internal_[v] = graph_.self_loop(v);
    total_[v] = graph_.strength(v);
  }
  origin_.resize(n);
  std::iota(origin_.begin(), origin_.end(), VertexId{0});
}

LouvainState::LouvainState(WeightedGraph g, std::span<const CommunityId> communities)
    : LouvainState(std::move(g)) {
  const std::size_t n = vertex_count();
  if (communities.size() != n) throw Error("partition does not cover the graph");
  for (auto c : communities)
    if (c >= n) throw Error("community id out of range");
  std::fill(size_.begin(), size_.end(), 0);
  std::fill(internal_.begin(), internal_.end(), 0.0);
  std::fill(total_.begin(), total_.end(), 0.0);
  std::copy(communities.begin(), communities.end(), community_.begin());
  for (VertexId v = 0; v < n; ++v) {
    const auto c = community_[v];
    ++size_[c];
    total_[c] += graph_.strength(v);
    internal_[c] += graph_.self_loop(v);
    for (const auto& a : graph_.neighbors(v))
      if (community_[a.target] == c) internal_[c] += a.weight;
  }
}

double LouvainState::weight_to(VertexId v, CommunityId c) const {
  double w = 0.0;
  for (const auto& a : graph_.neighbors(v))
    if (community_[a.target] == c) w += a.weight;
  return w;
}

double LouvainState::delta_q(VertexId v, CommunityId c) const {
  if (v >= vertex_count()) throw std::out_of_range("vertex id out of range");
  if (c >= vertex_count() || size_[c] == 0) throw Error("target community does not exist");
  if (size_[community_[v]] != 1) throw Error("delta_q requires an isolated vertex");
  if (c == community_[v]) return 0.0;
  const double two_m = graph_.total_strength();
  const double m = two_m / 2.0;
  return weight_to(v, c) / m - total_[c] * graph_.strength(v) / (2.0 * m * m);
}

void LouvainState::detach(VertexId v, double w_own) {
  const auto c = community_[v];
  --size_[c];
  total_[c] -= graph_.strength(v);
  internal_[c] -= 2.0 * w_own + graph_.self_loop(v);
}

void LouvainState::attach(VertexId v, CommunityId c, double w_to) {
  community_[v] = c;
  ++size_[c];
  total_[c] += graph_.strength(v);
  internal_[c] += 2.0 * w_to + graph_.self_loop(v);
}

void LouvainState::isolate(VertexId v) {
  if (v >= vertex_count()) throw std::out_of_range("vertex id out of range");
  if (size_[community_[v]] == 1) return;
  // With n ids and a community holding >= 2 members, an empty id exists.
  auto empty = static_cast<CommunityId>(std::find(size_.begin(), size_.end(), 0) - size_.begin());
  move(v, empty);
}

void LouvainState::move(VertexId v, CommunityId c) {
  if (v >= vertex_count()) throw std::out_of_range("vertex id out of range");
  if (c >= vertex_count()) throw Error("community id out of range");
  if (c == community_[v]) return;
  detach(v, weight_to(v, community_[v]));
  attach(v, c, weight_to(v, c));
}

double LouvainState::modularity() const {
  const double two_m = graph_.total_strength();
  if (!(two_m > 0.0)) throw Error("modularity is undefined when all weights are zero");
  double sum = 0.0;
  for (std::size_t c = 0; c < vertex_count(); ++c) {
    if (size_[c] == 0) continue;
    const double t = total_[c] / two_m;
    sum += internal_[c] / two_m - t * t;
  }
  return sum;
}

std::size_t LouvainState::nonempty_communities() const {
  return static_cast<std::size_t>(
      std::count_if(size_.begin(), size_.end(), [](std::size_t s) { return s > 0; }));
}

Partition LouvainState::induced_partition() const {
  std::vector<std::uint32_t> raw(origin_.size());
  for (std::size_t x = 0; x < origin_.size(); ++x) raw[x] = community_[origin_[x]];
  return Partition::from_assignment(raw);
}

bool local_move_phase(LouvainState& state, std::span<const VertexId> order) {
  const auto& g = state.graph();
  const std::size_t n = g.vertex_count();
  const double two_m = g.total_strength();
  if (!(two_m > 0.0)) throw Error("modularity is undefined when all weights are zero");

  std::vector<double> link(n, 0.0);
  std::vector<CommunityId> touched;
  touched.reserve(64);
  bool changed = false;

  for (bool moved = true; moved;) {
    moved = false;
    for (VertexId v : order) {
      const CommunityId own = state.community_[v];
      const double k = g.strength(v);

      touched.clear();
      for (const auto& a : g.neighbors(v)) {
        const auto c = state.community_[a.target];
        if (link[c] == 0.0 && std::find(touched.begin(), touched.end(), c) == touched.end())
          touched.push_back(c);
        link[c] += a.weight;
      }
      const double w_own = link[own];
      state.detach(v, w_own);

      // Gains scaled by m: k_v^C - total(C) k_v / 2m.
      auto gain = [&](CommunityId c) { return link[c] - state.total_[c] * k / two_m; };
      const double eps = 1e-12 * std::max(k, 1e-300);
      CommunityId best = own;
      double best_gain = gain(own);
      for (auto c : touched) {
        if (c == own) continue;
        const double gc = gain(c);
        if (gc > best_gain + eps) {
          best = c;
          best_gain = gc;
        } else if (best != own && gc >= best_gain - eps && c < best) {
          best = c;
        }
      }
      state.attach(v, best, link[best]);
      if (best != own) moved = changed = true;
      for (auto c : touched) link[c] = 0.0;
    }
  }
  return changed;
}

LouvainState aggregate(const LouvainState& state) {
  const auto& g = state.graph();
  const std::size_t n = g.vertex_count();
  std::vector<CommunityId> dense(n, 0);
  std::size_t q = 0;
  for (std::size_t c = 0; c < n; ++c)
    if (state.size_[c] > 0) dense[c] = static_cast<CommunityId>(q++);

  std::vector<std::vector<VertexId>> members(q);
  for (VertexId v = 0; v < n; ++v) members[dense[state.community_[v]]].push_back(v);

  std::vector<std::vector<WeightedGraph::Arc>> adjacency(q);
  std::vector<double> self(q, 0.0);
  std::vector<double> link(q, 0.0);
  std::vector<CommunityId> touched;
  for (CommunityId c = 0; c < q; ++c) {
    touched.clear();
    for (VertexId v : members[c]) {
      self[c] += g.self_loop(v);
      for (const auto& a : g.neighbors(v)) {
        const auto d = dense[state.community_[a.target]];
        if (d == c) {
          self[c] += a.weight;
          continue;
        }
        if (std::find(touched.begin(), touched.end(), d) == touched.end()) touched.push_back(d);
        link[d] += a.weight;
      }
    }
    for (auto d : touched) {
      adjacency[c].push_back({d, link[d]});
      link[d] = 0.0;
    }
  }

  LouvainState next(WeightedGraph::from_adjacency(std::move(adjacency), std::move(self)));
  next.origin_.resize(state.origin_.size());
  for (std::size_t x = 0; x < state.origin_.size(); ++x)
    next.origin_[x] = dense[state.community_[state.origin_[x]]];
  return next;
}

namespace {

std::vector<VertexId> sweep_order(std::size_t n, const LouvainOptions& options, unsigned level) {
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  if (options.shuffle) {
    auto rng = WalkRng::for_walk(options.seed, level);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  }
  return order;
}

}  // namespace

LouvainResult louvain(const WeightedGraph& g, const LouvainOptions& options) {
  if (!(g.total_strength() > 0.0))
    throw Error("modularity is undefined when all weights are zero");
  using clock = std::chrono::steady_clock;

  LouvainResult result;
  LouvainState state(g);
  double q_prev = state.modularity();
  for (unsigned level = 0;; ++level) {
    const auto t0 = clock::now();
    auto order = sweep_order(state.vertex_count(), options, level);
    const bool changed = local_move_phase(state, order);
    if (!changed) break;
    ++result.levels;
    const double q = state.modularity();
    result.level_modularity.push_back(q);
    const bool done = q - q_prev < options.min_gain;
    if (!done) state = aggregate(state);
    result.level_seconds.push_back(std::chrono::duration<double>(clock::now() - t0).count());
    if (done) break;
    q_prev = q;
  }
  result.partition = state.induced_partition();
  result.modularity = modularity(g, result.partition.assignment());
  return result;
}

LouvainResult louvain(const Graph& g, const EdgeWeights& w, const LouvainOptions& options) {
  return louvain(WeightedGraph::from_graph(g, w), options);
}

std::pair<Partition, double> brute_force_best_partition(const Graph& g, const EdgeWeights& w) {
  const std::size_t n = g.vertex_count();
  if (n > 10) throw Error("brute-force partition search is limited to 10 vertices");
  if (g.edge_count() == 0) throw Error("modularity is undefined on a graph without edges");
  const auto wg = WeightedGraph::from_graph(g, w);
  const double two_m = wg.total_strength();
  if (!(two_m > 0.0)) throw Error("modularity is undefined when all weights are zero");

  // B_ij = A_ij - k_i k_j / 2m; Q = Σ_{same community} B_ij / 2m.
  std::vector<double> b(n * n, 0.0);
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = 0; j < n; ++j) b[i * n + j] = -wg.strength(i) * wg.strength(j) / two_m;
    b[i * n + i] += wg.self_loop(i);
    for (const auto& a : wg.neighbors(i)) b[i * n + a.target] += a.weight;
  }

  // Restricted growth strings enumerate every set partition exactly once.
  std::vector<CommunityId> rgs(n, 0), prefix_max(n, 0), best_rgs(n, 0);
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rgs[i] == rgs[j]) sum += b[i * n + j];
    const double q = sum / two_m;
    if (q > best) {
      best = q;
      best_rgs = rgs;
    }
    // Advance to the next restricted growth string; rgs[i] may grow to at
    // most one past the largest id used before position i.
    bool advanced = false;
    for (std::size_t i = n; i-- > 1;) {
      if (rgs[i] <= prefix_max[i - 1]) {
        ++rgs[i];
        prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
          rgs[j] = 0;
          prefix_max[j] = prefix_max[i];
        }
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return {Partition::from_assignment(best_rgs), best};
}

}  // namespace conclude
