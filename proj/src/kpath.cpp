#include "conclude/kpath.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <tuple>

namespace conclude {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Visited-edge marks reset in O(1) by bumping the generation.
class WalkScratch {
 public:
  explicit WalkScratch(std::size_t edges) : stamp_(edges, 0) {}

  void next_walk() {
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
  }
  bool visited(EdgeId e) const { return stamp_[e] == generation_; }
  void mark(EdgeId e) { stamp_[e] = generation_; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

// Core walk. `on_edge` is called once per traversed edge, in order.
template <class OnEdge>
void walk(const Graph& g, VertexId start, unsigned kappa, WalkRng& rng, WalkScratch& scratch,
          OnEdge&& on_edge) {
  scratch.next_walk();
  VertexId current = start;
  for (unsigned len = 0; len < kappa; ++len) {
    auto adj = g.neighbors(current);
    const std::size_t d = adj.size();
    if (d == 0) return;
    const Graph::Arc* chosen = nullptr;
    if (d > 2 * static_cast<std::size_t>(len)) {
      // At most `len` incident edges are marked, so more than half are free:
      // rejection sampling terminates quickly and stays uniform.
      do {
        chosen = &adj[rng.below(d)];
      } while (scratch.visited(chosen->edge));
    } else {
      std::size_t free = 0;
      for (const auto& a : adj) free += !scratch.visited(a.edge);
      if (free == 0) return;
      auto pick = rng.below(free);
      for (const auto& a : adj) {
        if (scratch.visited(a.edge)) continue;
        if (pick-- == 0) {
          chosen = &a;
          break;
        }
      }
    }
    scratch.mark(chosen->edge);
    on_edge(chosen->edge);
    current = chosen->target;
  }
}

void check_params(const Graph& g, const KpathParams& p) {
  if (g.edge_count() == 0) throw Error("k-path centrality needs at least one edge");
  if (p.kappa == 0) throw Error("kappa must be >= 1");
  if (p.rho == 0) throw Error("rho must be >= 1");
}

EdgeCentralities finish(std::vector<std::uint64_t> counts, const KpathParams& p) {
  EdgeCentralities out;
  out.values.resize(counts.size());
  const double rho = static_cast<double>(p.rho);
  for (std::size_t e = 0; e < counts.size(); ++e)
    out.values[e] = static_cast<double>(counts[e]) / rho;
  out.traversals = std::move(counts);
  out.kappa = p.kappa;
  out.rho = p.rho;
  out.seed = p.seed;
  return out;
}

void run_one(const Graph& g, const KpathParams& p, std::uint64_t t, WalkScratch& scratch,
             std::vector<std::uint64_t>& counts) {
  auto rng = WalkRng::for_walk(p.seed, t);
  auto start = static_cast<VertexId>(rng.below(g.vertex_count()));
  walk(g, start, p.kappa, rng, scratch, [&](EdgeId e) { ++counts[e]; });
}

}  // namespace

WalkRng WalkRng::for_walk(std::uint64_t seed, std::uint64_t walk) noexcept {
  return WalkRng(mix64(mix64(seed + kGolden) ^ (walk * kGolden)));
}

WalkRng::result_type WalkRng::operator()() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

std::uint64_t WalkRng::below(std::uint64_t bound) noexcept {
  // Lemire's multiply-shift with rejection.
  u128 prod = static_cast<u128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(prod);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      prod = static_cast<u128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(prod);
    }
  }
  return static_cast<std::uint64_t>(prod >> 64);
}

std::uint64_t EdgeCentralities::total_traversals() const {
  return std::accumulate(traversals.begin(), traversals.end(), std::uint64_t{0});
}

WalkTrace simulate_walk(const Graph& g, VertexId start, unsigned kappa, WalkRng& rng) {
  if (start >= g.vertex_count()) throw std::out_of_range("start vertex out of range");
  if (kappa == 0) throw Error("kappa must be >= 1");
  WalkScratch scratch(g.edge_count());
  WalkTrace trace{start, {}};
  walk(g, start, kappa, rng, scratch, [&](EdgeId e) { trace.edges.push_back(e); });
  return trace;
}

EdgeCentralities erw_kpath_serial(const Graph& g, const KpathParams& params) {
  check_params(g, params);
  std::vector<std::uint64_t> counts(g.edge_count(), 0);
  WalkScratch scratch(g.edge_count());
  for (std::uint64_t t = 0; t < params.rho; ++t) run_one(g, params, t, scratch, counts);
  return finish(std::move(counts), params);
}

EdgeCentralities erw_kpath(const Graph& g, const KpathParams& params, int workers) {
  check_params(g, params);
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  const std::size_t m = g.edge_count();
  std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(threads));
  const auto rho = static_cast<std::int64_t>(params.rho);

#pragma omp parallel num_threads(threads)
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
    local.assign(m, 0);
    WalkScratch scratch(m);
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < rho; ++t)
      run_one(g, params, static_cast<std::uint64_t>(t), scratch, local);
  }

  std::vector<std::uint64_t> counts(m, 0);
  for (const auto& local : partial) {
    if (local.empty()) continue;
#pragma omp parallel for num_threads(threads) schedule(static)
    for (std::int64_t e = 0; e < static_cast<std::int64_t>(m); ++e)
      counts[static_cast<std::size_t>(e)] += local[static_cast<std::size_t>(e)];
  }
  return finish(std::move(counts), params);
}

namespace {

struct Enumerator {
  const Graph& g;
  unsigned kappa;
  std::uint64_t cap;
  std::uint64_t expanded = 0;
  std::vector<char> used;
  std::vector<double> acc;

  void expand(VertexId v, unsigned depth, double prob) {
    if (depth == kappa) return;
    if (++expanded > cap)
      throw Error("exact k-path enumeration exceeded its node cap; use the Monte-Carlo estimator");
    auto adj = g.neighbors(v);
    std::size_t free = 0;
    for (const auto& a : adj) free += !used[a.edge];
    if (free == 0) return;
    const double step = prob / static_cast<double>(free);
    for (const auto& a : adj) {
      if (used[a.edge]) continue;
      acc[a.edge] += step;
      used[a.edge] = 1;
      expand(a.target, depth + 1, step);
      used[a.edge] = 0;
    }
  }
};

}  // namespace

EdgeCentralities exact_kpath_centrality(const Graph& g, unsigned kappa, std::uint64_t node_cap) {
  if (g.edge_count() == 0) throw Error("k-path centrality needs at least one edge");
  if (kappa == 0) throw Error("kappa must be >= 1");
  Enumerator en{g, kappa, node_cap, 0, std::vector<char>(g.edge_count(), 0),
                std::vector<double>(g.edge_count(), 0.0)};
  const double start_prob = 1.0 / static_cast<double>(g.vertex_count());
  for (VertexId s = 0; s < g.vertex_count(); ++s) en.expand(s, 0, start_prob);

  EdgeCentralities out;
  out.values = std::move(en.acc);
  out.kappa = kappa;
  return out;
}

void write_edge_values(std::ostream& out, const Graph& g, const std::vector<double>& values) {
  if (values.size() != g.edge_count()) throw Error("value vector does not match edge count");
  struct Row {
    Label a, b;
    double value;
  };
  std::vector<Row> rows;
  rows.reserve(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    auto a = g.label(u), b = g.label(v);
    rows.push_back({std::min(a, b), std::max(a, b), values[e]});
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& x, const Row& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g", r.value);
    out << r.a << '\t' << r.b << '\t' << buf << '\n';
  }
}

}  // namespace conclude
