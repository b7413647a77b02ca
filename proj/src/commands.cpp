#include "conclude/commands.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

#include "conclude/pipeline.hpp"

namespace conclude {

namespace fs = std::filesystem;

namespace {

// Collects every output in memory and publishes them together, so a failed
// run leaves no files behind.
class StagedOutputs {
 public:
  explicit StagedOutputs(fs::path dir) : dir_(std::move(dir)) {}

  void add(const std::string& name, std::string content) {
    files_.emplace_back(name, std::move(content));
  }

  void commit() {
    fs::create_directories(dir_);
    std::vector<fs::path> temps;
    try {
      for (const auto& [name, content] : files_) {
        auto tmp = dir_ / ("." + name + ".tmp" + std::to_string(::getpid()));
        temps.push_back(tmp);
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << content;
        f.close();
        if (!f) throw Error("cannot write " + tmp.string());
      }
      for (std::size_t i = 0; i < files_.size(); ++i)
        fs::rename(temps[i], dir_ / files_[i].first);
    } catch (...) {
      std::error_code ec;
      for (const auto& t : temps) fs::remove(t, ec);
      throw;
    }
  }

 private:
  fs::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

ParsedGraph load_graph(const RunConfig& cfg) {
  std::ifstream in(cfg.input);
  if (!in) throw Error("cannot open input file " + cfg.input.string());
  return parse_edge_list(in, cfg.directed);
}

LabeledPartition load_partition(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open partition file " + path.string());
  return read_partition(in);
}

const char* seed_source_name(SeedSource s) {
  switch (s) {
    case SeedSource::flag: return "flag";
    case SeedSource::environment: return "env";
    case SeedSource::fixed_default: break;
  }
  return "default";
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void report_parse(const ParsedGraph& pg, const RunConfig& cfg, std::ostream& err) {
  if (cfg.directed)
    err << "warning: directed input symmetrized (" << pg.report.reciprocal_arcs
        << " reciprocal arc pairs merged)\n";
  if (pg.report.self_loops > 0 || pg.report.duplicates > 0)
    err << "note: dropped " << pg.report.self_loops << " self-loops and "
        << pg.report.duplicates << " duplicate edges\n";
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

void apply_seed_environment(RunConfig& cfg) {
  if (cfg.seed_source == SeedSource::flag) return;
  const char* raw = std::getenv(kSeedEnvVar);
  if (raw == nullptr || *raw == '\0') return;
  std::string_view s(raw);
  std::uint64_t seed = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(std::string(kSeedEnvVar) + " is not an unsigned integer: " + raw);
  cfg.seed = seed;
  cfg.seed_source = SeedSource::environment;
}

int cmd_cluster(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto started = std::chrono::steady_clock::now();
    auto pg = load_graph(cfg);
    report_parse(pg, cfg, err);
    const Graph& g = pg.graph;

    PipelineOptions opts{cfg.kappa, cfg.rho, cfg.rho_multiplier, cfg.seed, cfg.min_gain,
                         cfg.workers};
    const auto result = run_pipeline(g, opts);
    const auto& lr = result.clustering;
    if (lr.levels > 5)
      err << "warning: Louvain needed " << lr.levels << " outer iterations\n";

    std::ostringstream partition, weights, centralities, summary;
    write_partition(partition, lr.partition, g.labels());
    write_edge_values(weights, g, result.weights.values);
    write_edge_values(centralities, g, result.centralities.values);

    std::string levels;
    for (std::size_t i = 0; i < lr.level_modularity.size(); ++i)
      levels += (i ? "," : "") + fmt(lr.level_modularity[i]);
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    summary << "command=cluster\n"
            << "input=" << cfg.input.string() << '\n'
            << "directed=" << (cfg.directed ? 1 : 0) << '\n'
            << "kappa=" << cfg.kappa << '\n'
            << "rho=" << result.centralities.rho << '\n'
            << "rho_multiplier=" << (cfg.rho ? std::string("none") : fmt(cfg.rho_multiplier)) << '\n'
            << "seed=" << cfg.seed << '\n'
            << "seed_source=" << seed_source_name(cfg.seed_source) << '\n'
            << "min_gain=" << fmt(cfg.min_gain) << '\n'
            << "vertices=" << g.vertex_count() << '\n'
            << "edges=" << g.edge_count() << '\n'
            << "self_loops_dropped=" << pg.report.self_loops << '\n'
            << "duplicates_dropped=" << pg.report.duplicates << '\n'
            << "modularity=" << fmt(result.modularity) << '\n'
            << "weighted_modularity=" << fmt(lr.modularity) << '\n'
            << "communities=" << lr.partition.community_count() << '\n'
            << "levels=" << lr.levels << '\n'
            << "level_modularity=" << levels << '\n'
            << "time_centrality_s=" << fmt(result.seconds_centrality) << '\n'
            << "time_distance_s=" << fmt(result.seconds_distance) << '\n'
            << "time_louvain_s=" << fmt(result.seconds_louvain) << '\n'
            << "time_total_s=" << fmt(total) << '\n';

    StagedOutputs staged(cfg.out_dir);
    staged.add("partition.tsv", partition.str());
    staged.add("weights.tsv", weights.str());
    staged.add("centralities.tsv", centralities.str());
    staged.add("summary.txt", summary.str());
    staged.commit();
    out << summary.str();
    return 0;
  });
}

std::vector<HistogramBin> log_histogram(std::span<const double> values, unsigned bins_per_decade) {
  if (bins_per_decade == 0) throw Error("bins_per_decade must be >= 1");
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (double v : values) {
    if (!(v > 0.0)) continue;
    lo = any ? std::min(lo, v) : v;
    hi = any ? std::max(hi, v) : v;
    any = true;
  }
  if (!any) return {};
  const int lo_exp = static_cast<int>(std::floor(std::log10(lo)));
  const int hi_exp = static_cast<int>(std::floor(std::log10(hi))) + 1;
  const auto nbins = static_cast<std::size_t>(hi_exp - lo_exp) * bins_per_decade;
  const double bpd = bins_per_decade;

  std::vector<HistogramBin> bins(nbins);
  for (std::size_t k = 0; k < nbins; ++k) {
    bins[k].lower = std::pow(10.0, lo_exp + static_cast<double>(k) / bpd);
    bins[k].upper = std::pow(10.0, lo_exp + static_cast<double>(k + 1) / bpd);
    bins[k].probability = 0.0;
  }
  const double share = 1.0 / static_cast<double>(values.size());
  for (double v : values) {
    if (!(v > 0.0)) continue;
    auto k = static_cast<std::ptrdiff_t>(std::floor((std::log10(v) - lo_exp) * bpd));
    k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(nbins) - 1);
    // Rounding in log10 can land a value one bin off its edge.
    auto idx = static_cast<std::size_t>(k);
    if (v < bins[idx].lower && idx > 0) --idx;
    else if (v >= bins[idx].upper && idx + 1 < nbins) ++idx;
    bins[idx].probability += share;
  }
  return bins;
}

int cmd_centrality_hist(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.kappas.empty()) throw Error("at least one kappa is required");
    for (auto k : cfg.kappas)
      if (k == 0) throw Error("kappa values must be >= 1");
    auto pg = load_graph(cfg);
    report_parse(pg, cfg, err);
    const Graph& g = pg.graph;
    PipelineOptions opts;
    opts.rho = cfg.rho;
    opts.rho_multiplier = cfg.rho_multiplier;
    const auto rho = resolve_rho(g, opts);

    StagedOutputs staged(cfg.out_dir);
    for (auto kappa : cfg.kappas) {
      const auto c = erw_kpath(g, {kappa, rho, cfg.seed}, cfg.workers);
      std::ostringstream hist, values;
      hist << "bin_lower,bin_upper,probability\n";
      std::size_t zeros = 0;
      for (double v : c.values) zeros += !(v > 0.0);
      for (const auto& b : log_histogram(c.values))
        hist << fmt(b.lower) << ',' << fmt(b.upper) << ',' << fmt(b.probability) << '\n';
      write_edge_values(values, g, c.values);
      const auto k = std::to_string(kappa);
      staged.add("centrality_hist_k" + k + ".csv", hist.str());
      staged.add("centralities_k" + k + ".tsv", values.str());
      out << "kappa=" << kappa << " rho=" << rho << " seed=" << cfg.seed
          << " zero_centrality_edges=" << zeros << '\n';
    }
    staged.commit();
    return 0;
  });
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.ground_truth.empty()) throw Error("a ground-truth partition is required");
    const auto found = load_partition(cfg.input);
    const auto truth = load_partition(cfg.ground_truth);
    if (found.labels != truth.labels)
      throw Error("partition and ground truth cover different vertex labels");
    if (found.labels.empty()) throw Error("partitions are empty");
    const auto cm = confusion_matrix(truth.partition, found.partition);
    out << "nmi=" << fmt(nmi(truth.partition, found.partition)) << '\n'
        << "vertices=" << cm.total() << '\n'
        << "confusion_rows=" << cm.rows() << '\n'
        << "confusion_cols=" << cm.cols() << '\n';
    return 0;
  });
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto pg = planted_partition(cfg.synthetic);
    std::ostringstream graph, truth;
    graph << "# planted partition n=" << cfg.synthetic.n << " q=" << cfg.synthetic.q
          << " p_in=" << fmt(cfg.synthetic.p_in) << " p_out=" << fmt(cfg.synthetic.p_out)
          << " seed=" << cfg.synthetic.seed << '\n';
    write_edge_list(graph, pg.graph);
    // Isolated vertices cannot appear in an edge list, so the ground truth
    // is restricted to the vertices that do.
    std::vector<Label> kept_labels;
    std::vector<std::uint32_t> kept;
    for (VertexId v = 0; v < pg.graph.vertex_count(); ++v) {
      if (pg.graph.degree(v) == 0) continue;
      kept_labels.push_back(pg.graph.label(v));
      kept.push_back(pg.truth[v]);
    }
    write_partition(truth, Partition::from_assignment(kept), kept_labels);
    if (pg.isolated_vertices > 0)
      err << "note: " << pg.isolated_vertices
          << " isolated vertices omitted from graph.txt and ground_truth.tsv\n";

    StagedOutputs staged(cfg.out_dir);
    staged.add("graph.txt", graph.str());
    staged.add("ground_truth.tsv", truth.str());
    staged.commit();
    out << "vertices=" << pg.graph.vertex_count() << '\n'
        << "edges=" << pg.graph.edge_count() << '\n'
        << "intra_edges=" << pg.intra_edges << '\n'
        << "inter_edges=" << pg.inter_edges << '\n'
        << "isolated_vertices=" << pg.isolated_vertices << '\n';
    return 0;
  });
}

}  // namespace conclude
