#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conclude/evaluation.hpp"

namespace conclude {

inline constexpr std::uint64_t kDefaultSeed = 20130817;
inline constexpr const char* kSeedEnvVar = "CONCLUDE_SEED";

enum class SeedSource { fixed_default, environment, flag };

struct RunConfig {
  std::filesystem::path input;
  bool directed = false;
  unsigned kappa = 20;
  std::optional<std::uint64_t> rho;
  double rho_multiplier = 100.0;
  std::uint64_t seed = kDefaultSeed;
  SeedSource seed_source = SeedSource::fixed_default;
  double min_gain = 1e-6;
  std::filesystem::path out_dir = ".";
  int workers = 0;
  std::vector<unsigned> kappas{5, 10, 20};
  std::filesystem::path ground_truth;
  SyntheticSpec synthetic;
};

/// Applies CONCLUDE_SEED to `cfg` unless the seed came from a flag.
/// Throws Error on a malformed value.
void apply_seed_environment(RunConfig& cfg);

/// parse -> centralities -> weights -> Louvain. Writes partition.tsv,
/// weights.tsv, centralities.tsv and summary.txt into out_dir. Returns the
/// process exit status.
int cmd_cluster(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Writes centrality_hist_k<K>.csv and centralities_k<K>.tsv per kappa.
int cmd_centrality_hist(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Compares the partition TSV at `input` with the one at `ground_truth`.
int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Writes graph.txt and ground_truth.tsv for cfg.synthetic.
int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct HistogramBin {
  double lower;
  double upper;
  double probability;
};

/// Log-spaced bins over the positive values, aligned to powers of ten.
/// Probabilities are fractions of all values (zeros included in the
/// denominator, but not binned).
std::vector<HistogramBin> log_histogram(std::span<const double> values,
                                        unsigned bins_per_decade = 5);

}  // namespace conclude
