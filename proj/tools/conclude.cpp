#include <iostream>

#include "CLI11.hpp"
#include "conclude/commands.hpp"

int main(int argc, char** argv) {
  using namespace conclude;

  CLI::App app{"conclude: k-path centrality weighted community detection"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::uint64_t seed_flag = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Edge list (SNAP format)")->required();
    sub->add_flag("--directed", cfg.directed, "Treat input as directed and symmetrize it");
    sub->add_option("--out-dir", cfg.out_dir, "Output directory");
    sub->add_option("--workers", cfg.workers, "Worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_walk = [&](CLI::App* sub) {
    auto* rho = sub->add_option("--rho", cfg.rho, "Absolute number of random walks")
                    ->check(CLI::PositiveNumber);
    sub->add_option("--rho-multiplier", cfg.rho_multiplier, "Walks per edge when --rho is unset")
        ->check(CLI::PositiveNumber)
        ->excludes(rho);
    sub->add_option("--seed", seed_flag, "RNG seed (overrides CONCLUDE_SEED)");
  };

  auto* cluster = app.add_subcommand("cluster", "Detect communities");
  add_common(cluster);
  add_walk(cluster);
  cluster->add_option("--kappa", cfg.kappa, "Maximum walk length")->check(CLI::PositiveNumber);
  cluster->add_option("--min-gain", cfg.min_gain, "Stop when an outer pass gains less than this");

  auto* hist = app.add_subcommand("centrality-hist", "Log-binned centrality distributions");
  add_common(hist);
  add_walk(hist);
  hist->add_option("--kappas", cfg.kappas, "Walk lengths to compare")->delimiter(',');

  auto* eval = app.add_subcommand("eval", "NMI of a partition against ground truth");
  eval->add_option("--input", cfg.input, "Partition TSV")->required();
  eval->add_option("--ground-truth", cfg.ground_truth, "Ground-truth partition TSV")->required();

  auto* gen = app.add_subcommand("generate", "Planted-partition synthetic graph");
  gen->add_option("--n", cfg.synthetic.n, "Vertices")->required();
  gen->add_option("--q", cfg.synthetic.q, "Planted communities")->required();
  gen->add_option("--p-in", cfg.synthetic.p_in, "Intra-community edge probability")->required();
  gen->add_option("--p-out", cfg.synthetic.p_out, "Inter-community edge probability")->required();
  gen->add_option("--seed", seed_flag, "RNG seed (overrides CONCLUDE_SEED)");
  gen->add_option("--out-dir", cfg.out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  for (auto* sub : {cluster, hist, gen}) {
    if (sub->parsed() && sub->count("--seed") > 0) {
      cfg.seed = seed_flag;
      cfg.seed_source = SeedSource::flag;
    }
  }
  try {
    apply_seed_environment(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  cfg.synthetic.seed = cfg.seed;

  if (cluster->parsed()) return cmd_cluster(cfg, std::cout, std::cerr);
  if (hist->parsed()) return cmd_centrality_hist(cfg, std::cout, std::cerr);
  if (eval->parsed()) return cmd_eval(cfg, std::cout, std::cerr);
  return cmd_generate(cfg, std::cout, std::cerr);
}
