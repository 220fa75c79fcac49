#include "cli/commands.hpp"

#include "oslpp/errors.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>

namespace {

using oslpp::FeatureFormat;
using oslpp::Index;

// Verbosity comes from OSLPP_LOG_LEVEL (trace, debug, info, warn, error, off).
void init_logging() {
  auto logger = spdlog::stderr_color_mt("oslpp");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("OSLPP_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

struct CommonOptions {
  oslpp::cli::RunConfig config;
  std::string preset;
  std::string format = "auto";
  std::string target_labels;
  std::optional<Index> d_pca, d, iterations, n_r;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--source-features", o.config.source_features, "Source feature file")
      ->required();
  cmd.add_option("--source-labels", o.config.source_labels, "Source label file")->required();
  cmd.add_option("--target-features", o.config.target_features, "Target feature file")
      ->required();
  cmd.add_option("--target-labels", o.target_labels, "Target ground-truth labels (optional)");
  cmd.add_option("--format", o.format, "Feature file format")
      ->check(CLI::IsMember({"auto", "csv", "bin"}));
  cmd.add_option("--preset", o.preset, "Hyper-parameter preset")
      ->check(CLI::IsMember({"office31", "office-home"}));
  cmd.add_option("--dpca", o.d_pca, "PCA dimensionality");
  cmd.add_option("--d", o.d, "Subspace dimensionality");
  cmd.add_option("--iters", o.iterations, "Number of iterations T");
  cmd.add_option("--nr", o.n_r, "Initial rejection count");
  cmd.add_option("--seed", o.seed, "Seed recorded in the report");
  cmd.add_option("--out", o.config.out_dir, "Output directory");
}

oslpp::cli::RunConfig resolve(CommonOptions& o) {
  auto config = o.config;
  config.hp = oslpp::preset(o.preset.empty() ? "office31" : o.preset);
  if (o.d_pca) config.hp.d_pca = *o.d_pca;
  if (o.d) config.hp.d = *o.d;
  if (o.iterations) config.hp.iterations = *o.iterations;
  if (o.n_r) config.hp.initial_rejections = *o.n_r;
  if (o.seed) config.hp.seed = *o.seed;
  if (!o.target_labels.empty()) config.target_labels = o.target_labels;
  if (o.format == "csv") config.feature_format = FeatureFormat::kCsv;
  if (o.format == "bin") config.feature_format = FeatureFormat::kF32Binary;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();

  CLI::App app{"Open-set domain adaptation with open-set locality preserving projections"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "Adapt and predict target labels");
  add_common(*run_cmd, run_opts);
  run_cmd->add_flag("--emit-embeddings", run_opts.config.emit_embeddings,
                    "Write the projected embedding after every iteration");
  run_cmd->add_flag("--emit-trace", run_opts.config.emit_trace,
                    "Write per-iteration target states to trace.json");

  CommonOptions sweep_opts;
  std::vector<Index> grid_dpca, grid_d, grid_nr, grid_iters;
  int jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid over hyper-parameters, one CSV row per cell");
  add_common(*sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--grid-dpca", grid_dpca, "d_pca values")->delimiter(',');
  sweep_cmd->add_option("--grid-d", grid_d, "d values")->delimiter(',');
  sweep_cmd->add_option("--grid-nr", grid_nr, "n_r values")->delimiter(',');
  sweep_cmd->add_option("--grid-iters", grid_iters, "T values")->delimiter(',');
  sweep_cmd->add_option("--jobs", jobs, "Parallel cells (0 = all cores)");

  oslpp::SynthConfig synth;
  std::filesystem::path synth_out = "synth";
  std::string synth_format = "csv";
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic open-set dataset");
  synth_cmd->add_option("--n-known", synth.n_known, "Known classes");
  synth_cmd->add_option("--n-unknown", synth.n_unknown, "Unknown classes");
  synth_cmd->add_option("--dim", synth.dim, "Feature dimension");
  synth_cmd->add_option("--per-class", synth.per_class, "Samples per class per domain");
  synth_cmd->add_option("--shift", synth.shift, "Domain shift norm");
  synth_cmd->add_option("--spread", synth.spread, "Within-class standard deviation");
  synth_cmd->add_option("--margin", synth.unknown_margin, "Unknown-to-known center margin");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--out", synth_out, "Output directory");
  synth_cmd->add_option("--format", synth_format, "Feature file format")
      ->check(CLI::IsMember({"csv", "bin"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      const auto outcome = oslpp::cli::cmd_run(resolve(run_opts));
      if (outcome.eval) {
        std::printf("OS*=%.1f UNK=%.1f OS=%.1f HOS=%.1f\n", oslpp::round1(outcome.eval->os_star),
                    oslpp::round1(outcome.eval->unk), oslpp::round1(outcome.eval->os),
                    oslpp::round1(outcome.eval->hos));
      }
    } else if (*sweep_cmd) {
      auto config = resolve(sweep_opts);
      if (grid_dpca.empty() && grid_d.empty() && grid_nr.empty() && grid_iters.empty()) {
        throw oslpp::ArgumentError("empty grid: pass at least one --grid-* list");
      }
      oslpp::cli::SweepGrid grid{grid_dpca, grid_d, grid_nr, grid_iters};
      if (grid.d_pca.empty()) grid.d_pca = {config.hp.d_pca};
      if (grid.d.empty()) grid.d = {config.hp.d};
      if (grid.initial_rejections.empty()) grid.initial_rejections = {config.hp.initial_rejections};
      if (grid.iterations.empty()) grid.iterations = {config.hp.iterations};
      const auto rows = oslpp::cli::cmd_sweep(config, grid, jobs);
      std::cout << oslpp::cli::format_sweep_csv(rows);
    } else if (*synth_cmd) {
      const auto format = synth_format == "bin" ? FeatureFormat::kF32Binary : FeatureFormat::kCsv;
      const auto files = oslpp::cli::cmd_synth(synth, synth_out, format);
      std::cout << files.source_features.string() << "\n"
                << files.source_labels.string() << "\n"
                << files.target_features.string() << "\n"
                << files.target_labels.string() << "\n";
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
