#pragma once

#include "oslpp/data.hpp"
#include "oslpp/metrics.hpp"
#include "oslpp/pipeline.hpp"
#include "oslpp/synth.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace oslpp::cli {

inline constexpr int kReportSchemaVersion = 1;

struct RunConfig {
  std::filesystem::path source_features;
  std::filesystem::path source_labels;
  std::filesystem::path target_features;
  std::optional<std::filesystem::path> target_labels;
  /// nullopt picks the format from each file's extension.
  std::optional<FeatureFormat> feature_format;
  Hyperparams hp;
  std::filesystem::path out_dir = "out";
  bool emit_embeddings = false;
  bool emit_trace = false;
};

struct LoadedData {
  SourceDataset source;
  TargetDataset target;
};

/// Reads the four input files; unknown ground-truth ids collapse onto the
/// source label space's unknown id.
LoadedData load_inputs(const RunConfig& config);

/// Report document for one run. Metrics appear only with ground truth.
nlohmann::json make_report(const Hyperparams& hp, const LoadedData& data,
                           const OsdaResult& result, const std::optional<EvalReport>& eval);

struct RunOutcome {
  OsdaResult result;
  std::optional<EvalReport> eval;
  nlohmann::json report;
};

/// Writes predictions.txt and report.json (plus embeddings/ and trace.json
/// when requested) into config.out_dir.
RunOutcome cmd_run(const RunConfig& config);

struct SweepGrid {
  std::vector<Index> d_pca;
  std::vector<Index> d;
  std::vector<Index> initial_rejections;
  std::vector<Index> iterations;
};

struct SweepRow {
  Hyperparams hp;
  std::optional<EvalReport> eval;  // nullopt when the cell failed
  std::string error;
};

/// One pipeline run per grid point, lexicographic in (d_pca, d, n_r, T).
/// Failed cells keep their row with an error marker. Writes sweep.csv into
/// config.out_dir. `jobs` <= 0 uses the hardware concurrency.
std::vector<SweepRow> cmd_sweep(const RunConfig& config, const SweepGrid& grid, int jobs = 1);

std::string format_sweep_csv(const std::vector<SweepRow>& rows);

struct SynthFiles {
  std::filesystem::path source_features;
  std::filesystem::path source_labels;
  std::filesystem::path target_features;
  std::filesystem::path target_labels;
};

SynthFiles cmd_synth(const SynthConfig& cfg, const std::filesystem::path& out_dir,
                     FeatureFormat format);

}  // namespace oslpp::cli
