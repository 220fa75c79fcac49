#include "commands.hpp"

#include "oslpp/errors.hpp"
#include "oslpp/io.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <thread>

namespace oslpp::cli {
namespace {

namespace fs = std::filesystem;

FeatureFormat resolve_format(const RunConfig& config, const fs::path& path) {
  return config.feature_format ? *config.feature_format : format_from_path(path);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error("cannot create output directory: " + dir.string());
  }
}

nlohmann::json hyperparams_json(const Hyperparams& hp) {
  return {{"d_pca", hp.d_pca},
          {"d", hp.d},
          {"iterations", hp.iterations},
          {"n_r", hp.initial_rejections},
          {"seed", hp.seed}};
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

nlohmann::json eval_json(const EvalReport& e) {
  nlohmann::json per_class = nlohmann::json::object();
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [cls, acc] : e.per_class_acc) per_class[std::to_string(cls)] = round1(acc);
  for (const auto& [cls, n] : e.counts) counts[std::to_string(cls)] = n;
  return {{"os_star", round1(e.os_star)},
          {"unk", round1(e.unk)},
          {"os", round1(e.os)},
          {"hos", round1(e.hos)},
          {"per_class_acc", per_class},
          {"counts", counts}};
}

std::vector<Index> sorted_unique(std::vector<Index> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string csv_escape_error(std::string msg) {
  std::replace(msg.begin(), msg.end(), ',', ';');
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  std::replace(msg.begin(), msg.end(), '"', '\'');
  return msg;
}

std::string fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", round1(v));
  return buf;
}

}  // namespace

LoadedData load_inputs(const RunConfig& config) {
  auto xs = load_features(config.source_features, resolve_format(config, config.source_features));
  auto ys = load_labels(config.source_labels);
  SourceDataset source(std::move(xs), std::move(ys));

  auto xt = load_features(config.target_features, resolve_format(config, config.target_features));
  std::optional<std::vector<ClassId>> truth;
  if (config.target_labels) truth = remap_unknown(load_labels(*config.target_labels), source.space);
  TargetDataset target(std::move(xt), std::move(truth));
  return LoadedData{std::move(source), std::move(target)};
}

nlohmann::json make_report(const Hyperparams& hp, const LoadedData& data, const OsdaResult& result,
                           const std::optional<EvalReport>& eval) {
  const auto& space = data.source.space;
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& rec : result.trace) {
    nlohmann::json selected = nlohmann::json::object();
    nlohmann::json candidates = nlohmann::json::object();
    for (std::size_t c = 0; c < space.known_classes().size(); ++c) {
      const auto key = std::to_string(space.known_classes()[c]);
      selected[key] = rec.selected_per_class[c];
      candidates[key] = rec.candidates_per_class[c];
    }
    trace.push_back({{"iteration", rec.iteration},
                     {"selected_per_class", selected},
                     {"candidates_per_class", candidates},
                     {"rejected", rec.rejected},
                     {"objective", rec.objective},
                     {"eigenvalues", to_vector(rec.eigenvalues)}});
  }

  nlohmann::json report = {
      {"schema", "oslpp.report"},
      {"schema_version", kReportSchemaVersion},
      {"hyperparameters", hyperparams_json(hp)},
      {"dataset",
       {{"n_source", data.source.features.rows()},
        {"n_target", data.target.features.rows()},
        {"feature_dim", data.source.features.cols()},
        {"known_classes", space.known_classes()},
        {"unknown_id", space.unknown_id()}}},
      {"initial_eigenvalues", to_vector(result.initial_eigenvalues)},
      {"final_eigenvalues", to_vector(result.projection.eigenvalues)},
      {"trace", trace},
      {"rejected", result.rejected.size()},
  };
  if (eval) report["metrics"] = eval_json(*eval);
  return report;
}

RunOutcome cmd_run(const RunConfig& config) {
  config.hp.validate();
  const auto data = load_inputs(config);
  ensure_dir(config.out_dir);

  EmbeddingSink sink;
  if (config.emit_embeddings) {
    const auto dir = config.out_dir / "embeddings";
    ensure_dir(dir);
    sink = [dir](Index iteration, const Eigen::MatrixXd& z) {
      char name[32];
      std::snprintf(name, sizeof name, "iter_%03lld.bin", static_cast<long long>(iteration));
      save_features(dir / name, FeatureMatrix(z), FeatureFormat::kF32Binary);
    };
  }

  spdlog::info("running: n_s={} n_t={} d0={} d_pca={} d={} T={} n_r={}",
               data.source.features.rows(), data.target.features.rows(),
               data.source.features.cols(), config.hp.d_pca, config.hp.d, config.hp.iterations,
               config.hp.initial_rejections);
  RunOutcome out{run(data.source, data.target, config.hp, sink), std::nullopt, {}};
  for (const auto& rec : out.result.trace) {
    spdlog::debug("iteration {}: rejected={} objective={}", rec.iteration, rec.rejected,
                  rec.objective);
  }

  if (data.target.ground_truth) {
    out.eval = evaluate(out.result.predictions, *data.target.ground_truth, data.source.space);
    spdlog::info("OS*={:.1f} UNK={:.1f} OS={:.1f} HOS={:.1f}", out.eval->os_star, out.eval->unk,
                 out.eval->os, out.eval->hos);
  } else {
    spdlog::info("no target labels given; metrics omitted");
  }

  out.report = make_report(config.hp, data, out.result, out.eval);
  write_file_atomic(config.out_dir / "predictions.txt", format_labels(out.result.predictions));
  write_file_atomic(config.out_dir / "report.json", out.report.dump(2) + "\n");

  if (config.emit_trace) {
    // State codes: -1 uncertain, -2 rejected, otherwise the selected class.
    nlohmann::json iterations = nlohmann::json::array();
    for (const auto& rec : out.result.trace) {
      std::vector<ClassId> codes;
      codes.reserve(rec.states.size());
      for (const auto& s : rec.states) {
        codes.push_back(s.is_selected() ? s.class_id() : (s.is_rejected() ? -2 : -1));
      }
      iterations.push_back({{"iteration", rec.iteration}, {"states", codes}});
    }
    const nlohmann::json trace = {{"schema", "oslpp.trace"},
                                  {"schema_version", kReportSchemaVersion},
                                  {"iterations", iterations}};
    write_file_atomic(config.out_dir / "trace.json", trace.dump() + "\n");
  }
  return out;
}

std::vector<SweepRow> cmd_sweep(const RunConfig& config, const SweepGrid& grid, int jobs) {
  if (grid.d_pca.empty() || grid.d.empty() || grid.initial_rejections.empty() ||
      grid.iterations.empty()) {
    throw ArgumentError("sweep grid is empty along at least one axis");
  }
  if (!config.target_labels) throw ArgumentError("sweep needs --target-labels to score cells");

  const auto data = load_inputs(config);
  ensure_dir(config.out_dir);

  std::vector<SweepRow> rows;
  for (const auto dp : sorted_unique(grid.d_pca)) {
    for (const auto d : sorted_unique(grid.d)) {
      for (const auto nr : sorted_unique(grid.initial_rejections)) {
        for (const auto t : sorted_unique(grid.iterations)) {
          rows.push_back(SweepRow{Hyperparams{dp, d, t, nr, config.hp.seed}, std::nullopt, {}});
        }
      }
    }
  }

  auto run_cell = [&](SweepRow& row) {
    try {
      const auto result = run(data.source, data.target, row.hp);
      row.eval = evaluate(result.predictions, *data.target.ground_truth, data.source.space);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  if (jobs <= 0) jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), rows.size());
  if (workers <= 1) {
    for (auto& row : rows) run_cell(row);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (auto i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1)) run_cell(rows[i]);
      });
    }
  }

  for (const auto& row : rows) {
    if (!row.error.empty()) {
      spdlog::warn("sweep cell d_pca={} d={} n_r={} T={} failed: {}", row.hp.d_pca, row.hp.d,
                   row.hp.initial_rejections, row.hp.iterations, row.error);
    }
  }
  write_file_atomic(config.out_dir / "sweep.csv", format_sweep_csv(rows));
  return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "d_pca,d,n_r,iterations,os_star,unk,hos,status\n";
  for (const auto& row : rows) {
    out += std::to_string(row.hp.d_pca) + "," + std::to_string(row.hp.d) + "," +
           std::to_string(row.hp.initial_rejections) + "," + std::to_string(row.hp.iterations) +
           ",";
    if (row.eval) {
      out += fixed1(row.eval->os_star) + "," + fixed1(row.eval->unk) + "," +
             fixed1(row.eval->hos) + ",ok\n";
    } else {
      out += "NA,NA,NA,error: " + csv_escape_error(row.error) + "\n";
    }
  }
  return out;
}

SynthFiles cmd_synth(const SynthConfig& cfg, const std::filesystem::path& out_dir,
                     FeatureFormat format) {
  const auto data = generate(cfg);
  ensure_dir(out_dir);
  const auto ext = format == FeatureFormat::kCsv ? ".csv" : ".bin";
  SynthFiles files{out_dir / (std::string("source_features") + ext),
                   out_dir / "source_labels.txt",
                   out_dir / (std::string("target_features") + ext),
                   out_dir / "target_labels.txt"};
  save_features(files.source_features, data.source.features, format);
  save_labels(files.source_labels, data.source.labels);
  save_features(files.target_features, data.target.features, format);
  save_labels(files.target_labels, *data.target.ground_truth);
  return files;
}

}  // namespace oslpp::cli
