#include "cli/commands.hpp"

#include "oslpp/errors.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

namespace oslpp::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("oslpp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  RunConfig synth_config(const SynthConfig& cfg, FeatureFormat format = FeatureFormat::kCsv) {
    const auto files = cmd_synth(cfg, root_ / "data", format);
    RunConfig config;
    config.source_features = files.source_features;
    config.source_labels = files.source_labels;
    config.target_features = files.target_features;
    config.target_labels = files.target_labels;
    config.out_dir = root_ / "out";
    // Criterion-scale hyper-parameters: n_r is half the unknown target samples.
    config.hp = Hyperparams{10, 5, 10, cfg.per_class * cfg.n_unknown / 2, cfg.seed};
    return config;
  }

  int tool(const std::string& args) {
    const auto cmd = std::string(OSLPP_TOOL_PATH) + " " + args + " > " +
                     (root_ / "stdout.txt").string() + " 2> " + (root_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path root_;
};

TEST_F(CliTest, RunOnDefaultSynthReachesHighHos) {
  auto config = synth_config(SynthConfig{});
  const auto outcome = cmd_run(config);
  const auto report = nlohmann::json::parse(slurp(config.out_dir / "report.json"));
  EXPECT_EQ(report["schema"], "oslpp.report");
  EXPECT_EQ(report["schema_version"], kReportSchemaVersion);
  EXPECT_GE(report["metrics"]["hos"].get<double>(), 95.0);
  EXPECT_EQ(report["trace"].size(), 10U);
  EXPECT_EQ(report["hyperparameters"]["n_r"], 150);
  EXPECT_EQ(report["dataset"]["unknown_id"], 5);
  EXPECT_EQ(report["metrics"]["hos"].get<double>(), round1(outcome.eval->hos));

  const auto predictions = load_labels(config.out_dir / "predictions.txt");
  EXPECT_EQ(predictions, outcome.result.predictions);
  EXPECT_EQ(predictions.size(), 600U);
}

TEST_F(CliTest, ReportOmitsMetricsWithoutGroundTruth) {
  auto config = synth_config(SynthConfig{});
  config.target_labels.reset();
  const auto outcome = cmd_run(config);
  EXPECT_FALSE(outcome.eval.has_value());
  const auto report = nlohmann::json::parse(slurp(config.out_dir / "report.json"));
  EXPECT_FALSE(report.contains("metrics"));
  EXPECT_TRUE(fs::exists(config.out_dir / "predictions.txt"));
}

TEST_F(CliTest, EmbeddingsAndTraceExport) {
  SynthConfig small;
  small.per_class = 20;
  auto config = synth_config(small);
  config.hp.iterations = 4;
  config.emit_embeddings = true;
  config.emit_trace = true;
  cmd_run(config);
  for (int k = 0; k <= 4; ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "iter_%03d.bin", k);
    const auto z = load_features(config.out_dir / "embeddings" / name, FeatureFormat::kF32Binary);
    EXPECT_EQ(z.rows(), 100 + 200);
    EXPECT_EQ(z.cols(), config.hp.d);
  }
  EXPECT_EQ(std::distance(fs::directory_iterator(config.out_dir / "embeddings"),
                          fs::directory_iterator{}),
            5);
  const auto trace = nlohmann::json::parse(slurp(config.out_dir / "trace.json"));
  ASSERT_EQ(trace["iterations"].size(), 4U);
  for (const auto& it : trace["iterations"]) {
    EXPECT_EQ(it["states"].size(), 200U);
    for (const auto& code : it["states"]) {
      const auto c = code.get<ClassId>();
      EXPECT_TRUE(c == -1 || c == -2 || (c >= 0 && c < 5));
    }
  }
}

TEST_F(CliTest, BinaryInputsWork) {
  SynthConfig small;
  small.per_class = 20;
  auto config = synth_config(small, FeatureFormat::kF32Binary);
  EXPECT_EQ(config.source_features.extension(), ".bin");
  const auto outcome = cmd_run(config);
  EXPECT_TRUE(outcome.eval.has_value());
}

TEST_F(CliTest, RunTwiceIsByteIdentical) {
  auto config = synth_config(SynthConfig{});
  cmd_run(config);
  const auto pred = slurp(config.out_dir / "predictions.txt");
  const auto report = slurp(config.out_dir / "report.json");
  config.out_dir = root_ / "out2";
  cmd_run(config);
  EXPECT_EQ(slurp(config.out_dir / "predictions.txt"), pred);
  EXPECT_EQ(slurp(config.out_dir / "report.json"), report);
}

TEST_F(CliTest, SweepOverIterationsGivesOrderedRows) {
  SynthConfig small;
  small.per_class = 20;
  const auto config = synth_config(small);
  const SweepGrid grid{{10}, {5}, {50}, {10, 6, 8}};
  const auto rows = cmd_sweep(config, grid, 2);
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[0].hp.iterations, 6);
  EXPECT_EQ(rows[1].hp.iterations, 8);
  EXPECT_EQ(rows[2].hp.iterations, 10);
  for (const auto& r : rows) EXPECT_TRUE(r.eval.has_value()) << r.error;
  const auto csv = slurp(config.out_dir / "sweep.csv");
  EXPECT_EQ(csv, format_sweep_csv(rows));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(csv.rfind("d_pca,d,n_r,iterations,os_star,unk,hos,status\n", 0), 0U);
}

TEST_F(CliTest, SweepRecordsFailedCellsAndContinues) {
  SynthConfig small;
  small.per_class = 20;
  const auto config = synth_config(small);
  // d = 12 exceeds d_pca = 10, so that cell fails validation.
  const SweepGrid grid{{10}, {5, 12}, {50}, {4}};
  const auto rows = cmd_sweep(config, grid);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_TRUE(rows[0].eval.has_value());
  EXPECT_FALSE(rows[1].eval.has_value());
  EXPECT_FALSE(rows[1].error.empty());
  const auto csv = format_sweep_csv(rows);
  EXPECT_NE(csv.find("10,12,50,4,NA,NA,NA,error: "), std::string::npos) << csv;
}

TEST_F(CliTest, SweepParallelMatchesSerial) {
  SynthConfig small;
  small.per_class = 20;
  const auto config = synth_config(small);
  const SweepGrid grid{{8, 10}, {4}, {40, 60}, {5}};
  EXPECT_EQ(format_sweep_csv(cmd_sweep(config, grid, 1)),
            format_sweep_csv(cmd_sweep(config, grid, 3)));
}

TEST_F(CliTest, SweepIncreasingRejectionsRaisesUnk) {
  // Unknown clusters tend to be caught whole or not at all, so UNK is coarse
  // on a single dataset; the trend is read from the per-n_r mean over seeds.
  const std::vector<Index> grid_nr{30, 60, 90, 120, 150};
  const SweepGrid grid{{10}, {5}, grid_nr, {10}};
  std::vector<double> mean_unk(grid_nr.size(), 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SynthConfig cfg;
    cfg.seed = seed;
    const auto rows = cmd_sweep(synth_config(cfg), grid);
    ASSERT_EQ(rows.size(), grid_nr.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      ASSERT_TRUE(rows[i].eval.has_value()) << rows[i].error;
      EXPECT_EQ(rows[i].hp.initial_rejections, grid_nr[i]);
      mean_unk[i] += rows[i].eval->unk / 10.0;
    }
  }
  const std::vector<double> nr(grid_nr.begin(), grid_nr.end());
  EXPECT_GT(testing::spearman(nr, mean_unk), 0.0);
}

TEST_F(CliTest, SweepArgumentErrors) {
  const auto config = synth_config(SynthConfig{});
  EXPECT_THROW(cmd_sweep(config, SweepGrid{{}, {5}, {10}, {10}}), ArgumentError);
  auto unlabeled = config;
  unlabeled.target_labels.reset();
  EXPECT_THROW(cmd_sweep(unlabeled, SweepGrid{{10}, {5}, {10}, {10}}), ArgumentError);
}

TEST_F(CliTest, SynthWritesFourDeterministicFiles) {
  SynthConfig cfg;
  cfg.n_known = 2;
  const auto a = cmd_synth(cfg, root_ / "a", FeatureFormat::kCsv);
  const auto b = cmd_synth(cfg, root_ / "b", FeatureFormat::kCsv);
  EXPECT_EQ(std::distance(fs::directory_iterator(root_ / "a"), fs::directory_iterator{}), 4);
  for (const auto& [x, y] : {std::pair{a.source_features, b.source_features},
                             std::pair{a.source_labels, b.source_labels},
                             std::pair{a.target_features, b.target_features},
                             std::pair{a.target_labels, b.target_labels}}) {
    ASSERT_TRUE(fs::exists(x));
    EXPECT_EQ(slurp(x), slurp(y));
  }
  // Files reload to exactly the generated data.
  const auto data = generate(cfg);
  EXPECT_EQ(load_features(a.target_features, FeatureFormat::kCsv), data.target.features);
  EXPECT_EQ(load_labels(a.source_labels), data.source.labels);
}

TEST_F(CliTest, ToolRunPrintsMetrics) {
  const auto files = cmd_synth(SynthConfig{}, root_ / "d", FeatureFormat::kCsv);
  const auto out = root_ / "o";
  const int rc = tool("run --source-features " + files.source_features.string() +
                      " --source-labels " + files.source_labels.string() +
                      " --target-features " + files.target_features.string() +
                      " --target-labels " + files.target_labels.string() +
                      " --dpca 10 --d 5 --nr 150 --emit-embeddings --out " + out.string());
  EXPECT_EQ(rc, 0) << slurp(root_ / "stderr.txt");
  EXPECT_EQ(slurp(root_ / "stdout.txt").rfind("OS*=", 0), 0U);
  EXPECT_EQ(std::distance(fs::directory_iterator(out / "embeddings"), fs::directory_iterator{}),
            11);
}

TEST_F(CliTest, ToolMissingFileNamesThePath) {
  const auto missing = (root_ / "nope.csv").string();
  const int rc = tool("run --source-features " + missing + " --source-labels " + missing +
                      " --target-features " + missing + " --out " + (root_ / "o").string());
  EXPECT_NE(rc, 0);
  EXPECT_NE(slurp(root_ / "stderr.txt").find(missing), std::string::npos);
}

TEST_F(CliTest, ToolEmptyGridFails) {
  const auto files = cmd_synth(SynthConfig{}, root_ / "d", FeatureFormat::kCsv);
  const int rc = tool("sweep --source-features " + files.source_features.string() +
                      " --source-labels " + files.source_labels.string() +
                      " --target-features " + files.target_features.string() +
                      " --target-labels " + files.target_labels.string() + " --out " +
                      (root_ / "o").string());
  EXPECT_NE(rc, 0);
  EXPECT_NE(slurp(root_ / "stderr.txt").find("empty grid"), std::string::npos);
}

TEST_F(CliTest, ToolSweepThreeRows) {
  SynthConfig small;
  small.per_class = 20;
  const auto files = cmd_synth(small, root_ / "d", FeatureFormat::kCsv);
  const int rc = tool("sweep --source-features " + files.source_features.string() +
                      " --source-labels " + files.source_labels.string() +
                      " --target-features " + files.target_features.string() +
                      " --target-labels " + files.target_labels.string() +
                      " --dpca 10 --d 5 --nr 50 --grid-iters 6,8,10 --out " +
                      (root_ / "o").string());
  EXPECT_EQ(rc, 0) << slurp(root_ / "stderr.txt");
  const auto csv = slurp(root_ / "o" / "sweep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(slurp(root_ / "stdout.txt"), csv);
}

TEST_F(CliTest, ToolSynthValidatesAndIsDeterministic) {
  EXPECT_NE(tool("synth --margin 0.5 --out " + (root_ / "bad").string()), 0);
  EXPECT_NE(slurp(root_ / "stderr.txt").find("unknown_margin"), std::string::npos);

  ASSERT_EQ(tool("synth --n-known 2 --seed 0 --out " + (root_ / "s1").string()), 0);
  ASSERT_EQ(tool("synth --n-known 2 --seed 0 --out " + (root_ / "s2").string()), 0);
  for (const auto* name : {"source_features.csv", "source_labels.txt", "target_features.csv",
                           "target_labels.txt"}) {
    EXPECT_EQ(slurp(root_ / "s1" / name), slurp(root_ / "s2" / name)) << name;
  }
  EXPECT_EQ(std::distance(fs::directory_iterator(root_ / "s1"), fs::directory_iterator{}), 4);
}

TEST_F(CliTest, ToolRejectsUnknownPreset) {
  EXPECT_NE(tool("run --preset visda --source-features a --source-labels b --target-features c"),
            0);
}

}  // namespace
}  // namespace oslpp::cli
