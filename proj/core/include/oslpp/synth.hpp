#pragma once

#include "oslpp/data.hpp"

#include <cstdint>
#include <random>

namespace oslpp {

struct SynthConfig {
  Index n_known = 5;
  Index n_unknown = 5;
  Index dim = 20;
  Index per_class = 60;
  double shift = 1.0;
  double spread = 0.3;
  double unknown_margin = 3.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthData {
  SourceDataset source;
  TargetDataset target;  // ground truth uses ids 0..n_known-1 and n_known
};

/// Gaussian clusters with a translation-only domain shift.
///
/// Random numbers come from std::mt19937_64 seeded with cfg.seed; normals
/// are produced by Box-Muller from 53-bit uniforms, so output is identical
/// on every conforming platform. Known centers are at least 4 * spread
/// apart; unknown centers are at least unknown_margin from every known one.
/// Source rows are class-major; target rows are the known classes followed
/// by the unknown ones, each class-major.
SynthData generate(const SynthConfig& cfg);

/// Box-Muller normal source over a fixed engine.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // in (0, 1)
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace oslpp
