#include "oslpp/synth.hpp"

#include "oslpp/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace oslpp {
namespace {

constexpr int kPlacementAttempts = 1000;

Eigen::RowVectorXd gaussian_vector(NormalStream& rng, Index dim, double scale) {
  Eigen::RowVectorXd v(dim);
  for (Index j = 0; j < dim; ++j) v(j) = scale * rng.normal();
  return v;
}

}  // namespace

double NormalStream::uniform() {
  // 53 random bits, offset by half an ulp so the result is never 0 or 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

void SynthConfig::validate() const {
  if (n_known < 2) throw ArgumentError("synthetic data needs at least two known classes");
  if (n_unknown < 0) throw ArgumentError("n_unknown must be non-negative");
  if (dim < 1 || per_class < 1) throw ArgumentError("dim and per_class must be positive");
  if (!(shift > 0.0) || !(spread > 0.0) || !(unknown_margin > 0.0)) {
    throw ArgumentError("shift, spread and unknown_margin must be positive");
  }
  if (!(unknown_margin > 2.0 * spread)) {
    throw ArgumentError("unknown_margin must exceed 2 * spread");
  }
}

SynthData generate(const SynthConfig& cfg) {
  cfg.validate();
  NormalStream rng(cfg.seed);

  // Known centers ~ N(0, known_scale^2 I): typical pairwise distance is about
  // 0.92 * margin. Unknown centers come from a distribution four times wider,
  // so they surround the known region at varying distances.
  const double known_scale = 0.65 * cfg.unknown_margin / std::sqrt(static_cast<double>(cfg.dim));
  const double unknown_scale = 4.0 * known_scale;
  const double known_gap = 4.0 * cfg.spread;

  std::vector<Eigen::RowVectorXd> known;
  for (Index c = 0; c < cfg.n_known; ++c) {
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
      auto candidate = gaussian_vector(rng, cfg.dim, known_scale);
      placed = true;
      for (const auto& other : known) {
        if ((candidate - other).norm() < known_gap) {
          placed = false;
          break;
        }
      }
      if (placed) known.push_back(std::move(candidate));
    }
    if (!placed) {
      throw GenerationError("could not place known center " + std::to_string(c) +
                            " with the required separation; try a larger dim");
    }
  }

  std::vector<Eigen::RowVectorXd> unknown;
  for (Index u = 0; u < cfg.n_unknown; ++u) {
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
      auto candidate = gaussian_vector(rng, cfg.dim, unknown_scale);
      placed = true;
      for (const auto& k : known) {
        if ((candidate - k).norm() < cfg.unknown_margin) {
          placed = false;
          break;
        }
      }
      if (placed) unknown.push_back(std::move(candidate));
    }
    if (!placed) {
      throw GenerationError("could not place unknown center " + std::to_string(u) +
                            " outside the margin; try a larger dim");
    }
  }

  Eigen::RowVectorXd translation = gaussian_vector(rng, cfg.dim, 1.0);
  translation *= cfg.shift / translation.norm();

  const auto ns = cfg.n_known * cfg.per_class;
  Eigen::MatrixXd xs(ns, cfg.dim);
  std::vector<ClassId> ys;
  ys.reserve(static_cast<std::size_t>(ns));
  Index row = 0;
  for (Index c = 0; c < cfg.n_known; ++c) {
    for (Index k = 0; k < cfg.per_class; ++k, ++row) {
      xs.row(row) = known[static_cast<std::size_t>(c)] + gaussian_vector(rng, cfg.dim, cfg.spread);
      ys.push_back(c);
    }
  }

  const auto nt = (cfg.n_known + cfg.n_unknown) * cfg.per_class;
  Eigen::MatrixXd xt(nt, cfg.dim);
  std::vector<ClassId> yt;
  yt.reserve(static_cast<std::size_t>(nt));
  row = 0;
  for (Index c = 0; c < cfg.n_known; ++c) {
    for (Index k = 0; k < cfg.per_class; ++k, ++row) {
      xt.row(row) = known[static_cast<std::size_t>(c)] + translation +
                    gaussian_vector(rng, cfg.dim, cfg.spread);
      yt.push_back(c);
    }
  }
  for (Index u = 0; u < cfg.n_unknown; ++u) {
    for (Index k = 0; k < cfg.per_class; ++k, ++row) {
      xt.row(row) = unknown[static_cast<std::size_t>(u)] + translation +
                    gaussian_vector(rng, cfg.dim, cfg.spread);
      yt.push_back(cfg.n_known);
    }
  }

  return SynthData{SourceDataset(FeatureMatrix(std::move(xs)), std::move(ys)),
                   TargetDataset(FeatureMatrix(std::move(xt)), std::move(yt))};
}

}  // namespace oslpp
