#pragma once

#include "oslpp/data.hpp"

#include <map>
#include <span>

namespace oslpp {

/// Open-set accuracy summary. All values are percentages in [0, 100].
struct EvalReport {
  double os_star = 0.0;  // mean per-class accuracy over known classes
  double unk = 0.0;      // accuracy on the unified unknown class
  double os = 0.0;       // mean per-class accuracy over known + unknown
  double hos = 0.0;      // harmonic mean of os_star and unk
  std::map<ClassId, double> per_class_acc;  // includes the unknown id
  std::map<ClassId, Index> counts;
};

/// Harmonic mean of OS* and UNK; 0 when both are 0.
double hos(double os_star, double unk);

/// Arithmetic mean, used for averaging per-task scores.
double mean_score(std::span<const double> scores);

/// Throws ArgumentError on length mismatch, ids outside the space, or any
/// known class (or the unknown class) with no ground-truth samples.
EvalReport evaluate(std::span<const ClassId> predictions, std::span<const ClassId> ground_truth,
                    const LabelSpace& space);

/// Rounds to one decimal place, as scores are usually tabulated.
double round1(double percentage);

}  // namespace oslpp
