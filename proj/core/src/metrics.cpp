#include "oslpp/metrics.hpp"

#include "oslpp/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace oslpp {

double hos(double os_star, double unk) {
  const double sum = os_star + unk;
  if (sum == 0.0) return 0.0;
  return 2.0 * os_star * unk / sum;
}

double mean_score(std::span<const double> scores) {
  if (scores.empty()) throw ArgumentError("cannot average an empty score list");
  return std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
}

double round1(double percentage) { return std::round(percentage * 10.0) / 10.0; }

EvalReport evaluate(std::span<const ClassId> predictions, std::span<const ClassId> ground_truth,
                    const LabelSpace& space) {
  if (predictions.size() != ground_truth.size()) {
    throw ArgumentError("evaluate: " + std::to_string(predictions.size()) + " predictions vs " +
                        std::to_string(ground_truth.size()) + " ground-truth labels");
  }

  std::map<ClassId, Index> totals;
  std::map<ClassId, Index> correct;
  for (const auto c : space.known_classes()) totals[c] = 0;
  totals[space.unknown_id()] = 0;
  for (std::size_t i = 0; i < ground_truth.size(); ++i) {
    const auto truth = ground_truth[i];
    const auto it = totals.find(truth);
    if (it == totals.end()) {
      throw ArgumentError("ground-truth id " + std::to_string(truth) +
                          " is neither known nor the unknown id");
    }
    ++it->second;
    if (predictions[i] == truth) ++correct[truth];
  }

  EvalReport report;
  for (const auto& [cls, total] : totals) {
    if (total == 0) {
      throw ArgumentError("class " + std::to_string(cls) + " has no ground-truth samples");
    }
    report.counts[cls] = total;
    report.per_class_acc[cls] =
        100.0 * static_cast<double>(correct[cls]) / static_cast<double>(total);
  }

  double known_sum = 0.0;
  for (const auto c : space.known_classes()) known_sum += report.per_class_acc[c];
  const auto n_known = static_cast<double>(space.size());
  report.os_star = known_sum / n_known;
  report.unk = report.per_class_acc[space.unknown_id()];
  report.os = (known_sum + report.unk) / (n_known + 1.0);
  report.hos = hos(report.os_star, report.unk);
  return report;
}

}  // namespace oslpp
