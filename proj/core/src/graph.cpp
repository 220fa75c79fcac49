#include "oslpp/graph.hpp"

#include "oslpp/errors.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace oslpp {

SimilarityGraph::SimilarityGraph(Eigen::MatrixXd weights)
    : weights_(std::move(weights)), degrees_(weights_.rowwise().sum()) {}

SimilarityGraph SimilarityGraph::from_weights(Eigen::MatrixXd weights) {
  if (weights.rows() != weights.cols()) {
    throw ArgumentError("similarity matrix must be square");
  }
  for (Index i = 0; i < weights.rows(); ++i) {
    for (Index j = 0; j < weights.cols(); ++j) {
      const double w = weights(i, j);
      if (w != 0.0 && w != 1.0) {
        throw ArgumentError("similarity entries must be 0 or 1");
      }
      if (w != weights(j, i)) throw ArgumentError("similarity matrix must be symmetric");
    }
  }
  return SimilarityGraph(std::move(weights));
}

SimilarityGraph build_similarity(std::span<const ClassId> source_labels,
                                 std::span<const TargetState> target_states) {
  if (source_labels.empty()) throw ArgumentError("similarity graph needs source samples");

  std::vector<ClassId> known(source_labels.begin(), source_labels.end());
  std::sort(known.begin(), known.end());
  known.erase(std::unique(known.begin(), known.end()), known.end());
  const ClassId unknown = known.back() + 1;

  const auto ns = source_labels.size();
  const auto m = static_cast<Index>(ns + target_states.size());
  std::vector<std::optional<ClassId>> effective;
  effective.reserve(static_cast<std::size_t>(m));
  for (const auto id : source_labels) effective.emplace_back(id);
  for (const auto& s : target_states) {
    switch (s.kind()) {
      case TargetState::Kind::kSelected:
        if (!std::binary_search(known.begin(), known.end(), s.class_id())) {
          throw ArgumentError("selected target carries class " + std::to_string(s.class_id()) +
                              " which is not a known source class");
        }
        effective.emplace_back(s.class_id());
        break;
      case TargetState::Kind::kRejected:
        effective.emplace_back(unknown);
        break;
      case TargetState::Kind::kUncertain:
        effective.emplace_back(std::nullopt);
        break;
    }
  }

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
  for (Index j = 0; j < m; ++j) {
    const auto& lj = effective[static_cast<std::size_t>(j)];
    if (!lj) continue;
    for (Index i = 0; i < m; ++i) {
      const auto& li = effective[static_cast<std::size_t>(i)];
      if (li && *li == *lj) w(i, j) = 1.0;
    }
  }
  return SimilarityGraph::from_weights(std::move(w));
}

Eigen::MatrixXd laplacian(const SimilarityGraph& g) {
  Eigen::MatrixXd l = -g.weights();
  l.diagonal() += g.degrees();
  return l;
}

}  // namespace oslpp
