#pragma once

#include "oslpp/data.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace oslpp {

/// Decision state of one target sample.
class TargetState {
 public:
  enum class Kind : std::uint8_t { kUncertain, kSelected, kRejected };

  constexpr TargetState() = default;

  static constexpr TargetState uncertain() { return TargetState(Kind::kUncertain, 0); }
  static constexpr TargetState selected(ClassId c) { return TargetState(Kind::kSelected, c); }
  static constexpr TargetState rejected() { return TargetState(Kind::kRejected, 0); }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool is_uncertain() const noexcept { return kind_ == Kind::kUncertain; }
  constexpr bool is_selected() const noexcept { return kind_ == Kind::kSelected; }
  constexpr bool is_rejected() const noexcept { return kind_ == Kind::kRejected; }
  /// Meaningful only when is_selected().
  constexpr ClassId class_id() const noexcept { return class_id_; }

  friend constexpr bool operator==(const TargetState&, const TargetState&) = default;

 private:
  constexpr TargetState(Kind k, ClassId c) : kind_(k), class_id_(c) {}

  Kind kind_ = Kind::kUncertain;
  ClassId class_id_ = 0;
};

/// Binary label-agreement graph over sources followed by targets.
class SimilarityGraph {
 public:
  /// Validates that `weights` is square, symmetric, and 0/1 valued.
  static SimilarityGraph from_weights(Eigen::MatrixXd weights);

  const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  const Eigen::VectorXd& degrees() const noexcept { return degrees_; }
  Index participant_count() const noexcept { return weights_.rows(); }
  bool empty() const { return degrees_.sum() == 0.0; }

 private:
  explicit SimilarityGraph(Eigen::MatrixXd weights);

  Eigen::MatrixXd weights_;
  Eigen::VectorXd degrees_;
};

/// W_ij = 1 iff participants i and j both carry an effective label and the
/// labels agree. Sources use their ground truth, Selected(c) uses c, all
/// Rejected targets share one unknown pseudo-class, and Uncertain targets
/// are isolated (zero row, zero diagonal).
SimilarityGraph build_similarity(std::span<const ClassId> source_labels,
                                 std::span<const TargetState> target_states);

/// diag(D) - W.
Eigen::MatrixXd laplacian(const SimilarityGraph& g);

}  // namespace oslpp
