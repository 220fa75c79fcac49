#pragma once

#include "oslpp/data.hpp"

#include <Eigen/Core>

#include <map>
#include <set>
#include <vector>

namespace oslpp {

using IndexSet = std::set<Index>;

struct ClassMeans {
  std::vector<ClassId> classes;  // row order of `means`
  Eigen::MatrixXd means;         // C x d
  std::vector<Index> counts;
};

struct PseudoLabeling {
  std::vector<ClassId> classes;  // column order of `probs`
  std::vector<ClassId> labels;   // nearest class mean per target
  Eigen::MatrixXd probs;         // n_t x C, rows sum to one
  Eigen::VectorXd top_prob;
};

/// Share of each class's candidates to select, held as an exact ratio so the
/// ceiling in selection_count is not at the mercy of rounding.
class SelectionFraction {
 public:
  /// numerator / denominator, capped at one.
  SelectionFraction(Index numerator, Index denominator);

  Index numerator() const noexcept { return num_; }
  Index denominator() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// ceil(value * candidates)
  Index selection_count(Index candidates) const;

 private:
  Index num_;
  Index den_;
};

/// Per-class means of source rows, ordered by the space's known classes.
ClassMeans class_means(const Eigen::MatrixXd& z_source, std::span<const ClassId> labels,
                       const LabelSpace& space);

/// Nearest-class-mean labels with softmax(-distance) confidences.
PseudoLabeling pseudo_label(const Eigen::MatrixXd& z_target, const ClassMeans& means);

/// min(1, (t + 1) / T) for iteration t in [1, T].
SelectionFraction selection_fraction(Index t, Index total);

/// For each class, the ceil(fraction * n_c) most confident non-rejected
/// targets labeled c, in descending confidence (ties to the smaller index).
std::map<ClassId, std::vector<Index>> select(const PseudoLabeling& pl, const IndexSet& rejected,
                                             const SelectionFraction& fraction);

/// The n_rejections targets with the lowest top probability.
IndexSet seed_rejections(const PseudoLabeling& pl, Index n_rejections);

/// One synchronous 1-NN pass: every undecided target whose nearest decided
/// target (selected or rejected, as of entry) is rejected joins the result.
IndexSet propagate_rejections(const Eigen::MatrixXd& z_target, const IndexSet& selected,
                              const IndexSet& rejected);

}  // namespace oslpp
