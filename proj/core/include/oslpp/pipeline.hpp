#pragma once

#include "oslpp/data.hpp"
#include "oslpp/graph.hpp"
#include "oslpp/numerics.hpp"
#include "oslpp/pseudo.hpp"

#include <Eigen/Core>

#include <functional>
#include <string_view>
#include <vector>

namespace oslpp {

struct Hyperparams {
  Index d_pca = 16;
  Index d = 16;
  Index iterations = 10;
  Index initial_rejections = 140;
  /// Recorded for provenance; the pipeline itself is deterministic.
  std::uint64_t seed = 0;

  /// Throws ArgumentError unless 1 <= d <= d_pca, iterations >= 2 and
  /// initial_rejections >= 1.
  void validate() const;

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

/// Named defaults: "office31" and "office-home". Throws ArgumentError for
/// any other name.
Hyperparams preset(std::string_view name);

struct IterationRecord {
  Index iteration = 0;
  std::vector<Index> candidates_per_class;  // known-class order
  std::vector<Index> selected_per_class;
  Index rejected = 0;
  Eigen::VectorXd eigenvalues;
  double objective = 0.0;
  /// Target states used to build this iteration's graph.
  std::vector<TargetState> states;
};

struct OsdaResult {
  std::vector<ClassId> predictions;
  Projection projection;
  Eigen::VectorXd initial_eigenvalues;
  std::vector<IterationRecord> trace;
  IndexSet rejected;
};

/// Receives the projected source-then-target embedding after P_0 (iteration
/// 0) and after every refinement.
using EmbeddingSink = std::function<void(Index iteration, const Eigen::MatrixXd& embedding)>;

/// Top-d solutions of X D X^T p = lambda (X L X^T + I) p, where the rows of
/// `x_all` are the graph's participants.
Projection learn_projection(const Eigen::MatrixXd& x_all, const SimilarityGraph& g, Index d);

/// sum_ij ||P^T x_i - P^T x_j||^2 W_ij, evaluated as 2 tr(P^T X L X^T P).
double objective_value(const Projection& p, const Eigen::MatrixXd& x_all,
                       const SimilarityGraph& g);

/// Full open-set adaptation run: normalize, reduce, then alternate subspace
/// learning with progressive selection and rejection of target samples.
OsdaResult run(const SourceDataset& source, const TargetDataset& target,
               const Hyperparams& hp, const EmbeddingSink& sink = {});

}  // namespace oslpp
