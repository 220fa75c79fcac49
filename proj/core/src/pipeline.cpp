#include "oslpp/pipeline.hpp"

#include "oslpp/errors.hpp"

#include <string>

namespace oslpp {
namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

void Hyperparams::validate() const {
  if (d_pca < 1) throw ArgumentError("d_pca must be at least 1");
  if (d < 1 || d > d_pca) {
    throw ArgumentError("subspace dimension d=" + std::to_string(d) + " must lie in [1, d_pca=" +
                        std::to_string(d_pca) + "]");
  }
  if (iterations < 2) throw ArgumentError("iteration count T must be at least 2");
  if (initial_rejections < 1) throw ArgumentError("initial rejection count n_r must be >= 1");
}

Hyperparams preset(std::string_view name) {
  if (name == "office31") return Hyperparams{16, 16, 10, 140, 0};
  if (name == "office-home") return Hyperparams{512, 128, 10, 1200, 0};
  throw ArgumentError("unknown preset '" + std::string(name) +
                      "' (expected office31 or office-home)");
}

Projection learn_projection(const Eigen::MatrixXd& x_all, const SimilarityGraph& g, Index d) {
  if (x_all.rows() != g.participant_count()) {
    throw ArgumentError("graph has " + std::to_string(g.participant_count()) +
                        " participants but data has " + std::to_string(x_all.rows()) + " rows");
  }
  if (d < 1 || d > x_all.cols()) {
    throw ArgumentError("subspace dimension " + std::to_string(d) + " exceeds input dimension " +
                        std::to_string(x_all.cols()));
  }
  if (g.empty()) throw ArgumentError("no supervision in graph");

  const Eigen::MatrixXd weighted = g.degrees().asDiagonal() * x_all;
  const Eigen::MatrixXd a = symmetrized(x_all.transpose() * weighted);
  const Eigen::MatrixXd lx = laplacian(g) * x_all;
  Eigen::MatrixXd b = symmetrized(x_all.transpose() * lx);
  b.diagonal().array() += 1.0;
  return solve_gev(a, b, d);
}

double objective_value(const Projection& p, const Eigen::MatrixXd& x_all,
                       const SimilarityGraph& g) {
  const Eigen::MatrixXd y = p.apply(x_all);
  return 2.0 * y.cwiseProduct(laplacian(g) * y).sum();
}

OsdaResult run(const SourceDataset& source, const TargetDataset& target, const Hyperparams& hp,
               const EmbeddingSink& sink) {
  hp.validate();
  const auto ns = source.features.rows();
  const auto nt = target.features.rows();
  if (source.features.cols() != target.features.cols()) {
    throw ArgumentError("source and target feature widths differ: " +
                        std::to_string(source.features.cols()) + " vs " +
                        std::to_string(target.features.cols()));
  }
  if (hp.initial_rejections >= nt) {
    throw ArgumentError("n_r=" + std::to_string(hp.initial_rejections) +
                        " must be smaller than the target size " + std::to_string(nt));
  }
  const auto& space = source.space;

  Eigen::MatrixXd stacked(ns + nt, source.features.cols());
  stacked.topRows(ns) = l2_normalize_rows(source.features.values());
  stacked.bottomRows(nt) = l2_normalize_rows(target.features.values());
  const auto pca = fit_pca(stacked, hp.d_pca);
  const Eigen::MatrixXd x = pca_transform(pca, stacked);

  std::vector<TargetState> states(static_cast<std::size_t>(nt), TargetState::uncertain());

  auto graph = build_similarity(source.labels, states);
  auto projection = learn_projection(x, graph, hp.d);
  Eigen::MatrixXd z = projection.apply(x);
  if (sink) sink(0, z);

  OsdaResult result;
  result.initial_eigenvalues = projection.eigenvalues;

  auto labeling = pseudo_label(z.bottomRows(nt), class_means(z.topRows(ns), source.labels, space));
  IndexSet rejected = seed_rejections(labeling, hp.initial_rejections);

  for (Index k = 1; k <= hp.iterations; ++k) {
    IterationRecord record;
    record.iteration = k;

    const auto fraction = selection_fraction(k, hp.iterations);
    const auto chosen = select(labeling, rejected, fraction);
    IndexSet selected;
    std::fill(states.begin(), states.end(), TargetState::uncertain());
    for (std::size_t c = 0; c < labeling.classes.size(); ++c) {
      const auto cls = labeling.classes[c];
      Index candidates = 0;
      for (std::size_t i = 0; i < labeling.labels.size(); ++i) {
        if (labeling.labels[i] == cls && !rejected.contains(static_cast<Index>(i))) ++candidates;
      }
      const auto& picks = chosen.at(cls);
      record.candidates_per_class.push_back(candidates);
      record.selected_per_class.push_back(static_cast<Index>(picks.size()));
      for (const auto i : picks) {
        selected.insert(i);
        states[static_cast<std::size_t>(i)] = TargetState::selected(cls);
      }
    }

    rejected = propagate_rejections(z.bottomRows(nt), selected, rejected);
    if (static_cast<Index>(rejected.size()) == nt) {
      throw Error("every target sample was rejected at iteration " + std::to_string(k) +
                  "; lower n_r");
    }
    for (const auto i : rejected) states[static_cast<std::size_t>(i)] = TargetState::rejected();

    graph = build_similarity(source.labels, states);
    projection = learn_projection(x, graph, hp.d);
    z = projection.apply(x);
    if (sink) sink(k, z);

    record.rejected = static_cast<Index>(rejected.size());
    record.eigenvalues = projection.eigenvalues;
    record.objective = objective_value(projection, x, graph);
    record.states = states;
    result.trace.push_back(std::move(record));

    labeling = pseudo_label(z.bottomRows(nt), class_means(z.topRows(ns), source.labels, space));
  }

  result.predictions.resize(static_cast<std::size_t>(nt));
  for (Index i = 0; i < nt; ++i) {
    result.predictions[static_cast<std::size_t>(i)] =
        rejected.contains(i) ? space.unknown_id() : labeling.labels[static_cast<std::size_t>(i)];
  }
  result.projection = std::move(projection);
  result.rejected = std::move(rejected);
  return result;
}

}  // namespace oslpp
