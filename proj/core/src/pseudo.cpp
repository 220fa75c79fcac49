#include "oslpp/pseudo.hpp"

#include "oslpp/errors.hpp"
#include "oslpp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace oslpp {

SelectionFraction::SelectionFraction(Index numerator, Index denominator)
    : num_(numerator), den_(denominator) {
  if (den_ < 1 || num_ < 1) throw ArgumentError("selection fraction must be positive");
  if (num_ > den_) num_ = den_;
}

Index SelectionFraction::selection_count(Index candidates) const {
  return (num_ * candidates + den_ - 1) / den_;
}

ClassMeans class_means(const Eigen::MatrixXd& z_source, std::span<const ClassId> labels,
                       const LabelSpace& space) {
  if (static_cast<Index>(labels.size()) != z_source.rows()) {
    throw ArgumentError("class_means: " + std::to_string(labels.size()) + " labels for " +
                        std::to_string(z_source.rows()) + " rows");
  }
  const auto n_classes = space.size();
  ClassMeans out;
  out.classes = space.known_classes();
  out.means = Eigen::MatrixXd::Zero(n_classes, z_source.cols());
  out.counts.assign(static_cast<std::size_t>(n_classes), 0);
  for (Index i = 0; i < z_source.rows(); ++i) {
    const auto idx = space.index_of(labels[static_cast<std::size_t>(i)]);
    if (!idx) {
      throw ArgumentError("label " + std::to_string(labels[static_cast<std::size_t>(i)]) +
                          " is not a known class");
    }
    out.means.row(*idx) += z_source.row(i);
    ++out.counts[static_cast<std::size_t>(*idx)];
  }
  for (Index c = 0; c < n_classes; ++c) {
    const auto count = out.counts[static_cast<std::size_t>(c)];
    if (count == 0) {
      throw ArgumentError("class " + std::to_string(out.classes[static_cast<std::size_t>(c)]) +
                          " has no source samples");
    }
    out.means.row(c) /= static_cast<double>(count);
  }
  return out;
}

PseudoLabeling pseudo_label(const Eigen::MatrixXd& z_target, const ClassMeans& means) {
  if (z_target.cols() != means.means.cols()) {
    throw ArgumentError("pseudo_label: target width " + std::to_string(z_target.cols()) +
                        " differs from class-mean width " + std::to_string(means.means.cols()));
  }
  const Eigen::MatrixXd dist = pairwise_sq_dists(z_target, means.means).cwiseSqrt();
  const auto n = z_target.rows();
  const auto n_classes = dist.cols();

  PseudoLabeling out;
  out.classes = means.classes;
  out.labels.resize(static_cast<std::size_t>(n));
  out.probs.resize(n, n_classes);
  out.top_prob.resize(n);
  for (Index i = 0; i < n; ++i) {
    Index best = 0;
    for (Index c = 1; c < n_classes; ++c) {
      if (dist(i, c) < dist(i, best)) best = c;
    }
    const double shift = dist(i, best);
    double total = 0.0;
    for (Index c = 0; c < n_classes; ++c) {
      const double e = std::exp(shift - dist(i, c));
      out.probs(i, c) = e;
      total += e;
    }
    out.probs.row(i) /= total;
    out.labels[static_cast<std::size_t>(i)] = means.classes[static_cast<std::size_t>(best)];
    out.top_prob(i) = out.probs(i, best);
  }
  return out;
}

SelectionFraction selection_fraction(Index t, Index total) {
  if (total < 2 || t < 1 || t > total) {
    throw ArgumentError("iteration " + std::to_string(t) + " outside [1, " +
                        std::to_string(total) + "] (need T >= 2)");
  }
  return SelectionFraction(t + 1, total);
}

std::map<ClassId, std::vector<Index>> select(const PseudoLabeling& pl, const IndexSet& rejected,
                                             const SelectionFraction& fraction) {
  std::map<ClassId, std::vector<Index>> out;
  const auto n = static_cast<Index>(pl.labels.size());
  for (std::size_t c = 0; c < pl.classes.size(); ++c) {
    const auto cls = pl.classes[c];
    std::vector<Index> candidates;
    for (Index i = 0; i < n; ++i) {
      if (pl.labels[static_cast<std::size_t>(i)] == cls && !rejected.contains(i)) {
        candidates.push_back(i);
      }
    }
    const auto col = static_cast<Index>(c);
    std::stable_sort(candidates.begin(), candidates.end(), [&](Index a, Index b) {
      return pl.probs(a, col) > pl.probs(b, col);
    });
    candidates.resize(static_cast<std::size_t>(
        fraction.selection_count(static_cast<Index>(candidates.size()))));
    out.emplace(cls, std::move(candidates));
  }
  return out;
}

IndexSet seed_rejections(const PseudoLabeling& pl, Index n_rejections) {
  const auto n = pl.top_prob.size();
  if (n_rejections < 1 || n_rejections >= n) {
    throw ArgumentError("initial rejection count " + std::to_string(n_rejections) +
                        " must lie in [1, " + std::to_string(n - 1) + "]");
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return pl.top_prob(a) < pl.top_prob(b); });
  return IndexSet(order.begin(), order.begin() + n_rejections);
}

IndexSet propagate_rejections(const Eigen::MatrixXd& z_target, const IndexSet& selected,
                              const IndexSet& rejected) {
  for (const auto i : selected) {
    if (rejected.contains(i)) {
      throw ArgumentError("target " + std::to_string(i) + " is both selected and rejected");
    }
  }
  std::vector<Index> pool;
  pool.reserve(selected.size() + rejected.size());
  std::set_union(selected.begin(), selected.end(), rejected.begin(), rejected.end(),
                 std::back_inserter(pool));
  if (pool.empty()) return rejected;

  std::vector<Index> undecided;
  for (Index i = 0; i < z_target.rows(); ++i) {
    if (!selected.contains(i) && !rejected.contains(i)) undecided.push_back(i);
  }
  if (undecided.empty()) return rejected;

  Eigen::MatrixXd pool_z(static_cast<Index>(pool.size()), z_target.cols());
  for (std::size_t k = 0; k < pool.size(); ++k) pool_z.row(static_cast<Index>(k)) = z_target.row(pool[k]);
  Eigen::MatrixXd undecided_z(static_cast<Index>(undecided.size()), z_target.cols());
  for (std::size_t k = 0; k < undecided.size(); ++k) {
    undecided_z.row(static_cast<Index>(k)) = z_target.row(undecided[k]);
  }
  const Eigen::MatrixXd dist = pairwise_sq_dists(undecided_z, pool_z);

  IndexSet out = rejected;
  for (Index u = 0; u < dist.rows(); ++u) {
    Index nearest = 0;
    for (Index k = 1; k < dist.cols(); ++k) {
      if (dist(u, k) < dist(u, nearest)) nearest = k;
    }
    if (rejected.contains(pool[static_cast<std::size_t>(nearest)])) {
      out.insert(undecided[static_cast<std::size_t>(u)]);
    }
  }
  return out;
}

}  // namespace oslpp
