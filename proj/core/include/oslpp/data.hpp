#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oslpp {

using Index = Eigen::Index;
using ClassId = std::int64_t;

/// Dense n x d matrix of feature vectors, one sample per row.
///
/// Always non-empty and finite; the constructor enforces both.
class FeatureMatrix {
 public:
  explicit FeatureMatrix(Eigen::MatrixXd values);

  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }

  friend bool operator==(const FeatureMatrix& a, const FeatureMatrix& b) {
    return a.values_.rows() == b.values_.rows() &&
           a.values_.cols() == b.values_.cols() && a.values_ == b.values_;
  }

 private:
  Eigen::MatrixXd values_;
};

/// Sorted known class ids plus the id reserved for the unified unknown class.
class LabelSpace {
 public:
  LabelSpace(std::vector<ClassId> known_classes, ClassId unknown_id);

  const std::vector<ClassId>& known_classes() const noexcept { return known_; }
  ClassId unknown_id() const noexcept { return unknown_id_; }
  Index size() const noexcept { return static_cast<Index>(known_.size()); }

  bool is_known(ClassId id) const;
  /// Position of `id` in known_classes(), or nullopt.
  std::optional<Index> index_of(ClassId id) const;

  friend bool operator==(const LabelSpace&, const LabelSpace&) = default;

 private:
  std::vector<ClassId> known_;
  ClassId unknown_id_;
};

struct SourceDataset {
  SourceDataset(FeatureMatrix features, std::vector<ClassId> labels);

  FeatureMatrix features;
  std::vector<ClassId> labels;
  LabelSpace space;
};

struct TargetDataset {
  TargetDataset(FeatureMatrix features,
                std::optional<std::vector<ClassId>> ground_truth = std::nullopt);

  FeatureMatrix features;
  /// Known class id or the unknown id per row; evaluation only.
  std::optional<std::vector<ClassId>> ground_truth;
};

enum class FeatureFormat { kCsv, kF32Binary };

/// Picks a format from the extension: `.bin`/`.f32` are binary, anything
/// else is CSV.
FeatureFormat format_from_path(const std::filesystem::path& path);

FeatureMatrix parse_features_csv(std::string_view text);
FeatureMatrix parse_features_f32(std::span<const std::byte> bytes);
std::vector<ClassId> parse_labels(std::string_view text);

FeatureMatrix load_features(const std::filesystem::path& path,
                            FeatureFormat format);
std::vector<ClassId> load_labels(const std::filesystem::path& path);

/// Shortest round-trip decimal representation, so CSV save/load is
/// bit-exact for every finite double.
std::string format_features_csv(const FeatureMatrix& features);
/// Values are narrowed to float; round-trips exactly when they already are.
std::vector<std::byte> format_features_f32(const FeatureMatrix& features);
std::string format_labels(std::span<const ClassId> labels);

void save_features(const std::filesystem::path& path,
                   const FeatureMatrix& features, FeatureFormat format);
void save_labels(const std::filesystem::path& path,
                 std::span<const ClassId> labels);

/// Known classes are the sorted distinct ids; the unknown id is max + 1.
LabelSpace build_label_space(std::span<const ClassId> source_labels);

/// Maps every id outside the known set onto space.unknown_id().
std::vector<ClassId> remap_unknown(std::span<const ClassId> labels,
                                   const LabelSpace& space);

}  // namespace oslpp
