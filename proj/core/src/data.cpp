#include "oslpp/data.hpp"

#include "oslpp/errors.hpp"
#include "oslpp/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace oslpp {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Splits into lines, dropping trailing empty lines only.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

std::uint64_t read_u64_le(std::span<const std::byte> bytes) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) {
    v = (v << 8) | std::to_integer<std::uint64_t>(bytes[static_cast<std::size_t>(i)]);
  }
  return v;
}

void write_u64_le(std::vector<std::byte>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xffU));
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FeatureMatrix::FeatureMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw ValidationError("feature matrix must have at least one row and one column");
  }
  if (!values_.allFinite()) {
    for (Index i = 0; i < values_.rows(); ++i) {
      for (Index j = 0; j < values_.cols(); ++j) {
        if (!std::isfinite(values_(i, j))) {
          throw ValidationError("non-finite feature value at row " + std::to_string(i + 1) +
                                ", column " + std::to_string(j + 1));
        }
      }
    }
  }
}

LabelSpace::LabelSpace(std::vector<ClassId> known_classes, ClassId unknown_id)
    : known_(std::move(known_classes)), unknown_id_(unknown_id) {
  if (known_.size() < 2) {
    throw ArgumentError("a label space needs at least two known classes, got " +
                        std::to_string(known_.size()));
  }
  if (!std::is_sorted(known_.begin(), known_.end()) ||
      std::adjacent_find(known_.begin(), known_.end()) != known_.end()) {
    throw ArgumentError("known classes must be sorted and distinct");
  }
  if (is_known(unknown_id_)) {
    throw ArgumentError("unknown id " + std::to_string(unknown_id_) +
                        " collides with a known class");
  }
}

bool LabelSpace::is_known(ClassId id) const {
  return std::binary_search(known_.begin(), known_.end(), id);
}

std::optional<Index> LabelSpace::index_of(ClassId id) const {
  const auto it = std::lower_bound(known_.begin(), known_.end(), id);
  if (it == known_.end() || *it != id) return std::nullopt;
  return static_cast<Index>(it - known_.begin());
}

SourceDataset::SourceDataset(FeatureMatrix f, std::vector<ClassId> l)
    : features(std::move(f)), labels(std::move(l)), space(build_label_space(labels)) {
  if (static_cast<Index>(labels.size()) != features.rows()) {
    throw ShapeError("source has " + std::to_string(features.rows()) + " feature rows but " +
                     std::to_string(labels.size()) + " labels");
  }
}

TargetDataset::TargetDataset(FeatureMatrix f, std::optional<std::vector<ClassId>> gt)
    : features(std::move(f)), ground_truth(std::move(gt)) {
  if (ground_truth && static_cast<Index>(ground_truth->size()) != features.rows()) {
    throw ShapeError("target has " + std::to_string(features.rows()) + " feature rows but " +
                     std::to_string(ground_truth->size()) + " ground-truth labels");
  }
}

FeatureFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".bin" || ext == ".f32") return FeatureFormat::kF32Binary;
  return FeatureFormat::kCsv;
}

FeatureMatrix parse_features_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ValidationError("feature file contains no samples");

  std::vector<double> values;
  Index cols = -1;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto line = lines[li];
    Index count = 0;
    std::size_t pos = 0;
    while (true) {
      auto comma = line.find(',', pos);
      if (comma == std::string_view::npos) comma = line.size();
      const auto raw = line.substr(pos, comma - pos);
      const auto field = trim(raw);
      const std::size_t column = pos + static_cast<std::size_t>(field.data() - raw.data()) + 1;
      if (field.empty()) {
        throw ParseError("empty field at line " + std::to_string(li + 1) + ", column " +
                             std::to_string(column),
                         li + 1, column);
      }
      double v = 0.0;
      const auto* begin = field.data();
      const auto* end = field.data() + field.size();
      // from_chars rejects a leading '+'.
      if (*begin == '+') ++begin;
      const auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec == std::errc::result_out_of_range) {
        throw ValidationError("value out of range at line " + std::to_string(li + 1));
      }
      if (ec != std::errc() || ptr != end) {
        throw ParseError("malformed number '" + std::string(field) + "' at line " +
                             std::to_string(li + 1) + ", column " + std::to_string(column),
                         li + 1, column);
      }
      if (!std::isfinite(v)) {
        throw ValidationError("non-finite value at line " + std::to_string(li + 1) +
                              ", column " + std::to_string(column));
      }
      values.push_back(v);
      ++count;
      if (comma == line.size()) break;
      pos = comma + 1;
    }
    if (cols < 0) {
      cols = count;
    } else if (count != cols) {
      throw ShapeError("ragged rows: line " + std::to_string(li + 1) + " has " +
                       std::to_string(count) + " values, expected " + std::to_string(cols));
    }
  }

  const auto rows = static_cast<Index>(lines.size());
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  }
  return FeatureMatrix(std::move(m));
}

FeatureMatrix parse_features_f32(std::span<const std::byte> bytes) {
  if (bytes.size() < 16) {
    throw ParseError("binary feature file shorter than its 16-byte header", 0, bytes.size());
  }
  const auto rows = read_u64_le(bytes.subspan(0, 8));
  const auto cols = read_u64_le(bytes.subspan(8, 8));
  if (rows == 0 || cols == 0) {
    throw ValidationError("binary feature header declares an empty matrix");
  }
  constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 40;
  if (rows > kMaxElements / cols) {
    throw ParseError("binary feature header dimensions overflow", 0, 0);
  }
  const auto expected = 16 + rows * cols * 4;
  if (bytes.size() != expected) {
    throw ParseError("binary feature payload is " + std::to_string(bytes.size()) +
                         " bytes, header implies " + std::to_string(expected),
                     0, std::min<std::uint64_t>(bytes.size(), expected));
  }

  Eigen::MatrixXd m(static_cast<Index>(rows), static_cast<Index>(cols));
  std::size_t off = 16;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      std::uint32_t u = 0;
      for (int b = 3; b >= 0; --b) {
        u = (u << 8) | std::to_integer<std::uint32_t>(bytes[off + static_cast<std::size_t>(b)]);
      }
      const auto f = std::bit_cast<float>(u);
      if (!std::isfinite(f)) {
        throw ValidationError("non-finite value at byte offset " + std::to_string(off));
      }
      m(i, j) = static_cast<double>(f);
      off += 4;
    }
  }
  return FeatureMatrix(std::move(m));
}

std::vector<ClassId> parse_labels(std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<ClassId> out;
  out.reserve(lines.size());
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto field = trim(lines[li]);
    ClassId v = 0;
    const auto* begin = field.data();
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (field.empty() || ec != std::errc() || ptr != end) {
      throw ParseError("malformed label '" + std::string(field) + "' at line " +
                           std::to_string(li + 1),
                       li + 1, 1);
    }
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("label file contains no labels");
  return out;
}

FeatureMatrix load_features(const std::filesystem::path& path, FeatureFormat format) {
  const auto text = read_text(path);
  try {
    if (format == FeatureFormat::kCsv) return parse_features_csv(text);
    const auto* p = reinterpret_cast<const std::byte*>(text.data());
    return parse_features_f32(std::span<const std::byte>(p, text.size()));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.offset());
  } catch (const ShapeError& e) {
    throw ShapeError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::vector<ClassId> load_labels(const std::filesystem::path& path) {
  const auto text = read_text(path);
  try {
    return parse_labels(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.offset());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string format_features_csv(const FeatureMatrix& features) {
  const auto& m = features.values();
  std::string out;
  out.reserve(static_cast<std::size_t>(m.size()) * 12);
  char buf[64];
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out.push_back(',');
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, m(i, j));
      out.append(buf, ptr);
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<std::byte> format_features_f32(const FeatureMatrix& features) {
  const auto& m = features.values();
  std::vector<std::byte> out;
  out.reserve(16 + static_cast<std::size_t>(m.size()) * 4);
  write_u64_le(out, static_cast<std::uint64_t>(m.rows()));
  write_u64_le(out, static_cast<std::uint64_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const auto u = std::bit_cast<std::uint32_t>(static_cast<float>(m(i, j)));
      for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::byte>((u >> (8 * b)) & 0xffU));
    }
  }
  return out;
}

std::string format_labels(std::span<const ClassId> labels) {
  std::string out;
  for (const auto id : labels) {
    out += std::to_string(id);
    out.push_back('\n');
  }
  return out;
}

void save_features(const std::filesystem::path& path, const FeatureMatrix& features,
                   FeatureFormat format) {
  if (format == FeatureFormat::kCsv) {
    write_file_atomic(path, format_features_csv(features));
  } else {
    const auto bytes = format_features_f32(features);
    write_file_atomic(path, std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                             bytes.size()));
  }
}

void save_labels(const std::filesystem::path& path, std::span<const ClassId> labels) {
  write_file_atomic(path, format_labels(labels));
}

LabelSpace build_label_space(std::span<const ClassId> source_labels) {
  if (source_labels.empty()) throw ArgumentError("cannot build a label space from no labels");
  std::vector<ClassId> known(source_labels.begin(), source_labels.end());
  std::sort(known.begin(), known.end());
  known.erase(std::unique(known.begin(), known.end()), known.end());
  const auto unknown = known.back() + 1;
  return LabelSpace(std::move(known), unknown);
}

std::vector<ClassId> remap_unknown(std::span<const ClassId> labels, const LabelSpace& space) {
  std::vector<ClassId> out;
  out.reserve(labels.size());
  for (const auto id : labels) out.push_back(space.is_known(id) ? id : space.unknown_id());
  return out;
}

}  // namespace oslpp
