#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pumldiff/error_classifier.hpp"
#include "pumldiff/errors.hpp"
#include "pumldiff/puml_model.hpp"

namespace pumldiff {

/// Percentage rounded half-up to two decimals, as an integer count of
/// hundredths: 226 of 1736 -> 1302 ("13.02"). Exact integer arithmetic.
inline std::uint64_t percent_hundredths(std::uint64_t count, std::uint64_t total) {
  return (count * 20000 + total) / (2 * total);
}

inline std::string format_hundredths(std::uint64_t h) {
  std::string frac = std::to_string(h % 100);
  if (frac.size() < 2) frac.insert(frac.begin(), '0');
  return std::to_string(h / 100) + "." + frac;
}

/// "13.02", or "n/a" when the ground truth has none of the element.
inline std::string format_percent(std::size_t count, std::size_t total) {
  if (total == 0) return "n/a";
  return format_hundredths(percent_hundredths(count, total));
}

struct CategoryCell {
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t substitutions = 0;
  std::size_t gt_total = 0;

  std::size_t count(ErrorKind kind) const {
    switch (kind) {
      case ErrorKind::Insertion: return insertions;
      case ErrorKind::Deletion: return deletions;
      case ErrorKind::Substitution: return substitutions;
    }
    return 0;
  }
  std::size_t& count(ErrorKind kind) {
    switch (kind) {
      case ErrorKind::Insertion: return insertions;
      case ErrorKind::Deletion: return deletions;
      default: return substitutions;
    }
  }
  std::size_t accumulated() const { return insertions + deletions + substitutions; }

  /// count / gt_total; absent when the ground truth has no such element.
  std::optional<double> rate(ErrorKind kind) const {
    if (gt_total == 0) return std::nullopt;
    return static_cast<double>(count(kind)) / static_cast<double>(gt_total);
  }
  std::optional<double> insertion_rate() const { return rate(ErrorKind::Insertion); }
  std::optional<double> deletion_rate() const { return rate(ErrorKind::Deletion); }
  std::optional<double> substitution_rate() const { return rate(ErrorKind::Substitution); }

  CategoryCell& operator+=(const CategoryCell& o) {
    insertions += o.insertions;
    deletions += o.deletions;
    substitutions += o.substitutions;
    gt_total += o.gt_total;
    return *this;
  }
  bool operator==(const CategoryCell&) const = default;
};

/// One cell per ErrorCategory, indexed by the enum value.
class CategoryTable {
 public:
  CategoryCell& operator[](ErrorCategory c) { return cells_[static_cast<std::size_t>(c)]; }
  const CategoryCell& operator[](ErrorCategory c) const { return cells_[static_cast<std::size_t>(c)]; }

  std::size_t error_count() const {
    std::size_t n = 0;
    for (const CategoryCell& cell : cells_) n += cell.accumulated();
    return n;
  }
  CategoryTable& operator+=(const CategoryTable& o) {
    for (std::size_t i = 0; i < kCategoryCount; ++i) cells_[i] += o.cells_[i];
    return *this;
  }
  bool operator==(const CategoryTable&) const = default;

 private:
  std::array<CategoryCell, kCategoryCount> cells_{};
};

inline std::size_t category_total(const GroundTruthCounts& counts, ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Node: return counts.node_count;
    case ErrorCategory::EdgeDirection:
    case ErrorCategory::EdgeType: return counts.arrow_count;
    case ErrorCategory::Message: return counts.message_count;
    case ErrorCategory::Note: return counts.note_count;
    case ErrorCategory::Group: return counts.group_count;
    case ErrorCategory::Box: return counts.box_count;
    case ErrorCategory::Participant: return counts.participant_count;
  }
  return 0;
}

struct FileMetrics {
  std::string file;
  CategoryTable cells;
  std::size_t gt_line_count = 0;
  std::size_t error_count = 0;
  std::size_t element_count = 0;
  std::vector<ErrorRecord> errors;
  std::vector<std::string> warnings;

  /// Errors per ground-truth element; absent for an empty ground truth.
  std::optional<double> error_density() const {
    if (element_count == 0) return std::nullopt;
    return static_cast<double>(error_count) / static_cast<double>(element_count);
  }
  bool operator==(const FileMetrics&) const = default;
};

inline FileMetrics compute_file_metrics(std::vector<ErrorRecord> errors, const GroundTruthCounts& counts,
                                        std::string file) {
  FileMetrics m;
  m.file = std::move(file);
  for (ErrorCategory c : kAllCategories) m.cells[c].gt_total = category_total(counts, c);
  for (const ErrorRecord& e : errors) ++m.cells[e.category].count(e.kind);
  m.gt_line_count = counts.relevant_line_count;
  m.error_count = errors.size();
  m.element_count = counts.element_total();
  m.errors = std::move(errors);
  return m;
}

inline const std::vector<std::size_t>& default_bin_edges() {
  static const std::vector<std::size_t> edges = {20, 30, 40, 50, 100};
  return edges;
}

/// Files with gt_line_count in [lower, upper]; `upper` is absent for the
/// overflow bin. Cells accumulate insertions, deletions and substitutions
/// over the bin's files, skipping categories a file's ground truth lacks.
struct LineBin {
  std::string label;
  std::size_t lower = 0;
  std::optional<std::size_t> upper;
  std::size_t file_count = 0;
  CategoryTable cells;

  std::string percent(ErrorCategory c) const { return format_percent(cells[c].accumulated(), cells[c].gt_total); }
  bool operator==(const LineBin&) const = default;
};

inline void validate_bin_edges(std::span<const std::size_t> edges) {
  if (edges.empty()) throw Error(ErrorCode::InvalidBins, "bin edges must not be empty");
  if (edges.front() == 0) throw Error(ErrorCode::InvalidBins, "first bin edge must be at least 1");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] <= edges[i - 1]) throw Error(ErrorCode::InvalidBins, "bin edges must be strictly increasing");
  }
}

/// Bins are (previous edge, edge]; the first bin is labelled from 1 but also
/// holds files with no relevant lines. An overflow bin ">last" is appended
/// only when some file exceeds the last edge.
inline std::vector<LineBin> bin_by_lines(std::span<const FileMetrics> files, std::span<const std::size_t> edges) {
  validate_bin_edges(edges);
  std::vector<LineBin> bins;
  std::size_t lower = 0;
  for (std::size_t e : edges) {
    LineBin b;
    b.lower = lower;
    b.upper = e;
    b.label = std::to_string(lower + 1) + "-" + std::to_string(e);
    bins.push_back(std::move(b));
    lower = e;
  }
  auto add = [](LineBin& bin, const FileMetrics& f) {
    ++bin.file_count;
    for (ErrorCategory c : kAllCategories) {
      if (f.cells[c].gt_total > 0) bin.cells[c] += f.cells[c];
    }
  };
  for (const FileMetrics& f : files) {
    auto it = std::find_if(bins.begin(), bins.end(), [&](const LineBin& b) { return b.upper && f.gt_line_count <= *b.upper; });
    if (it != bins.end()) {
      add(*it, f);
      continue;
    }
    if (bins.back().upper) {
      LineBin overflow;
      overflow.lower = edges.back();
      overflow.label = ">" + std::to_string(edges.back());
      bins.push_back(std::move(overflow));
    }
    add(bins.back(), f);
  }
  return bins;
}

struct Coverage {
  std::size_t evaluated = 0;
  std::vector<std::string> missing_candidates;
  bool operator==(const Coverage&) const = default;
};

struct DatasetReport {
  std::vector<FileMetrics> per_file;
  CategoryTable aggregate;
  std::vector<std::size_t> bin_edges;
  std::vector<LineBin> bins;
  Coverage coverage;

  std::size_t error_count() const { return aggregate.error_count(); }
  std::size_t element_count() const {
    std::size_t n = 0;
    for (const FileMetrics& f : per_file) n += f.element_count;
    return n;
  }
  std::optional<double> error_density() const {
    std::size_t elements = element_count();
    if (elements == 0) return std::nullopt;
    return static_cast<double>(error_count()) / static_cast<double>(elements);
  }
  bool operator==(const DatasetReport&) const = default;
};

/// Micro-averaged dataset report: counts and ground-truth totals are pooled
/// across files before any rate is taken.
inline DatasetReport aggregate(std::vector<FileMetrics> files,
                               std::span<const std::size_t> edges = default_bin_edges()) {
  if (files.empty()) throw Error(ErrorCode::EmptyDataset, "no files to aggregate");
  DatasetReport report;
  for (const FileMetrics& f : files) report.aggregate += f.cells;
  report.bins = bin_by_lines(files, edges);
  report.bin_edges.assign(edges.begin(), edges.end());
  report.coverage.evaluated = files.size();
  report.per_file = std::move(files);
  return report;
}

}  // namespace pumldiff
