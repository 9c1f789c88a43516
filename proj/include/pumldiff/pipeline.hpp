#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "pumldiff/alignment.hpp"
#include "pumldiff/diff_engine.hpp"
#include "pumldiff/error_classifier.hpp"
#include "pumldiff/errors.hpp"
#include "pumldiff/metrics.hpp"
#include "pumldiff/normalize.hpp"
#include "pumldiff/puml_model.hpp"
#include "pumldiff/text.hpp"

namespace pumldiff {

namespace fs = std::filesystem;

struct PipelineOptions {
  AlignmentOptions alignment;
  /// Applied to candidates only; the ground truth is never rewritten.
  bool normalize = true;
  RuleSet rules = RuleSet::all();
  std::vector<std::size_t> bin_edges = default_bin_edges();
  SelfMessageNodes self_message_nodes = SelfMessageNodes::Two;
  /// Worker threads for directory evaluation; 0 picks the hardware count.
  std::size_t jobs = 1;
};

struct TouchedStatements {
  std::vector<LineDelta> removed;
  std::vector<LineDelta> added;
};

/// Statement-level view of a full line diff. A statement is untouched when all
/// of its lines are context lines that map onto exactly one statement of the
/// same kind and span on the other side; every other relevant statement
/// becomes one delta carrying its whole text and first line number.
inline TouchedStatements preprocess_deltas(const FileDiff& diff, const PumlScript& gt, const PumlScript& cand) {
  std::vector<std::optional<std::size_t>> gt_to_cand(gt.lines.size() + 1);
  std::vector<std::optional<std::size_t>> cand_to_gt(cand.lines.size() + 1);
  for (const LineDelta& d : diff.deltas) {
    if (d.kind != DeltaKind::Context) continue;
    if (*d.gt_line_no < gt_to_cand.size()) gt_to_cand[*d.gt_line_no] = d.cand_line_no;
    if (*d.cand_line_no < cand_to_gt.size()) cand_to_gt[*d.cand_line_no] = d.gt_line_no;
  }

  auto untouched = [](const PumlStatement& s, const std::vector<std::optional<std::size_t>>& map,
                      const PumlScript& other) {
    const auto& first = map[s.line_no];
    if (!first) return false;
    for (std::size_t k = s.line_no; k <= s.last_line_no; ++k) {
      if (!map[k] || *map[k] != *first + (k - s.line_no)) return false;
    }
    auto idx = other.statement_at(*first);
    if (!idx) return false;
    const PumlStatement& o = other.statements[*idx];
    return o.kind == s.kind && o.line_no == *first && o.last_line_no - o.line_no == s.last_line_no - s.line_no;
  };

  TouchedStatements out;
  for (const PumlStatement& s : gt.statements)
    if (!untouched(s, gt_to_cand, cand)) out.removed.push_back(LineDelta::removed(s.text, s.line_no));
  for (const PumlStatement& s : cand.statements)
    if (!untouched(s, cand_to_gt, gt)) out.added.push_back(LineDelta::added(s.text, s.line_no));
  return out;
}

namespace detail {

inline const PumlStatement& statement_on(const PumlScript& script, std::size_t line_no) {
  auto idx = script.statement_at(line_no);
  if (!idx) throw Error(ErrorCode::KindMismatch, "no statement at line " + std::to_string(line_no), line_no);
  return script.statements[*idx];
}

inline void append_warnings(std::vector<std::string>& out, const PumlScript& script, std::string_view side) {
  for (const ParseWarning& w : script.warnings)
    out.push_back(std::string(side) + ":" + std::to_string(w.line) + ": " + w.message);
}

}  // namespace detail

/// Core shared by every entry point: full line diff in, file metrics out.
inline FileMetrics evaluate_diff(const FileDiff& diff, const PumlScript& gt, const PumlScript& cand,
                                 const std::string& label, const PipelineOptions& options = {}) {
  TouchedStatements touched = preprocess_deltas(diff, gt, cand);
  AlignmentResult aligned = assign_pairs(touched.removed, touched.added, options.alignment);

  std::vector<ErrorRecord> errors;
  auto take = [&](std::vector<ErrorRecord> recs) {
    errors.insert(errors.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
  };
  for (const AlignedPair& p : aligned.pairs) {
    if (p.distance == 0) continue;
    take(classify_pair(detail::statement_on(gt, *p.gt_delta.gt_line_no),
                       detail::statement_on(cand, *p.cand_delta.cand_line_no), label));
  }
  for (const LineDelta& d : aligned.unpaired_removed)
    take(classify_unpaired(detail::statement_on(gt, *d.gt_line_no), Side::Removed, label, options.self_message_nodes));
  for (const LineDelta& d : aligned.unpaired_added)
    take(classify_unpaired(detail::statement_on(cand, *d.cand_line_no), Side::Added, label,
                           options.self_message_nodes));
  sort_records(errors);

  FileMetrics m = compute_file_metrics(std::move(errors), count_components(gt, options.self_message_nodes), label);
  detail::append_warnings(m.warnings, gt, "ground_truth");
  detail::append_warnings(m.warnings, cand, "candidate");
  return m;
}

/// Compares two script texts. The candidate is normalized first unless
/// disabled.
inline FileMetrics evaluate_pair(std::string_view gt_text, std::string_view cand_text, const std::string& label,
                                 const PipelineOptions& options = {}) {
  PumlScript gt = parse_statements(gt_text, label);
  std::string cand_source = options.normalize ? normalize_script(cand_text, options.rules) : std::string(cand_text);
  PumlScript cand = parse_statements(cand_source, label + " (candidate)");
  FileDiff diff = line_diff(gt, cand);
  return evaluate_diff(diff, gt, cand, label, options);
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "error while reading '" + path.string() + "'");
  return ss.str();
}

inline void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorCode::Io, "error while writing '" + path.string() + "'");
}

/// Single pair report. The label defaults to the ground-truth file name.
inline DatasetReport compare_files(const fs::path& gt_path, const fs::path& cand_path,
                                   const PipelineOptions& options = {}, std::optional<std::string> label = {}) {
  std::string name = label ? *label : gt_path.filename().string();
  std::vector<FileMetrics> files;
  files.push_back(evaluate_pair(read_file(gt_path), read_file(cand_path), name, options));
  return aggregate(std::move(files), options.bin_edges);
}

struct EvalEntry {
  fs::path ground_truth;
  fs::path candidate;
  std::string label;
};

/// Runs `fn(i)` for i in [0, n) on up to `jobs` threads. Results are written
/// by index so the output never depends on scheduling; the exception of the
/// lowest failing index is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, n);
  std::vector<std::exception_ptr> failures(n);
  auto run = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run(i);
      });
    }
    for (std::thread& t : workers) t.join();
  }
  for (const std::exception_ptr& e : failures)
    if (e) std::rethrow_exception(e);
}

/// Evaluates entries whose candidate exists; the others are listed in the
/// coverage section.
inline DatasetReport evaluate_entries(const std::vector<EvalEntry>& entries, const PipelineOptions& options = {}) {
  validate_bin_edges(options.bin_edges);
  std::vector<const EvalEntry*> present;
  std::vector<std::string> missing;
  for (const EvalEntry& e : entries) {
    if (fs::is_regular_file(e.candidate)) {
      present.push_back(&e);
    } else {
      missing.push_back(e.label);
    }
  }
  if (present.empty()) throw Error(ErrorCode::EmptyDataset, "no ground-truth file has a candidate to evaluate");

  std::vector<FileMetrics> files(present.size());
  parallel_for(present.size(), options.jobs, [&](std::size_t i) {
    const EvalEntry& e = *present[i];
    files[i] = evaluate_pair(read_file(e.ground_truth), read_file(e.candidate), e.label, options);
  });
  DatasetReport report = aggregate(std::move(files), options.bin_edges);
  report.coverage.missing_candidates = std::move(missing);
  return report;
}

inline bool is_puml_file(const fs::path& p) { return p.extension() == ".puml"; }

/// Relative paths (generic form, sorted) of every .puml file under `dir`.
inline std::vector<std::string> list_puml_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::Io, "not a readable directory: '" + dir.string() + "'");
  std::vector<std::string> out;
  fs::recursive_directory_iterator it(dir, ec), end;
  if (ec) throw Error(ErrorCode::Io, "cannot list '" + dir.string() + "': " + ec.message());
  for (; it != end; it.increment(ec)) {
    if (ec) throw Error(ErrorCode::Io, "cannot list '" + dir.string() + "': " + ec.message());
    if (it->is_regular_file() && is_puml_file(it->path()))
      out.push_back(fs::relative(it->path(), dir).generic_string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Pairs files by identical relative path.
inline DatasetReport evaluate_directories(const fs::path& gt_dir, const fs::path& cand_dir,
                                          const PipelineOptions& options = {}) {
  if (!fs::is_directory(cand_dir)) throw Error(ErrorCode::Io, "not a readable directory: '" + cand_dir.string() + "'");
  std::vector<EvalEntry> entries;
  for (const std::string& rel : list_puml_files(gt_dir)) entries.push_back({gt_dir / rel, cand_dir / rel, rel});
  if (entries.empty()) throw Error(ErrorCode::EmptyDataset, "no .puml files under '" + gt_dir.string() + "'");
  return evaluate_entries(entries, options);
}

namespace detail {

// RFC 4180 records; quoted fields may contain separators, quotes and newlines.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view s) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < s.size() && s[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < s.size() && s[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::InvalidManifest, "unterminated quoted field in manifest");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// Manifest CSV with header `ground_truth,candidate,label`. Relative paths are
/// resolved against the manifest's directory; an empty label defaults to the
/// ground-truth path as written.
inline std::vector<EvalEntry> parse_manifest(std::string_view csv, const fs::path& base_dir) {
  auto rows = detail::parse_csv(csv);
  if (rows.empty()) throw Error(ErrorCode::InvalidManifest, "manifest is empty");
  std::vector<std::string> header;
  for (const std::string& h : rows.front()) header.emplace_back(text::trim(h));
  if (header != std::vector<std::string>{"ground_truth", "candidate", "label"})
    throw Error(ErrorCode::InvalidManifest, "manifest header must be 'ground_truth,candidate,label'", 1);

  std::vector<EvalEntry> entries;
  std::set<std::string> gts, cands, labels;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 3)
      throw Error(ErrorCode::InvalidManifest, "manifest row " + std::to_string(r + 1) + " needs 3 fields", r + 1);
    std::string gt(text::trim(row[0]));
    std::string cand(text::trim(row[1]));
    std::string label(text::trim(row[2]));
    if (gt.empty() || cand.empty())
      throw Error(ErrorCode::InvalidManifest, "manifest row " + std::to_string(r + 1) + " has an empty path", r + 1);
    if (label.empty()) label = gt;
    fs::path gp = fs::path(gt).is_absolute() ? fs::path(gt) : base_dir / gt;
    fs::path cp = fs::path(cand).is_absolute() ? fs::path(cand) : base_dir / cand;
    gp = gp.lexically_normal();
    cp = cp.lexically_normal();
    if (!gts.insert(gp.string()).second)
      throw Error(ErrorCode::InvalidManifest, "duplicate ground-truth path '" + gt + "'", r + 1);
    if (!cands.insert(cp.string()).second)
      throw Error(ErrorCode::InvalidManifest, "duplicate candidate path '" + cand + "'", r + 1);
    if (!labels.insert(label).second)
      throw Error(ErrorCode::InvalidManifest, "duplicate label '" + label + "'", r + 1);
    entries.push_back({gp, cp, label});
  }
  if (entries.empty()) throw Error(ErrorCode::EmptyDataset, "manifest lists no pairs");
  return entries;
}

inline DatasetReport evaluate_manifest(const fs::path& manifest, const PipelineOptions& options = {}) {
  auto entries = parse_manifest(read_file(manifest), manifest.parent_path());
  for (const EvalEntry& e : entries) {
    if (!fs::is_regular_file(e.ground_truth))
      throw Error(ErrorCode::Io, "ground-truth file '" + e.ground_truth.string() + "' does not exist");
  }
  return evaluate_entries(entries, options);
}

/// Evaluates every .puml file under `gt_dir` against the candidate the patch
/// describes; files the patch does not mention are unchanged. The parsed
/// deltas replace native diffing. When normalization rewrites candidate lines
/// the patch no longer lines up with the candidate, so that file is diffed
/// again after normalization.
inline DatasetReport evaluate_patch(std::string_view patch, const fs::path& gt_dir,
                                    const PipelineOptions& options = {}) {
  validate_bin_edges(options.bin_edges);
  std::vector<std::string> names = list_puml_files(gt_dir);
  std::map<std::string, FileDiff> patched;
  for (FileDiff& fd : parse_unified_diff(patch)) {
    std::string rel = fs::path(fd.gt_name).lexically_normal().generic_string();
    fs::path path = gt_dir / rel;
    if (rel.empty() || rel.starts_with("..") || !fs::is_regular_file(path))
      throw Error(ErrorCode::UnresolvableFile, "patch references '" + fd.gt_name + "', which is not under '" +
                                                   gt_dir.string() + "'");
    if (patched.count(rel)) throw Error(ErrorCode::MalformedPatch, "patch touches '" + rel + "' twice");
    if (!std::binary_search(names.begin(), names.end(), rel)) names.insert(std::upper_bound(names.begin(), names.end(), rel), rel);
    patched.emplace(rel, std::move(fd));
  }
  if (names.empty()) throw Error(ErrorCode::EmptyDataset, "no .puml files under '" + gt_dir.string() + "'");

  std::vector<FileMetrics> files(names.size());
  parallel_for(names.size(), options.jobs, [&](std::size_t i) {
    const std::string& rel = names[i];
    std::string gt_text = read_file(gt_dir / rel);
    PumlScript gt = parse_statements(gt_text, rel);
    auto it = patched.find(rel);
    FileDiff full = it == patched.end() ? line_diff(gt.lines, gt.lines, rel, rel) : expand_file_diff(it->second, gt.lines);
    std::vector<std::string> cand_lines = apply_deltas(full.deltas, gt.lines);
    std::string cand_text = text::join(cand_lines, "\n");
    if (!cand_lines.empty()) cand_text += '\n';
    if (options.normalize) {
      std::string normalized = normalize_script(cand_text, options.rules);
      if (normalized != cand_text) {
        PumlScript cand = parse_statements(normalized, rel + " (candidate)");
        files[i] = evaluate_diff(line_diff(gt, cand), gt, cand, rel, options);
        return;
      }
    }
    PumlScript cand = parse_statements(cand_text, rel + " (candidate)");
    files[i] = evaluate_diff(full, gt, cand, rel, options);
  });
  return aggregate(std::move(files), options.bin_edges);
}

}  // namespace pumldiff
