#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pumldiff/errors.hpp"
#include "pumldiff/puml_model.hpp"
#include "pumldiff/text.hpp"

namespace pumldiff {

enum class DeltaKind { Removed, Added, Context };

/// One line of a diff. Removed lines carry only the ground-truth line number,
/// Added lines only the candidate line number, Context lines both.
struct LineDelta {
  DeltaKind kind = DeltaKind::Context;
  std::string text;
  std::optional<std::size_t> gt_line_no;
  std::optional<std::size_t> cand_line_no;

  static LineDelta removed(std::string text, std::size_t gt) { return {DeltaKind::Removed, std::move(text), gt, {}}; }
  static LineDelta added(std::string text, std::size_t cand) { return {DeltaKind::Added, std::move(text), {}, cand}; }
  static LineDelta context(std::string text, std::size_t gt, std::size_t cand) {
    return {DeltaKind::Context, std::move(text), gt, cand};
  }

  bool operator==(const LineDelta&) const = default;
};

struct FileDiff {
  std::string gt_name;
  std::string cand_name;
  std::vector<LineDelta> deltas;

  std::size_t count(DeltaKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(deltas.begin(), deltas.end(), [kind](const LineDelta& d) { return d.kind == kind; }));
  }
  bool has_changes() const { return count(DeltaKind::Removed) + count(DeltaKind::Added) > 0; }
  bool operator==(const FileDiff&) const = default;
};

namespace detail {

enum class EditOp { Keep, Delete, Insert };

// Myers O(ND) shortest edit script over interned line ids. Where both moves
// reach the same diagonal furthest point, the deletion is taken.
inline std::vector<EditOp> myers_edit_script(const std::vector<int>& a, const std::vector<int>& b) {
  const long n = static_cast<long>(a.size());
  const long m = static_cast<long>(b.size());
  const long max = n + m;
  const long offset = max + 1;
  std::vector<long> v(2 * max + 3, 0);
  std::vector<std::vector<long>> trace;

  long final_d = 0;
  bool done = (max == 0);
  for (long d = 0; d <= max && !done; ++d) {
    trace.push_back(v);
    for (long k = -d; k <= d; k += 2) {
      long x;
      if (k == -d || (k != d && v[offset + k - 1] < v[offset + k + 1])) {
        x = v[offset + k + 1];
      } else {
        x = v[offset + k - 1] + 1;
      }
      long y = x - k;
      while (x < n && y < m && a[x] == b[y]) {
        ++x;
        ++y;
      }
      v[offset + k] = x;
      if (x >= n && y >= m) {
        final_d = d;
        done = true;
        break;
      }
    }
  }

  std::vector<EditOp> ops;
  long x = n;
  long y = m;
  for (long d = final_d; d >= 0 && (x > 0 || y > 0); --d) {
    const std::vector<long>& vd = trace[static_cast<std::size_t>(d)];
    long k = x - y;
    long prev_k;
    if (k == -d || (k != d && vd[offset + k - 1] < vd[offset + k + 1])) {
      prev_k = k + 1;
    } else {
      prev_k = k - 1;
    }
    long prev_x = d == 0 ? 0 : vd[offset + prev_k];
    long prev_y = prev_x - prev_k;
    if (d == 0) {
      prev_x = 0;
      prev_y = 0;
    }
    while (x > prev_x && y > prev_y) {
      ops.push_back(EditOp::Keep);
      --x;
      --y;
    }
    if (d > 0) ops.push_back(x == prev_x ? EditOp::Insert : EditOp::Delete);
    x = prev_x;
    y = prev_y;
  }
  std::reverse(ops.begin(), ops.end());

  // canonical block order: within each run of changes, deletions first
  for (std::size_t i = 0; i < ops.size();) {
    if (ops[i] == EditOp::Keep) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < ops.size() && ops[j] != EditOp::Keep) ++j;
    std::stable_partition(ops.begin() + static_cast<long>(i), ops.begin() + static_cast<long>(j),
                          [](EditOp op) { return op == EditOp::Delete; });
    i = j;
  }
  return ops;
}

}  // namespace detail

/// Line diff with trailing whitespace ignored. Context deltas carry the
/// candidate text so that applying the deltas rebuilds the candidate exactly.
inline FileDiff line_diff(std::span<const std::string> gt, std::span<const std::string> cand,
                          std::string gt_name = {}, std::string cand_name = {}) {
  std::unordered_map<std::string_view, int> ids;
  auto intern = [&](std::span<const std::string> lines) {
    std::vector<int> out;
    out.reserve(lines.size());
    for (const std::string& line : lines) {
      auto [it, inserted] = ids.emplace(text::rtrim(line), static_cast<int>(ids.size()));
      out.push_back(it->second);
    }
    return out;
  };
  std::vector<int> a = intern(gt);
  std::vector<int> b = intern(cand);

  FileDiff diff{std::move(gt_name), std::move(cand_name), {}};
  std::size_t i = 0;
  std::size_t j = 0;
  for (detail::EditOp op : detail::myers_edit_script(a, b)) {
    switch (op) {
      case detail::EditOp::Keep:
        diff.deltas.push_back(LineDelta::context(cand[j], i + 1, j + 1));
        ++i;
        ++j;
        break;
      case detail::EditOp::Delete:
        diff.deltas.push_back(LineDelta::removed(gt[i], i + 1));
        ++i;
        break;
      case detail::EditOp::Insert:
        diff.deltas.push_back(LineDelta::added(cand[j], j + 1));
        ++j;
        break;
    }
  }
  return diff;
}

inline FileDiff line_diff(const PumlScript& gt, const PumlScript& cand) {
  return line_diff(gt.lines, cand.lines, gt.source_name, cand.source_name);
}

/// Rebuilds the candidate lines from a full diff (every ground-truth line
/// accounted for as Removed or Context).
inline std::vector<std::string> apply_deltas(std::span<const LineDelta> deltas, std::span<const std::string> gt) {
  std::vector<std::string> out;
  std::size_t g = 0;
  for (const LineDelta& d : deltas) {
    if (d.kind == DeltaKind::Added) {
      out.push_back(d.text);
      continue;
    }
    if (g >= gt.size() || text::rtrim(gt[g]) != text::rtrim(d.text)) {
      throw Error(ErrorCode::MalformedPatch, "delta does not match ground-truth line " + std::to_string(g + 1), g + 1);
    }
    if (d.kind == DeltaKind::Context) out.push_back(d.text);
    ++g;
  }
  if (g != gt.size()) {
    throw Error(ErrorCode::MalformedPatch, "diff does not cover all ground-truth lines", g + 1);
  }
  return out;
}

/// Serializes the changed regions as unified diff hunks. Returns an empty
/// string when the diff has no changes.
inline std::string to_unified_diff(const FileDiff& diff, std::size_t context = 3) {
  const auto& ds = diff.deltas;
  std::vector<std::size_t> changes;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds[i].kind != DeltaKind::Context) changes.push_back(i);
  }
  if (changes.empty()) return {};

  std::string out = "--- a/" + diff.gt_name + "\n+++ b/" + diff.cand_name + "\n";
  auto range = [](std::size_t start, std::size_t count) {
    return count == 1 ? std::to_string(start) : std::to_string(start) + "," + std::to_string(count);
  };

  std::size_t c = 0;
  while (c < changes.size()) {
    std::size_t first = changes[c];
    std::size_t last = first;
    while (c + 1 < changes.size() && changes[c + 1] - last <= 2 * context + 1) last = changes[++c];
    ++c;
    std::size_t begin = first >= context ? first - context : 0;
    std::size_t end = std::min(ds.size(), last + context + 1);

    // lines already consumed on each side before the hunk
    std::size_t gt_before = 0, cand_before = 0;
    for (std::size_t i = 0; i < begin; ++i) {
      if (ds[i].kind != DeltaKind::Added) ++gt_before;
      if (ds[i].kind != DeltaKind::Removed) ++cand_before;
    }
    std::size_t gt_count = 0, cand_count = 0;
    std::string body;
    for (std::size_t i = begin; i < end; ++i) {
      const LineDelta& d = ds[i];
      char prefix = d.kind == DeltaKind::Context ? ' ' : d.kind == DeltaKind::Removed ? '-' : '+';
      if (d.kind != DeltaKind::Added) ++gt_count;
      if (d.kind != DeltaKind::Removed) ++cand_count;
      body += prefix;
      body += d.text;
      body += '\n';
    }
    out += "@@ -" + range(gt_count ? gt_before + 1 : gt_before, gt_count) + " +" +
           range(cand_count ? cand_before + 1 : cand_before, cand_count) + " @@\n";
    out += body;
  }
  return out;
}

namespace detail {

inline std::string patch_file_name(std::string_view field) {
  // "a/dir/x.puml\t2024-01-01 ..." -> "dir/x.puml"
  std::size_t tab = field.find('\t');
  if (tab != std::string_view::npos) field = field.substr(0, tab);
  field = text::trim(field);
  field = text::unquote(field);
  if (field == "/dev/null") return std::string(field);
  if (field.starts_with("a/") || field.starts_with("b/")) field.remove_prefix(2);
  return std::string(field);
}

inline bool parse_range(std::string_view s, std::size_t& start, std::size_t& count) {
  std::size_t comma = s.find(',');
  std::string_view first = s.substr(0, comma);
  auto [p1, e1] = std::from_chars(first.data(), first.data() + first.size(), start);
  if (e1 != std::errc{} || p1 != first.data() + first.size()) return false;
  count = 1;
  if (comma != std::string_view::npos) {
    std::string_view second = s.substr(comma + 1);
    auto [p2, e2] = std::from_chars(second.data(), second.data() + second.size(), count);
    if (e2 != std::errc{} || p2 != second.data() + second.size()) return false;
  }
  return true;
}

}  // namespace detail

/// Parses a unified diff into one partial FileDiff per file section: only the
/// lines inside hunks are present. Text outside file sections (commit
/// headers, "diff --git", "index" lines) is skipped.
inline std::vector<FileDiff> parse_unified_diff(std::string_view patch) {
  std::vector<std::string> lines = text::split_lines(patch);
  std::vector<FileDiff> files;
  bool have_file = false;
  std::size_t last_gt_end = 0, last_cand_end = 0;

  auto fail = [](std::size_t line_no, const std::string& why) -> Error {
    return Error(ErrorCode::MalformedPatch, "patch line " + std::to_string(line_no) + ": " + why, line_no);
  };

  std::size_t i = 0;
  while (i < lines.size()) {
    const std::string& line = lines[i];
    const std::size_t line_no = i + 1;
    if (line.starts_with("--- ")) {
      if (i + 1 >= lines.size() || !lines[i + 1].starts_with("+++ "))
        throw fail(line_no + 1, "expected '+++' header after '---'");
      FileDiff f;
      f.gt_name = detail::patch_file_name(std::string_view(line).substr(4));
      f.cand_name = detail::patch_file_name(std::string_view(lines[i + 1]).substr(4));
      if (f.gt_name == "/dev/null") f.gt_name = f.cand_name;
      if (f.cand_name == "/dev/null") f.cand_name = f.gt_name;
      files.push_back(std::move(f));
      have_file = true;
      last_gt_end = last_cand_end = 0;
      i += 2;
      continue;
    }
    if (!line.starts_with("@@")) {
      ++i;
      continue;
    }
    if (!have_file) throw fail(line_no, "hunk before any file header");

    std::string_view header(line);
    std::size_t close = header.find("@@", 2);
    if (close == std::string_view::npos) throw fail(line_no, "unterminated hunk header");
    std::string_view ranges = text::trim(header.substr(2, close - 2));
    std::size_t space = ranges.find(' ');
    if (space == std::string_view::npos || ranges.front() != '-' || ranges[space + 1] != '+')
      throw fail(line_no, "bad hunk header");
    std::size_t gt_start = 0, gt_count = 0, cand_start = 0, cand_count = 0;
    if (!detail::parse_range(ranges.substr(1, space - 1), gt_start, gt_count) ||
        !detail::parse_range(text::trim(ranges.substr(space + 2)), cand_start, cand_count))
      throw fail(line_no, "bad hunk range");
    std::size_t g = gt_count ? gt_start : gt_start + 1;
    std::size_t c = cand_count ? cand_start : cand_start + 1;
    if ((gt_count && gt_start == 0) || (cand_count && cand_start == 0))
      throw fail(line_no, "hunk starts at line 0");
    if (g <= last_gt_end || c <= last_cand_end) throw fail(line_no, "overlapping or out-of-order hunk");

    FileDiff& f = files.back();
    std::size_t gt_left = gt_count, cand_left = cand_count;
    ++i;
    while (gt_left > 0 || cand_left > 0) {
      if (i >= lines.size()) throw fail(i + 1, "hunk ends early: header promised more lines");
      std::string_view body(lines[i]);
      char prefix = body.empty() ? ' ' : body.front();
      std::string content(body.empty() ? body : body.substr(1));
      if (prefix == '\\') {
        ++i;
        continue;
      }
      if (prefix == ' ' && gt_left > 0 && cand_left > 0) {
        f.deltas.push_back(LineDelta::context(std::move(content), g++, c++));
        --gt_left;
        --cand_left;
      } else if (prefix == '-' && gt_left > 0) {
        f.deltas.push_back(LineDelta::removed(std::move(content), g++));
        --gt_left;
      } else if (prefix == '+' && cand_left > 0) {
        f.deltas.push_back(LineDelta::added(std::move(content), c++));
        --cand_left;
      } else {
        throw fail(i + 1, "line does not fit the hunk counts");
      }
      ++i;
    }
    while (i < lines.size() && lines[i].starts_with("\\")) ++i;
    if (i < lines.size() && !lines[i].empty()) {
      const std::string& next = lines[i];
      bool stray = (next.front() == ' ') || (next.front() == '+' && !next.starts_with("+++ ")) ||
                   (next.front() == '-' && !next.starts_with("--- ") && next != "-- ");
      if (stray) throw fail(i + 1, "hunk has more lines than its header");
    }
    last_gt_end = g - 1;
    last_cand_end = c - 1;
  }
  return files;
}

/// Turns the hunk-only deltas of a parsed patch into a full diff against the
/// ground-truth lines: untouched lines become Context. Context and Removed
/// lines must agree with the ground truth (ignoring trailing whitespace).
inline FileDiff expand_file_diff(const FileDiff& partial, std::span<const std::string> gt) {
  FileDiff full{partial.gt_name, partial.cand_name, {}};
  std::size_t g = 1;
  std::size_t c = 1;
  auto mismatch = [&](std::size_t line) {
    return Error(ErrorCode::MalformedPatch,
                 "patch for '" + partial.gt_name + "' does not apply at ground-truth line " + std::to_string(line), line);
  };
  auto fill_to_gt = [&](std::size_t target) {
    while (g < target) {
      if (g > gt.size()) throw mismatch(g);
      full.deltas.push_back(LineDelta::context(gt[g - 1], g, c));
      ++g;
      ++c;
    }
  };
  for (const LineDelta& d : partial.deltas) {
    if (d.kind == DeltaKind::Added) {
      if (*d.cand_line_no < c) throw mismatch(g);
      fill_to_gt(g + (*d.cand_line_no - c));
      full.deltas.push_back(LineDelta::added(d.text, c++));
      continue;
    }
    if (*d.gt_line_no < g) throw mismatch(*d.gt_line_no);
    fill_to_gt(*d.gt_line_no);
    if (g > gt.size() || text::rtrim(gt[g - 1]) != text::rtrim(d.text)) throw mismatch(g);
    if (d.kind == DeltaKind::Context) {
      if (d.cand_line_no && *d.cand_line_no != c) throw mismatch(g);
      full.deltas.push_back(LineDelta::context(d.text, g++, c++));
    } else {
      full.deltas.push_back(LineDelta::removed(gt[g - 1], g));
      ++g;
    }
  }
  fill_to_gt(gt.size() + 1);
  return full;
}

}  // namespace pumldiff
