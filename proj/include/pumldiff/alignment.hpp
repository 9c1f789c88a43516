#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pumldiff/assignment.hpp"
#include "pumldiff/diff_engine.hpp"
#include "pumldiff/errors.hpp"
#include "pumldiff/levenshtein.hpp"
#include "pumldiff/puml_model.hpp"

namespace pumldiff {

inline constexpr double kDefaultUnrelatednessThreshold = 0.7;

struct AlignmentOptions {
  /// Pairs whose normalized distance exceeds this are split back into one
  /// deletion and one insertion, except arrows joining the same two nodes.
  double tau = kDefaultUnrelatednessThreshold;
};

struct AlignedPair {
  LineDelta gt_delta;
  LineDelta cand_delta;
  std::size_t distance = 0;
  double normalized_distance = 0.0;
};

struct AlignmentResult {
  std::vector<AlignedPair> pairs;
  std::vector<LineDelta> unpaired_removed;
  std::vector<LineDelta> unpaired_added;
};

/// Kind of the statement a delta starts with (first line of its text).
inline StatementKind delta_kind(const LineDelta& d) {
  std::string_view t = d.text;
  std::size_t nl = t.find('\n');
  return classify_line(nl == std::string_view::npos ? t : t.substr(0, nl));
}

/// Text a delta is compared by: the canonical left-to-right rendering for
/// arrows, so a rewritten but equivalent arrow is at distance 0, and the
/// trimmed raw text for everything else.
inline std::string alignment_text(const LineDelta& d) {
  std::string_view t = text::trim(d.text);
  if (delta_kind(d) == StatementKind::ArrowLine) return to_canonical_string(parse_arrow(t));
  return std::string(t);
}

/// True for two arrows whose endpoints are the same pair of nodes in either
/// order; such a pair is one connector however much its text changed.
inline bool same_connector(const LineDelta& a, const LineDelta& b) {
  if (delta_kind(a) != StatementKind::ArrowLine || delta_kind(b) != StatementKind::ArrowLine) return false;
  ArrowStatement x = parse_arrow(text::trim(a.text));
  ArrowStatement y = parse_arrow(text::trim(b.text));
  return std::minmax(x.source_node, x.target_node) == std::minmax(y.source_node, y.target_node);
}

/// Pairs removed with added deltas of the same statement kind so that the
/// summed Levenshtein distance of their alignment texts is minimal. Among
/// equal-distance matchings the one keeping pairs closest in rank order wins.
inline AlignmentResult assign_pairs(std::span<const LineDelta> removed, std::span<const LineDelta> added,
                                    const AlignmentOptions& options = {}) {
  if (!(options.tau >= 0.0 && options.tau <= 1.0))
    throw Error(ErrorCode::InvalidOption, "unrelatedness threshold must lie in [0, 1]");

  auto by_gt = [](const LineDelta& a, const LineDelta& b) { return a.gt_line_no < b.gt_line_no; };
  auto by_cand = [](const LineDelta& a, const LineDelta& b) { return a.cand_line_no < b.cand_line_no; };

  std::map<StatementKind, std::pair<std::vector<LineDelta>, std::vector<LineDelta>>> partitions;
  for (const LineDelta& d : removed) partitions[delta_kind(d)].first.push_back(d);
  for (const LineDelta& d : added) partitions[delta_kind(d)].second.push_back(d);

  AlignmentResult result;
  for (auto& [kind, sides] : partitions) {
    auto& [rs, cs] = sides;
    std::stable_sort(rs.begin(), rs.end(), by_gt);
    std::stable_sort(cs.begin(), cs.end(), by_cand);
    if (rs.empty() || cs.empty()) {
      result.unpaired_removed.insert(result.unpaired_removed.end(), rs.begin(), rs.end());
      result.unpaired_added.insert(result.unpaired_added.end(), cs.begin(), cs.end());
      continue;
    }

    const std::size_t nr = rs.size();
    const std::size_t nc = cs.size();
    std::vector<std::string> rt, ct;
    for (const LineDelta& d : rs) rt.push_back(alignment_text(d));
    for (const LineDelta& d : cs) ct.push_back(alignment_text(d));
    std::vector<std::size_t> distance(nr * nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) distance[i * nc + j] = levenshtein(rt[i], ct[j]);

    // cost = distance * weight + |i - j|; the rank term sums to less than
    // weight over any matching, so it only orders equal-distance matchings
    const auto weight = static_cast<std::int64_t>(std::min(nr, nc) * std::max(nr, nc) + 1);
    CostMatrix cost(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nc; ++j) {
        auto rank_gap = static_cast<std::int64_t>(i > j ? i - j : j - i);
        cost(i, j) = static_cast<std::int64_t>(distance[i * nc + j]) * weight + rank_gap;
      }
    }
    Assignment assignment = linear_sum_assignment(cost);

    std::vector<char> used_r(nr, 0), used_c(nc, 0);
    for (auto [i, j] : assignment.pairs) {
      std::size_t d = distance[i * nc + j];
      double normalized = normalized_levenshtein(rt[i], ct[j], d);
      if (d > 0 && normalized > options.tau && !same_connector(rs[i], cs[j])) continue;
      used_r[i] = used_c[j] = 1;
      result.pairs.push_back({rs[i], cs[j], d, normalized});
    }
    for (std::size_t i = 0; i < nr; ++i)
      if (!used_r[i]) result.unpaired_removed.push_back(rs[i]);
    for (std::size_t j = 0; j < nc; ++j)
      if (!used_c[j]) result.unpaired_added.push_back(cs[j]);
  }

  std::sort(result.pairs.begin(), result.pairs.end(), [](const AlignedPair& a, const AlignedPair& b) {
    return std::tie(a.gt_delta.gt_line_no, a.cand_delta.cand_line_no) <
           std::tie(b.gt_delta.gt_line_no, b.cand_delta.cand_line_no);
  });
  std::stable_sort(result.unpaired_removed.begin(), result.unpaired_removed.end(), by_gt);
  std::stable_sort(result.unpaired_added.begin(), result.unpaired_added.end(), by_cand);
  return result;
}

}  // namespace pumldiff
