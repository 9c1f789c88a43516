#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pumldiff/errors.hpp"
#include "pumldiff/levenshtein.hpp"
#include "pumldiff/puml_model.hpp"

namespace pumldiff {

enum class ErrorCategory { Node, EdgeDirection, EdgeType, Message, Note, Group, Box, Participant };

inline constexpr std::size_t kCategoryCount = 8;

inline constexpr std::array<ErrorCategory, kCategoryCount> kAllCategories = {
    ErrorCategory::Node,    ErrorCategory::EdgeDirection, ErrorCategory::EdgeType, ErrorCategory::Message,
    ErrorCategory::Note,    ErrorCategory::Group,         ErrorCategory::Box,      ErrorCategory::Participant};

enum class ErrorKind { Insertion, Deletion, Substitution };

inline constexpr std::array<ErrorKind, 3> kAllKinds = {ErrorKind::Insertion, ErrorKind::Deletion,
                                                       ErrorKind::Substitution};

/// Stable machine-readable names.
inline const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Node: return "node";
    case ErrorCategory::EdgeDirection: return "edge_direction";
    case ErrorCategory::EdgeType: return "edge_type";
    case ErrorCategory::Message: return "message";
    case ErrorCategory::Note: return "note";
    case ErrorCategory::Group: return "group";
    case ErrorCategory::Box: return "box";
    case ErrorCategory::Participant: return "participant";
  }
  return "";
}

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Insertion: return "insertion";
    case ErrorKind::Deletion: return "deletion";
    case ErrorKind::Substitution: return "substitution";
  }
  return "";
}

inline std::optional<ErrorCategory> category_from_string(std::string_view s) {
  for (ErrorCategory c : kAllCategories)
    if (s == to_string(c)) return c;
  return std::nullopt;
}

inline std::optional<ErrorKind> kind_from_string(std::string_view s) {
  for (ErrorKind k : kAllKinds)
    if (s == to_string(k)) return k;
  return std::nullopt;
}

struct ErrorRecord {
  ErrorCategory category = ErrorCategory::Node;
  ErrorKind kind = ErrorKind::Substitution;
  std::string file;
  std::optional<std::size_t> gt_line_no;
  std::optional<std::size_t> cand_line_no;
  std::string detail;
  std::optional<std::size_t> edit_distance;

  bool operator==(const ErrorRecord&) const = default;
};

enum class Side { Removed, Added };

/// Category used when a whole non-arrow statement is inserted, deleted or
/// substituted.
inline std::optional<ErrorCategory> statement_category(StatementKind kind) {
  switch (kind) {
    case StatementKind::NoteDecl: return ErrorCategory::Note;
    case StatementKind::GroupDecl: return ErrorCategory::Group;
    case StatementKind::BoxDecl: return ErrorCategory::Box;
    case StatementKind::ParticipantDecl: return ErrorCategory::Participant;
    default: return std::nullopt;
  }
}

namespace detail {

inline std::string first_line(std::string_view s) {
  std::size_t nl = s.find('\n');
  return std::string(nl == std::string_view::npos ? s : s.substr(0, nl));
}

inline std::string arrow_label(const ArrowStatement& a) {
  return a.source_node + (a.written_direction == WrittenDirection::Bidirectional ? " <-> " : " -> ") + a.target_node;
}

// Fields compared for structural statements; colors are ignored.
inline bool same_structure(const PumlStatement& a, const PumlStatement& b) {
  switch (a.kind) {
    case StatementKind::ParticipantDecl: {
      const auto& x = a.participant();
      const auto& y = b.participant();
      return x.keyword == y.keyword && x.name == y.name && x.alias == y.alias;
    }
    case StatementKind::NoteDecl: {
      const auto& x = a.note();
      const auto& y = b.note();
      return x.position == y.position && x.anchors == y.anchors && x.body == y.body;
    }
    case StatementKind::GroupDecl: return a.group() == b.group();
    case StatementKind::BoxDecl: return a.box().label == b.box().label;
    default: return text::trim(a.text) == text::trim(b.text);
  }
}

}  // namespace detail

/// Errors for one aligned (ground truth, candidate) statement pair. Both
/// statements must be of the same kind.
inline std::vector<ErrorRecord> classify_pair(const PumlStatement& gt, const PumlStatement& cand,
                                              std::string_view file) {
  if (gt.kind != cand.kind) {
    throw Error(ErrorCode::KindMismatch,
                std::string(file) + ": cannot compare " + to_string(gt.kind) + " line " + std::to_string(gt.line_no) +
                    " with " + to_string(cand.kind) + " line " + std::to_string(cand.line_no),
                gt.line_no);
  }
  std::vector<ErrorRecord> out;
  auto record = [&](ErrorCategory cat, ErrorKind kind, std::string detail,
                    std::optional<std::size_t> distance = std::nullopt) {
    ErrorRecord r{cat, kind, std::string(file), gt.line_no, cand.line_no, std::move(detail), distance};
    if (kind == ErrorKind::Insertion) r.gt_line_no.reset();
    if (kind == ErrorKind::Deletion) r.cand_line_no.reset();
    out.push_back(std::move(r));
  };

  if (gt.kind != StatementKind::ArrowLine) {
    if (!detail::same_structure(gt, cand)) {
      record(*statement_category(gt.kind), ErrorKind::Substitution,
             to_string(gt.kind) + std::string(" '") + detail::first_line(gt.text) + "' -> '" +
                 detail::first_line(cand.text) + "'");
    }
    return out;
  }

  const ArrowStatement& g = gt.arrow();
  const ArrowStatement& c = cand.arrow();
  const bool g_bi = g.written_direction == WrittenDirection::Bidirectional;
  const bool c_bi = c.written_direction == WrittenDirection::Bidirectional;
  std::string color_note;
  if (g.color != c.color) {
    color_note = " (color " + g.color.value_or("none") + " -> " + c.color.value_or("none") + ")";
  }

  const bool straight = g.source_node == c.source_node && g.target_node == c.target_node;
  const bool crossed = g.source_node == c.target_node && g.target_node == c.source_node;
  if (straight || crossed) {
    bool direction_error = g_bi != c_bi || (!g_bi && !straight);
    if (direction_error) {
      record(ErrorCategory::EdgeDirection, ErrorKind::Substitution,
             "direction " + detail::arrow_label(g) + " became " + detail::arrow_label(c) + color_note);
    }
  } else {
    int straight_miss = (g.source_node != c.source_node) + (g.target_node != c.target_node);
    int crossed_miss = (g.source_node != c.target_node) + (g.target_node != c.source_node);
    std::array<std::pair<const std::string*, const std::string*>, 2> ends = {
        std::pair{&g.source_node, &c.source_node}, std::pair{&g.target_node, &c.target_node}};
    if (crossed_miss < straight_miss) {
      ends = {std::pair{&g.source_node, &c.target_node}, std::pair{&g.target_node, &c.source_node}};
    }
    for (auto [want, got] : ends) {
      if (*want == *got) continue;
      record(ErrorCategory::Node, ErrorKind::Substitution, "node " + *want + " -> " + *got + color_note,
             levenshtein(*want, *got));
    }
  }

  if (g.line_style != c.line_style) {
    auto style = [](LineStyle s) { return s == LineStyle::Solid ? "solid" : "dashed"; };
    record(ErrorCategory::EdgeType, ErrorKind::Substitution,
           std::string("type ") + style(g.line_style) + " -> " + style(c.line_style) + " on " +
               detail::arrow_label(g) + color_note);
  }

  if (g.message != c.message) {
    if (g.message && c.message) {
      record(ErrorCategory::Message, ErrorKind::Substitution, "message '" + *g.message + "' -> '" + *c.message + "'",
             levenshtein(*g.message, *c.message));
    } else if (g.message) {
      record(ErrorCategory::Message, ErrorKind::Deletion, "message '" + *g.message + "' dropped");
    } else {
      record(ErrorCategory::Message, ErrorKind::Insertion, "message '" + *c.message + "' added");
    }
  }
  return out;
}

/// Errors for a statement that has no counterpart on the other side.
inline std::vector<ErrorRecord> classify_unpaired(const PumlStatement& stmt, Side side, std::string_view file,
                                                  SelfMessageNodes self = SelfMessageNodes::Two) {
  const ErrorKind kind = side == Side::Removed ? ErrorKind::Deletion : ErrorKind::Insertion;
  std::optional<std::size_t> gt_line, cand_line;
  (side == Side::Removed ? gt_line : cand_line) = stmt.line_no;

  std::vector<ErrorRecord> out;
  auto record = [&](ErrorCategory cat, std::string detail) {
    out.push_back({cat, kind, std::string(file), gt_line, cand_line, std::move(detail), std::nullopt});
  };

  if (stmt.kind == StatementKind::ArrowLine) {
    const ArrowStatement& a = stmt.arrow();
    record(ErrorCategory::Node, "node " + a.source_node);
    if (node_occurrences(a, self) == 2) record(ErrorCategory::Node, "node " + a.target_node);
    record(ErrorCategory::EdgeDirection, "arrow " + detail::arrow_label(a));
    if (a.message) record(ErrorCategory::Message, "message '" + *a.message + "'");
  } else if (auto cat = statement_category(stmt.kind)) {
    record(*cat, to_string(stmt.kind) + std::string(" '") + detail::first_line(stmt.text) + "'");
  }
  return out;
}

/// Report order: file, ground-truth line, candidate line, category, kind.
inline void sort_records(std::vector<ErrorRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const ErrorRecord& a, const ErrorRecord& b) {
    return std::tie(a.file, a.gt_line_no, a.cand_line_no, a.category, a.kind) <
           std::tie(b.file, b.gt_line_no, b.cand_line_no, b.category, b.kind);
  });
}

}  // namespace pumldiff
