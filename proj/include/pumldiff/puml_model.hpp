#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pumldiff/errors.hpp"
#include "pumldiff/text.hpp"

namespace pumldiff {

enum class StatementKind {
  ArrowLine,
  ParticipantDecl,
  NoteDecl,
  BoxDecl,
  GroupDecl,
  StructuralEnd,
  Meta,
  Other,
};

inline const char* to_string(StatementKind kind) {
  switch (kind) {
    case StatementKind::ArrowLine: return "arrow";
    case StatementKind::ParticipantDecl: return "participant";
    case StatementKind::NoteDecl: return "note";
    case StatementKind::BoxDecl: return "box";
    case StatementKind::GroupDecl: return "group";
    case StatementKind::StructuralEnd: return "end";
    case StatementKind::Meta: return "meta";
    case StatementKind::Other: return "other";
  }
  return "other";
}

/// Kinds that survive preprocessing and become statements.
inline bool is_relevant(StatementKind kind) {
  switch (kind) {
    case StatementKind::ArrowLine:
    case StatementKind::ParticipantDecl:
    case StatementKind::NoteDecl:
    case StatementKind::BoxDecl:
    case StatementKind::GroupDecl:
      return true;
    default:
      return false;
  }
}

enum class WrittenDirection { LeftToRight, RightToLeft, Bidirectional };
enum class LineStyle { Solid, Dashed };

/// One message arrow. `source_node`/`target_node` are canonical: for a
/// right-to-left arrow ("A <- B") the sender B is the source.
struct ArrowStatement {
  std::string source_node;
  std::string target_node;
  WrittenDirection written_direction = WrittenDirection::LeftToRight;
  LineStyle line_style = LineStyle::Solid;
  std::optional<std::string> color;
  std::optional<std::string> message;
  std::string raw;

  bool is_self_message() const { return source_node == target_node; }
  bool operator==(const ArrowStatement&) const = default;
};

enum class ParticipantKeyword { Participant, Actor, Boundary, Control, Entity, Database, Collections, Queue };

struct ParticipantStatement {
  ParticipantKeyword keyword = ParticipantKeyword::Participant;
  std::string name;
  std::optional<std::string> alias;
  std::optional<std::string> color;

  /// Identifier used for this participant on arrow lines.
  const std::string& node_name() const { return alias ? *alias : name; }
  bool operator==(const ParticipantStatement&) const = default;
};

enum class NotePosition { Over, LeftOf, RightOf };

struct NoteStatement {
  NotePosition position = NotePosition::Over;
  std::vector<std::string> anchors;
  std::string body;
  std::size_t first_line = 0;
  std::size_t last_line = 0;

  bool operator==(const NoteStatement&) const = default;
};

enum class GroupKeyword { Group, Alt, Opt, Loop, Par, Break, Critical, Else };

struct GroupStatement {
  GroupKeyword keyword = GroupKeyword::Group;
  std::optional<std::string> label;

  bool operator==(const GroupStatement&) const = default;
};

struct BoxStatement {
  std::optional<std::string> label;
  std::optional<std::string> color;

  bool operator==(const BoxStatement&) const = default;
};

struct PumlStatement {
  StatementKind kind = StatementKind::Other;
  std::size_t line_no = 0;       // first source line, 1-based
  std::size_t last_line_no = 0;  // equal to line_no except for folded notes
  std::string text;              // trimmed source lines joined with '\n'
  std::variant<std::monostate, ArrowStatement, ParticipantStatement, NoteStatement, GroupStatement,
               BoxStatement>
      payload;

  const ArrowStatement& arrow() const { return std::get<ArrowStatement>(payload); }
  const ParticipantStatement& participant() const { return std::get<ParticipantStatement>(payload); }
  const NoteStatement& note() const { return std::get<NoteStatement>(payload); }
  const GroupStatement& group() const { return std::get<GroupStatement>(payload); }
  const BoxStatement& box() const { return std::get<BoxStatement>(payload); }
};

struct ParseWarning {
  ErrorCode code;
  std::size_t line;
  std::string message;
};

struct PumlScript {
  std::string source_name;
  std::vector<std::string> lines;
  std::vector<PumlStatement> statements;
  std::vector<ParseWarning> warnings;

  /// Index into `statements` of the statement covering `line_no`, if any.
  std::optional<std::size_t> statement_at(std::size_t line_no) const {
    if (line_no == 0 || line_no > line_owner_.size()) return std::nullopt;
    return line_owner_[line_no - 1];
  }

  std::vector<std::optional<std::size_t>> line_owner_;
};

struct GroundTruthCounts {
  std::size_t node_count = 0;
  std::size_t arrow_count = 0;
  std::size_t message_count = 0;
  std::size_t note_count = 0;
  std::size_t group_count = 0;
  std::size_t box_count = 0;
  std::size_t participant_count = 0;
  std::size_t relevant_line_count = 0;

  std::size_t element_total() const {
    return node_count + arrow_count + message_count + note_count + group_count + box_count +
           participant_count;
  }
  bool operator==(const GroundTruthCounts&) const = default;
};

namespace detail {

struct ArrowToken {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool left_head = false;
  bool right_head = false;
  int dashes = 0;
  std::optional<std::string> color;
};

inline bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '@';
}

// Grammar: [<|<<] ('-' | '[...]')+ [> | >> | \ | \\ | / | // | x], one or two
// dashes, at least one head. A bracket group may only follow a dash.
inline std::optional<ArrowToken> match_arrow_at(std::string_view s, std::size_t i) {
  ArrowToken tok;
  tok.begin = i;
  std::size_t p = i;
  const std::size_t n = s.size();
  if (s.substr(p, 2) == "<<") {
    tok.left_head = true;
    p += 2;
  } else if (p < n && s[p] == '<') {
    tok.left_head = true;
    p += 1;
  }
  while (p < n) {
    if (s[p] == '-') {
      ++tok.dashes;
      ++p;
    } else if (s[p] == '[' && tok.dashes > 0 && !tok.color) {
      std::size_t close = s.find(']', p);
      if (close == std::string_view::npos) return std::nullopt;
      tok.color = std::string(text::trim(s.substr(p + 1, close - p - 1)));
      p = close + 1;
    } else {
      break;
    }
  }
  if (tok.dashes < 1 || tok.dashes > 2) return std::nullopt;
  auto boundary_after = [&](std::size_t k) { return k >= n || text::is_space(s[k]) || s[k] == '"'; };
  if (s.substr(p, 2) == ">>") {
    tok.right_head = true;
    p += 2;
  } else if (p < n && s[p] == '>') {
    tok.right_head = true;
    p += 1;
    if (p < n && s[p] == 'x' && boundary_after(p + 1)) ++p;
  } else if (s.substr(p, 2) == "\\\\" || s.substr(p, 2) == "//") {
    tok.right_head = true;
    p += 2;
  } else if (p < n && (s[p] == '\\' || s[p] == '/')) {
    tok.right_head = true;
    p += 1;
  } else if (p < n && s[p] == 'x' && boundary_after(p + 1)) {
    tok.right_head = true;
    p += 1;
  }
  if (!tok.left_head && !tok.right_head) return std::nullopt;
  if (tok.color && tok.color->empty()) tok.color.reset();
  tok.end = p;
  return tok;
}

/// Leftmost arrow token outside double quotes.
inline std::optional<ArrowToken> find_arrow(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '"') {
      quoted = !quoted;
      continue;
    }
    if (quoted || (c != '<' && c != '-')) continue;
    if (auto tok = match_arrow_at(s, i)) return tok;
  }
  return std::nullopt;
}

/// Part of an arrow line before the message separator.
inline std::string_view arrow_head_part(std::string_view line) {
  std::size_t colon = text::find_unquoted(line, ':');
  return colon == std::string_view::npos ? line : line.substr(0, colon);
}

struct LeadingToken {
  std::string lower;
  std::string_view rest;  // left-trimmed remainder
};

inline LeadingToken leading_token(std::string_view trimmed) {
  std::size_t k = 0;
  while (k < trimmed.size() && is_word_char(trimmed[k])) ++k;
  return {text::to_lower(trimmed.substr(0, k)), text::ltrim(trimmed.substr(k))};
}

inline std::optional<ParticipantKeyword> participant_keyword(std::string_view lower) {
  if (lower == "participant") return ParticipantKeyword::Participant;
  if (lower == "actor") return ParticipantKeyword::Actor;
  if (lower == "boundary") return ParticipantKeyword::Boundary;
  if (lower == "control") return ParticipantKeyword::Control;
  if (lower == "entity") return ParticipantKeyword::Entity;
  if (lower == "database") return ParticipantKeyword::Database;
  if (lower == "collections") return ParticipantKeyword::Collections;
  if (lower == "queue") return ParticipantKeyword::Queue;
  return std::nullopt;
}

inline std::optional<GroupKeyword> group_keyword(std::string_view lower) {
  if (lower == "group") return GroupKeyword::Group;
  if (lower == "alt") return GroupKeyword::Alt;
  if (lower == "opt") return GroupKeyword::Opt;
  if (lower == "loop") return GroupKeyword::Loop;
  if (lower == "par") return GroupKeyword::Par;
  if (lower == "break") return GroupKeyword::Break;
  if (lower == "critical") return GroupKeyword::Critical;
  if (lower == "else") return GroupKeyword::Else;
  return std::nullopt;
}

inline bool is_meta_keyword(std::string_view lower) {
  return lower == "title" || lower == "autonumber" || lower == "skinparam" || lower == "hide" ||
         lower == "scale" || lower.starts_with("@start") || lower.starts_with("@end");
}

inline bool is_end_keyword(std::string_view lower) {
  return lower == "end" || lower == "endnote" || lower == "endhnote" || lower == "endrnote" ||
         lower == "endbox";
}

inline bool is_note_keyword(std::string_view lower) {
  return lower == "note" || lower == "hnote" || lower == "rnote";
}

/// Reads a quoted string or a bare run up to whitespace/stop char.
inline std::string_view take_name(std::string_view& s, std::string_view stops = "") {
  s = text::ltrim(s);
  if (s.empty()) return {};
  if (s.front() == '"') {
    std::size_t close = s.find('"', 1);
    if (close == std::string_view::npos) close = s.size() - 1;
    std::string_view name = s.substr(1, close - 1);
    s = s.substr(close + 1);
    return name;
  }
  std::size_t k = 0;
  while (k < s.size() && !text::is_space(s[k]) && stops.find(s[k]) == std::string_view::npos) ++k;
  std::string_view name = s.substr(0, k);
  s = s.substr(k);
  return name;
}

inline std::optional<ParticipantStatement> parse_participant(std::string_view trimmed) {
  LeadingToken tok = leading_token(trimmed);
  auto kw = participant_keyword(tok.lower);
  if (!kw) return std::nullopt;
  ParticipantStatement p;
  p.keyword = *kw;
  std::string_view rest = tok.rest;
  p.name = std::string(text::trim(take_name(rest)));
  if (p.name.empty()) return std::nullopt;
  while (true) {
    rest = text::ltrim(rest);
    if (rest.empty()) break;
    char first = rest.front();
    std::string_view word = take_name(rest);
    if (first != '"' && text::iequals(word, "as")) {
      std::string alias(text::trim(take_name(rest)));
      if (!alias.empty()) p.alias = std::move(alias);
    } else if (first == '#' && !p.color) {
      p.color = std::string(word);
    }
  }
  return p;
}

inline std::vector<std::string> split_anchors(std::string_view s) {
  std::vector<std::string> anchors;
  for (const std::string& part : text::split(s, ',')) {
    std::string_view piece = text::trim(part);
    // drop inline color tokens ("note over A #yellow")
    std::size_t hash = text::find_unquoted(piece, '#');
    if (hash != std::string_view::npos) piece = text::trim(piece.substr(0, hash));
    piece = text::trim(text::unquote(piece));
    if (!piece.empty()) anchors.emplace_back(piece);
  }
  return anchors;
}

struct NoteHeader {
  NotePosition position = NotePosition::Over;
  std::vector<std::string> anchors;
  bool attached = false;  // "note left : ..." without an explicit anchor
  std::optional<std::string> inline_body;
};

inline std::optional<NoteHeader> parse_note_header(std::string_view trimmed) {
  LeadingToken tok = leading_token(trimmed);
  if (!is_note_keyword(tok.lower)) return std::nullopt;
  LeadingToken pos = leading_token(tok.rest);
  NoteHeader h;
  std::string_view rest = pos.rest;
  if (pos.lower == "over") {
    h.position = NotePosition::Over;
  } else if (pos.lower == "left" || pos.lower == "right") {
    h.position = pos.lower == "left" ? NotePosition::LeftOf : NotePosition::RightOf;
    LeadingToken of = leading_token(rest);
    if (of.lower == "of") {
      rest = of.rest;
    } else {
      h.attached = true;
    }
  } else {
    return std::nullopt;
  }
  std::size_t colon = text::find_unquoted(rest, ':');
  std::string_view anchor_part = colon == std::string_view::npos ? rest : rest.substr(0, colon);
  if (colon != std::string_view::npos) h.inline_body = std::string(text::trim(rest.substr(colon + 1)));
  if (!h.attached) {
    h.anchors = split_anchors(anchor_part);
    if (h.anchors.empty()) return std::nullopt;
  }
  return h;
}

inline std::optional<std::string> non_empty(std::string_view s) {
  s = text::trim(s);
  if (s.empty()) return std::nullopt;
  return std::string(s);
}

inline GroupStatement parse_group(std::string_view trimmed) {
  LeadingToken tok = leading_token(trimmed);
  GroupStatement g;
  g.keyword = *group_keyword(tok.lower);
  std::string_view rest = tok.rest;
  // "alt#Gold #LightBlue label": drop leading color tokens
  while (!rest.empty() && rest.front() == '#') {
    std::size_t k = 0;
    while (k < rest.size() && !text::is_space(rest[k])) ++k;
    rest = text::ltrim(rest.substr(k));
  }
  g.label = non_empty(rest);
  return g;
}

inline BoxStatement parse_box(std::string_view trimmed) {
  LeadingToken tok = leading_token(trimmed);
  BoxStatement b;
  std::string_view rest = tok.rest;
  std::string label;
  while (true) {
    rest = text::ltrim(rest);
    if (rest.empty()) break;
    bool colored = rest.front() == '#';
    std::string_view word = take_name(rest);
    if (colored) {
      if (!b.color) b.color = std::string(word);
    } else {
      if (!label.empty()) label += ' ';
      label += word;
    }
  }
  b.label = non_empty(label);
  return b;
}

inline bool is_end_note_line(std::string_view trimmed) {
  LeadingToken tok = leading_token(trimmed);
  if (tok.lower == "endnote" || tok.lower == "endhnote" || tok.lower == "endrnote")
    return tok.rest.empty();
  if (tok.lower != "end") return false;
  LeadingToken second = leading_token(tok.rest);
  return is_note_keyword(second.lower) && second.rest.empty();
}

}  // namespace detail

/// Classifies one source line. Keyword detection is case-insensitive on the
/// leading token; a keyword immediately followed by an arrow token is read as
/// an arrow endpoint instead ("opt -> B").
inline StatementKind classify_line(std::string_view line) {
  std::string_view t = text::trim(line);
  if (t.empty() || t.front() == '\'') return StatementKind::Other;
  detail::LeadingToken tok = detail::leading_token(t);
  bool arrow_follows = !tok.rest.empty() && detail::match_arrow_at(tok.rest, 0).has_value();
  if (!tok.lower.empty() && !arrow_follows) {
    if (detail::is_meta_keyword(tok.lower)) return StatementKind::Meta;
    if (detail::is_end_keyword(tok.lower)) return StatementKind::StructuralEnd;
    if (detail::participant_keyword(tok.lower))
      return detail::parse_participant(t) ? StatementKind::ParticipantDecl : StatementKind::Other;
    if (detail::is_note_keyword(tok.lower))
      return detail::parse_note_header(t) ? StatementKind::NoteDecl : StatementKind::Other;
    if (tok.lower == "box") return StatementKind::BoxDecl;
    if (detail::group_keyword(tok.lower)) return StatementKind::GroupDecl;
  }
  if (detail::find_arrow(detail::arrow_head_part(t))) return StatementKind::ArrowLine;
  return StatementKind::Other;
}

inline ArrowStatement parse_arrow(std::string_view line) {
  std::string_view t = text::trim(line);
  std::string_view head = detail::arrow_head_part(t);
  auto tok = detail::find_arrow(head);
  if (!tok) throw Error(ErrorCode::MalformedArrow, "no arrow token in '" + std::string(t) + "'");
  std::string left(text::trim(text::unquote(text::trim(head.substr(0, tok->begin)))));
  std::string right(text::trim(text::unquote(text::trim(head.substr(tok->end)))));
  if (left.empty() || right.empty())
    throw Error(ErrorCode::MalformedArrow, "arrow with empty endpoint: '" + std::string(t) + "'");

  ArrowStatement a;
  a.raw = std::string(t);
  a.color = tok->color;
  a.line_style = tok->dashes >= 2 ? LineStyle::Dashed : LineStyle::Solid;
  if (tok->left_head && tok->right_head) {
    a.written_direction = WrittenDirection::Bidirectional;
  } else if (tok->left_head) {
    a.written_direction = WrittenDirection::RightToLeft;
  } else {
    a.written_direction = WrittenDirection::LeftToRight;
  }
  if (a.written_direction == WrittenDirection::RightToLeft) {
    a.source_node = std::move(right);
    a.target_node = std::move(left);
  } else {
    a.source_node = std::move(left);
    a.target_node = std::move(right);
  }
  if (head.size() < t.size()) a.message = detail::non_empty(t.substr(head.size() + 1));
  return a;
}

/// Canonical left-to-right rendering; parsing it yields the same endpoints,
/// style, color and message.
inline std::string to_canonical_string(const ArrowStatement& a) {
  auto quote = [](const std::string& name) {
    bool plain = !name.empty();
    for (char c : name) {
      if (!(detail::is_word_char(c) || c == '.') || c == '@') plain = false;
    }
    return plain ? name : "\"" + name + "\"";
  };
  std::string out = quote(a.source_node) + " ";
  if (a.written_direction == WrittenDirection::Bidirectional) out += "<";
  out += "-";
  if (a.color) out += "[" + *a.color + "]";
  if (a.line_style == LineStyle::Dashed) out += "-";
  out += "> " + quote(a.target_node);
  if (a.message) out += " : " + *a.message;
  return out;
}

/// Splits `source` into lines, classifies each and folds multi-line notes.
/// Only relevant kinds become statements; every line stays in `lines`.
inline PumlScript parse_statements(std::string_view source, std::string source_name = {}) {
  PumlScript script;
  script.source_name = std::move(source_name);
  script.lines = text::split_lines(source);
  script.line_owner_.assign(script.lines.size(), std::nullopt);

  struct OpenBlock {
    StatementKind kind;
    std::size_t line;
  };
  std::vector<OpenBlock> open;
  std::optional<std::size_t> last_arrow;
  auto where = [&](std::size_t line_no) {
    return (script.source_name.empty() ? std::string("line ") : script.source_name + ":") +
           std::to_string(line_no);
  };
  auto warn = [&](ErrorCode code, std::size_t line_no, std::string msg) {
    script.warnings.push_back({code, line_no, std::move(msg)});
  };

  const std::size_t n = script.lines.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t line_no = i + 1;
    std::string_view t = text::trim(script.lines[i]);
    StatementKind kind = classify_line(t);
    if (!is_relevant(kind)) {
      if (kind == StatementKind::StructuralEnd) {
        detail::LeadingToken tok = detail::leading_token(t);
        bool closes_box = tok.lower == "endbox" || detail::leading_token(tok.rest).lower == "box";
        bool closes_note = tok.lower == "endnote" || tok.lower == "endhnote" ||
                           tok.lower == "endrnote" || detail::is_note_keyword(detail::leading_token(tok.rest).lower);
        StatementKind want = closes_box ? StatementKind::BoxDecl : StatementKind::GroupDecl;
        auto it = std::find_if(open.rbegin(), open.rend(), [&](const OpenBlock& b) { return b.kind == want; });
        if (closes_note) {
          warn(ErrorCode::UnterminatedBlock, line_no, "'" + std::string(t) + "' without an open note");
        } else if (it == open.rend()) {
          warn(ErrorCode::UnterminatedBlock, line_no, "'" + std::string(t) + "' without an open block");
        } else {
          open.erase(std::next(it).base());
        }
      }
      continue;
    }

    PumlStatement stmt;
    stmt.kind = kind;
    stmt.line_no = line_no;
    stmt.last_line_no = line_no;
    stmt.text = std::string(t);
    switch (kind) {
      case StatementKind::ArrowLine:
        try {
          stmt.payload = parse_arrow(t);
        } catch (const Error& e) {
          throw Error(ErrorCode::MalformedArrow, where(line_no) + ": " + e.what(), line_no);
        }
        break;
      case StatementKind::ParticipantDecl:
        stmt.payload = *detail::parse_participant(t);
        break;
      case StatementKind::BoxDecl:
        stmt.payload = detail::parse_box(t);
        open.push_back({StatementKind::BoxDecl, line_no});
        break;
      case StatementKind::GroupDecl: {
        GroupStatement g = detail::parse_group(t);
        if (g.keyword != GroupKeyword::Else) {
          open.push_back({StatementKind::GroupDecl, line_no});
        } else if (std::none_of(open.begin(), open.end(),
                                [](const OpenBlock& b) { return b.kind == StatementKind::GroupDecl; })) {
          warn(ErrorCode::UnterminatedBlock, line_no, "'else' outside of a group");
        }
        stmt.payload = std::move(g);
        break;
      }
      case StatementKind::NoteDecl: {
        detail::NoteHeader h = *detail::parse_note_header(t);
        NoteStatement note;
        note.position = h.position;
        note.anchors = std::move(h.anchors);
        if (h.attached) {
          if (last_arrow) {
            const ArrowStatement& prev = script.statements[*last_arrow].arrow();
            note.anchors.push_back(prev.source_node);
            if (!prev.is_self_message()) note.anchors.push_back(prev.target_node);
          } else {
            warn(ErrorCode::UnterminatedBlock, line_no, "attached note with no preceding arrow");
          }
        }
        std::size_t last = i;
        if (h.inline_body) {
          note.body = *h.inline_body;
        } else {
          std::vector<std::string> body;
          std::size_t j = i + 1;
          while (j < n && !detail::is_end_note_line(text::trim(script.lines[j]))) {
            body.emplace_back(text::trim(script.lines[j]));
            ++j;
          }
          if (j >= n) {
            warn(ErrorCode::UnterminatedBlock, line_no, "note opened at " + where(line_no) + " is never closed");
            last = n - 1;
          } else {
            last = j;
          }
          note.body = text::join(body, "\n");
          for (std::size_t k = i + 1; k <= last; ++k) {
            stmt.text += '\n';
            stmt.text += text::trim(script.lines[k]);
          }
        }
        note.first_line = line_no;
        note.last_line = last + 1;
        stmt.last_line_no = last + 1;
        stmt.payload = std::move(note);
        i = last;
        break;
      }
      default:
        break;
    }
    std::size_t index = script.statements.size();
    for (std::size_t k = stmt.line_no; k <= stmt.last_line_no; ++k) script.line_owner_[k - 1] = index;
    script.statements.push_back(std::move(stmt));
    if (kind == StatementKind::ArrowLine) last_arrow = index;
  }
  for (const OpenBlock& b : open) {
    warn(ErrorCode::UnterminatedBlock, b.line,
         std::string(b.kind == StatementKind::BoxDecl ? "box" : "group") + " opened at " + where(b.line) +
             " is never closed");
  }
  return script;
}

/// How many node occurrences a self-message ("A -> A") contributes.
enum class SelfMessageNodes { Two, One };

inline std::size_t node_occurrences(const ArrowStatement& a, SelfMessageNodes self = SelfMessageNodes::Two) {
  return a.is_self_message() && self == SelfMessageNodes::One ? 1 : 2;
}

inline GroundTruthCounts count_components(const PumlScript& script,
                                          SelfMessageNodes self = SelfMessageNodes::Two) {
  GroundTruthCounts c;
  for (const PumlStatement& s : script.statements) {
    switch (s.kind) {
      case StatementKind::ArrowLine: {
        const ArrowStatement& a = s.arrow();
        ++c.arrow_count;
        c.node_count += node_occurrences(a, self);
        if (a.message) ++c.message_count;
        break;
      }
      case StatementKind::ParticipantDecl: ++c.participant_count; break;
      case StatementKind::NoteDecl: ++c.note_count; break;
      case StatementKind::BoxDecl: ++c.box_count; break;
      case StatementKind::GroupDecl: ++c.group_count; break;
      default: break;
    }
  }
  c.relevant_line_count = script.statements.size();
  return c;
}

}  // namespace pumldiff
