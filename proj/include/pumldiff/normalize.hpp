#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pumldiff/errors.hpp"
#include "pumldiff/puml_model.hpp"
#include "pumldiff/text.hpp"

namespace pumldiff {

// Syntax repairs applied to model output before comparison. They are never
// counted as errors.
enum class NormalizationRule { StripStrayChars, DottedToDashed, ActorToParticipant };

inline constexpr std::array<NormalizationRule, 3> kAllNormalizationRules = {
    NormalizationRule::StripStrayChars, NormalizationRule::DottedToDashed,
    NormalizationRule::ActorToParticipant};

inline const char* rule_key(NormalizationRule rule) {
  switch (rule) {
    case NormalizationRule::StripStrayChars: return "strip-stray-chars";
    case NormalizationRule::DottedToDashed: return "dotted-to-dashed";
    case NormalizationRule::ActorToParticipant: return "actor-to-participant";
  }
  return "";
}

class RuleSet {
 public:
  RuleSet() = default;

  static RuleSet all() {
    RuleSet r;
    for (auto rule : kAllNormalizationRules) r.enable(rule);
    return r;
  }
  static RuleSet none() { return {}; }

  /// Parses a comma-separated list of rule keys. Empty input selects no rule.
  static RuleSet parse(std::string_view keys) {
    RuleSet r;
    if (text::trim(keys).empty()) return r;
    for (const std::string& part : text::split(keys, ',')) {
      std::string_view key = text::trim(part);
      bool found = false;
      for (auto rule : kAllNormalizationRules) {
        if (key == rule_key(rule)) {
          r.enable(rule);
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::InvalidOption, "unknown normalization rule '" + std::string(key) + "'");
    }
    return r;
  }

  void enable(NormalizationRule rule) { bits_ |= bit(rule); }
  bool has(NormalizationRule rule) const { return (bits_ & bit(rule)) != 0; }
  bool empty() const { return bits_ == 0; }

  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    for (auto rule : kAllNormalizationRules) {
      if (has(rule)) out.emplace_back(rule_key(rule));
    }
    return out;
  }

  bool operator==(const RuleSet&) const = default;

 private:
  static unsigned bit(NormalizationRule rule) { return 1u << static_cast<unsigned>(rule); }
  unsigned bits_ = 0;
};

struct NormalizationChange {
  std::size_t line_no;
  NormalizationRule rule;
  std::string before;
  std::string after;
};

namespace detail {

inline std::size_t indent_length(std::string_view line) {
  std::size_t k = 0;
  while (k < line.size() && (line[k] == ' ' || line[k] == '\t')) ++k;
  return k;
}

// A leading run of '#'/'-' is stray unless it is the start of an arrow token
// (e.g. "-> B", "-[#red]> B", "--x B").
inline bool strip_stray_chars(std::string& line) {
  std::size_t indent = indent_length(line);
  std::string_view body = std::string_view(line).substr(indent);
  std::size_t k = 0;
  while (k < body.size() && (body[k] == '#' || body[k] == '-')) ++k;
  if (k == 0) return false;
  std::string_view rest = body.substr(k);
  bool strip = rest.empty() || text::is_space(rest.front());
  if (!strip && (is_word_char(rest.front()) || rest.front() == '"')) {
    bool lost_head = rest.front() == 'x' && (rest.size() == 1 || text::is_space(rest[1]));
    strip = !lost_head;
  }
  if (!strip) return false;
  line = line.substr(0, indent) + std::string(text::ltrim(rest));
  return true;
}

inline bool dotted_to_dashed(std::string& line) {
  std::size_t colon = text::find_unquoted(line, ':');
  std::size_t limit = colon == std::string::npos ? line.size() : colon;
  bool changed = false;
  bool quoted = false;
  for (std::size_t i = 0; i < limit; ++i) {
    if (line[i] == '"') {
      quoted = !quoted;
    } else if (!quoted && i + 3 <= limit && line.compare(i, 3, "..>") == 0) {
      line.replace(i, 3, "-->");
      changed = true;
      i += 2;
    }
  }
  return changed;
}

inline bool actor_to_participant(std::string& line) {
  std::size_t indent = indent_length(line);
  std::string_view body = std::string_view(line).substr(indent);
  LeadingToken tok = leading_token(body);
  if (tok.lower != "actor" || tok.rest.empty()) return false;
  if (body.size() <= 5 || !text::is_space(body[5])) return false;
  line = line.substr(0, indent) + "participant" + std::string(body.substr(5));
  return true;
}

}  // namespace detail

/// Applies the enabled rules to one line until it stops changing.
inline std::string normalize_line(std::string_view line, const RuleSet& rules,
                                  std::vector<NormalizationChange>* log = nullptr, std::size_t line_no = 0) {
  std::string current(line);
  bool changed = true;
  while (changed) {
    changed = false;
    auto apply = [&](NormalizationRule rule, bool (*fn)(std::string&)) {
      if (!rules.has(rule)) return;
      std::string before = current;
      if (fn(current)) {
        changed = true;
        if (log) log->push_back({line_no, rule, std::move(before), current});
      }
    };
    apply(NormalizationRule::StripStrayChars, detail::strip_stray_chars);
    apply(NormalizationRule::DottedToDashed, detail::dotted_to_dashed);
    apply(NormalizationRule::ActorToParticipant, detail::actor_to_participant);
  }
  return current;
}

/// Line-preserving: the output has exactly as many lines as the input, and a
/// trailing newline is kept. Idempotent.
inline std::string normalize_script(std::string_view script, const RuleSet& rules = RuleSet::all(),
                                    std::vector<NormalizationChange>* log = nullptr) {
  std::vector<std::string> lines = text::split_lines(script);
  for (std::size_t i = 0; i < lines.size(); ++i) lines[i] = normalize_line(lines[i], rules, log, i + 1);
  std::string out = text::join(lines, "\n");
  if (!script.empty() && script.back() == '\n') out += '\n';
  return out;
}

}  // namespace pumldiff
