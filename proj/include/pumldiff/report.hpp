#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pumldiff/error_classifier.hpp"
#include "pumldiff/errors.hpp"
#include "pumldiff/metrics.hpp"
#include "pumldiff/puml_model.hpp"

namespace pumldiff {

enum class ReportFormat { Json, Csv, Table, Tsv };

inline const char* to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::Json: return "json";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Table: return "table";
    case ReportFormat::Tsv: return "tsv";
  }
  return "";
}

inline ReportFormat parse_format(std::string_view s) {
  for (ReportFormat f : {ReportFormat::Json, ReportFormat::Csv, ReportFormat::Table, ReportFormat::Tsv})
    if (s == to_string(f)) return f;
  throw Error(ErrorCode::InvalidOption, "unknown format '" + std::string(s) + "' (json, csv, table, tsv)");
}

struct TableColumn {
  ErrorCategory category;
  const char* label;
};

/// Column order of the summary table.
inline constexpr std::array<TableColumn, 8> kTableColumns = {{
    {ErrorCategory::Node, "Node"},
    {ErrorCategory::EdgeDirection, "Direction change"},
    {ErrorCategory::EdgeType, "Direction type"},
    {ErrorCategory::Message, "Message"},
    {ErrorCategory::Box, "Box"},
    {ErrorCategory::Group, "Group"},
    {ErrorCategory::Note, "Note"},
    {ErrorCategory::Participant, "Participants"},
}};

/// Categories plotted against file length.
inline constexpr std::array<std::pair<ErrorCategory, const char*>, 3> kPlotCategories = {{
    {ErrorCategory::Node, "node"},
    {ErrorCategory::Message, "message"},
    {ErrorCategory::EdgeDirection, "direction"},
}};

namespace detail {

inline std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

inline std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline nlohmann::json percent_json(std::size_t count, std::size_t total) {
  if (total == 0) return nullptr;
  return static_cast<double>(percent_hundredths(count, total)) / 100.0;
}

inline nlohmann::json optional_json(const std::optional<std::size_t>& v) {
  if (!v) return nullptr;
  return *v;
}

inline nlohmann::json density_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

inline nlohmann::json cell_json(const CategoryCell& c) {
  return {
      {"gt_total", c.gt_total},
      {"insertions", c.insertions},
      {"deletions", c.deletions},
      {"substitutions", c.substitutions},
      {"insertion_percent", percent_json(c.insertions, c.gt_total)},
      {"deletion_percent", percent_json(c.deletions, c.gt_total)},
      {"substitution_percent", percent_json(c.substitutions, c.gt_total)},
  };
}

inline nlohmann::json table_json(const CategoryTable& t) {
  nlohmann::json out = nlohmann::json::object();
  for (ErrorCategory c : kAllCategories) out[to_string(c)] = cell_json(t[c]);
  return out;
}

inline CategoryTable table_from_json(const nlohmann::json& j) {
  CategoryTable t;
  for (ErrorCategory c : kAllCategories) {
    const auto& cell = j.at(to_string(c));
    t[c].gt_total = cell.at("gt_total").get<std::size_t>();
    t[c].insertions = cell.at("insertions").get<std::size_t>();
    t[c].deletions = cell.at("deletions").get<std::size_t>();
    t[c].substitutions = cell.at("substitutions").get<std::size_t>();
  }
  return t;
}

inline std::optional<std::size_t> optional_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::size_t>();
}

// RFC 4180 field quoting; TSV replaces separators instead.
inline std::string csv_field(std::string_view s, char sep) {
  if (sep == '\t') {
    std::string out(s);
    for (char& c : out)
      if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    return out;
  }
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string render_table(const CategoryTable& cells) {
  constexpr std::size_t kLabelWidth = 20;
  std::vector<std::size_t> widths;
  for (const TableColumn& col : kTableColumns) widths.push_back(std::max<std::size_t>(std::string_view(col.label).size(), 8) + 2);

  std::string out = pad_right("", kLabelWidth);
  for (std::size_t i = 0; i < kTableColumns.size(); ++i) out += pad_left(kTableColumns[i].label, widths[i]);
  out += '\n';

  out += pad_right("Ground truth count", kLabelWidth);
  for (std::size_t i = 0; i < kTableColumns.size(); ++i)
    out += pad_left(std::to_string(cells[kTableColumns[i].category].gt_total), widths[i]);
  out += '\n';

  const std::array<std::pair<ErrorKind, const char*>, 3> rows = {{
      {ErrorKind::Insertion, "Insertion (%)"},
      {ErrorKind::Deletion, "Deletion (%)"},
      {ErrorKind::Substitution, "Substitution (%)"},
  }};
  for (auto [kind, label] : rows) {
    out += pad_right(label, kLabelWidth);
    for (std::size_t i = 0; i < kTableColumns.size(); ++i) {
      const CategoryCell& cell = cells[kTableColumns[i].category];
      out += pad_left(format_percent(cell.count(kind), cell.gt_total), widths[i]);
    }
    out += '\n';
  }
  return out;
}

inline std::string render_delimited(const DatasetReport& report, char sep) {
  std::string out;
  auto row = [&](std::string_view scope, std::string_view file, ErrorCategory c, ErrorKind k, const CategoryCell& cell) {
    out += std::string(scope) + sep + csv_field(file, sep) + sep + to_string(c) + sep + to_string(k) + sep +
           std::to_string(cell.count(k)) + sep + std::to_string(cell.gt_total) + sep +
           format_percent(cell.count(k), cell.gt_total) + "\n";
  };
  for (const char* h : {"scope", "file", "category", "kind", "count", "gt_total"}) out += std::string(h) + sep;
  out += "percent\n";
  for (const FileMetrics& f : report.per_file)
    for (ErrorCategory c : kAllCategories)
      for (ErrorKind k : kAllKinds) row("file", f.file, c, k, f.cells[c]);
  for (ErrorCategory c : kAllCategories)
    for (ErrorKind k : kAllKinds) row("aggregate", "", c, k, report.aggregate[c]);
  return out;
}

}  // namespace detail

inline nlohmann::json to_json(const DatasetReport& report) {
  using nlohmann::json;
  json files = json::array();
  for (const FileMetrics& f : report.per_file) {
    json errors = json::array();
    for (const ErrorRecord& e : f.errors) {
      errors.push_back({
          {"category", to_string(e.category)},
          {"kind", to_string(e.kind)},
          {"gt_line", detail::optional_json(e.gt_line_no)},
          {"cand_line", detail::optional_json(e.cand_line_no)},
          {"detail", e.detail},
          {"edit_distance", detail::optional_json(e.edit_distance)},
      });
    }
    files.push_back({
        {"file", f.file},
        {"gt_line_count", f.gt_line_count},
        {"element_count", f.element_count},
        {"error_count", f.error_count},
        {"error_density", detail::density_json(f.error_density())},
        {"cells", detail::table_json(f.cells)},
        {"errors", std::move(errors)},
        {"warnings", f.warnings},
    });
  }

  json bins = json::array();
  for (const LineBin& b : report.bins) {
    json cats = json::object();
    for (ErrorCategory c : kAllCategories) {
      const CategoryCell& cell = b.cells[c];
      cats[to_string(c)] = {
          {"errors", cell.accumulated()},
          {"gt_total", cell.gt_total},
          {"accumulated_error_percent", detail::percent_json(cell.accumulated(), cell.gt_total)},
          {"insertions", cell.insertions},
          {"deletions", cell.deletions},
          {"substitutions", cell.substitutions},
      };
    }
    bins.push_back({
        {"label", b.label},
        {"lower", b.lower},
        {"upper", detail::optional_json(b.upper)},
        {"file_count", b.file_count},
        {"categories", std::move(cats)},
    });
  }

  return {
      {"aggregate", detail::table_json(report.aggregate)},
      {"bin_edges", report.bin_edges},
      {"bins", std::move(bins)},
      {"coverage", {{"evaluated", report.coverage.evaluated}, {"missing_candidates", report.coverage.missing_candidates}}},
      {"files", std::move(files)},
      {"totals",
       {{"error_count", report.error_count()},
        {"element_count", report.element_count()},
        {"error_density", detail::density_json(report.error_density())}}},
  };
}

/// Inverse of to_json. Derived fields (percentages, densities) are recomputed
/// rather than read back.
inline DatasetReport report_from_json(const nlohmann::json& j) {
  DatasetReport r;
  try {
    r.aggregate = detail::table_from_json(j.at("aggregate"));
    r.bin_edges = j.at("bin_edges").get<std::vector<std::size_t>>();
    for (const auto& b : j.at("bins")) {
      LineBin bin;
      bin.label = b.at("label").get<std::string>();
      bin.lower = b.at("lower").get<std::size_t>();
      bin.upper = detail::optional_from_json(b.at("upper"));
      bin.file_count = b.at("file_count").get<std::size_t>();
      for (ErrorCategory c : kAllCategories) {
        const auto& cell = b.at("categories").at(to_string(c));
        bin.cells[c].gt_total = cell.at("gt_total").get<std::size_t>();
        bin.cells[c].insertions = cell.at("insertions").get<std::size_t>();
        bin.cells[c].deletions = cell.at("deletions").get<std::size_t>();
        bin.cells[c].substitutions = cell.at("substitutions").get<std::size_t>();
      }
      r.bins.push_back(std::move(bin));
    }
    r.coverage.evaluated = j.at("coverage").at("evaluated").get<std::size_t>();
    r.coverage.missing_candidates = j.at("coverage").at("missing_candidates").get<std::vector<std::string>>();
    for (const auto& f : j.at("files")) {
      FileMetrics m;
      m.file = f.at("file").get<std::string>();
      m.gt_line_count = f.at("gt_line_count").get<std::size_t>();
      m.element_count = f.at("element_count").get<std::size_t>();
      m.error_count = f.at("error_count").get<std::size_t>();
      m.cells = detail::table_from_json(f.at("cells"));
      m.warnings = f.at("warnings").get<std::vector<std::string>>();
      for (const auto& e : f.at("errors")) {
        ErrorRecord rec;
        auto cat = category_from_string(e.at("category").get<std::string>());
        auto kind = kind_from_string(e.at("kind").get<std::string>());
        if (!cat || !kind) throw Error(ErrorCode::InvalidOption, "unknown error category or kind in report");
        rec.category = *cat;
        rec.kind = *kind;
        rec.file = m.file;
        rec.gt_line_no = detail::optional_from_json(e.at("gt_line"));
        rec.cand_line_no = detail::optional_from_json(e.at("cand_line"));
        rec.detail = e.at("detail").get<std::string>();
        rec.edit_distance = detail::optional_from_json(e.at("edit_distance"));
        m.errors.push_back(std::move(rec));
      }
      r.per_file.push_back(std::move(m));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidOption, std::string("malformed report JSON: ") + e.what());
  }
  return r;
}

inline std::string render(const DatasetReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return to_json(report).dump(2) + "\n";
    case ReportFormat::Csv: return detail::render_delimited(report, ',');
    case ReportFormat::Tsv: return detail::render_delimited(report, '\t');
    case ReportFormat::Table: return detail::render_table(report.aggregate);
  }
  return {};
}

/// Plot-ready accumulated error percentages, one row per bin and plotted
/// category.
inline std::string emit_bin_plot_data(const DatasetReport& report) {
  std::string out = "bin_label,category,accumulated_error_percent\n";
  for (const LineBin& b : report.bins) {
    for (auto [cat, name] : kPlotCategories) {
      out += detail::csv_field(b.label, ',') + "," + name + "," + b.percent(cat) + "\n";
    }
  }
  return out;
}

inline std::string render_counts(const GroundTruthCounts& c, std::string_view file, ReportFormat format) {
  const std::array<std::pair<const char*, std::size_t>, 9> fields = {{
      {"node", c.node_count},
      {"arrow", c.arrow_count},
      {"message", c.message_count},
      {"note", c.note_count},
      {"group", c.group_count},
      {"box", c.box_count},
      {"participant", c.participant_count},
      {"relevant_lines", c.relevant_line_count},
      {"elements", c.element_total()},
  }};
  switch (format) {
    case ReportFormat::Json: {
      nlohmann::json j = nlohmann::json::object();
      j["file"] = std::string(file);
      for (auto [k, v] : fields) j[k] = v;
      return j.dump(2) + "\n";
    }
    case ReportFormat::Csv:
    case ReportFormat::Tsv: {
      char sep = format == ReportFormat::Csv ? ',' : '\t';
      std::string out = std::string("file") + sep + "component" + sep + "count\n";
      for (auto [k, v] : fields) out += detail::csv_field(file, sep) + sep + k + sep + std::to_string(v) + "\n";
      return out;
    }
    case ReportFormat::Table: {
      std::string out = std::string(file) + "\n";
      for (auto [k, v] : fields) out += "  " + detail::pad_right(k, 16) + std::to_string(v) + "\n";
      return out;
    }
  }
  return {};
}

}  // namespace pumldiff
