// pumldiff: compare PlantUML sequence diagrams against ground truth.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pumldiff/pumldiff.hpp"

namespace fs = std::filesystem;
using namespace pumldiff;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitThreshold = 3;

struct Settings {
  std::string format = "table";
  std::string out_dir;
  double tau = kDefaultUnrelatednessThreshold;
  std::string bins = "20,30,40,50,100";
  bool no_normalize = false;
  std::optional<std::string> rules;
  std::size_t jobs = 1;
  std::optional<double> fail_threshold;
  int self_message_nodes = 2;
};

std::vector<std::size_t> parse_bins(const std::string& s) {
  std::vector<std::size_t> edges;
  for (const std::string& part : text::split(s, ',')) {
    std::string_view t = text::trim(part);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
      throw Error(ErrorCode::InvalidBins, "bad bin edge '" + std::string(t) + "'");
    edges.push_back(v);
  }
  validate_bin_edges(edges);
  return edges;
}

PipelineOptions to_options(const Settings& s) {
  PipelineOptions o;
  o.alignment.tau = s.tau;
  o.normalize = !s.no_normalize;
  if (s.rules) o.rules = RuleSet::parse(*s.rules);
  o.bin_edges = parse_bins(s.bins);
  o.self_message_nodes = s.self_message_nodes == 1 ? SelfMessageNodes::One : SelfMessageNodes::Two;
  o.jobs = s.jobs;
  return o;
}

void print_warnings(const DatasetReport& report) {
  for (const std::string& m : report.coverage.missing_candidates)
    std::cerr << "warning: no candidate for " << m << ", skipped\n";
  for (const FileMetrics& f : report.per_file)
    for (const std::string& w : f.warnings) std::cerr << "warning: " << f.file << ": " << w << "\n";
}

void write_outputs(const DatasetReport& report, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());
  write_file(dir / "report.json", render(report, ReportFormat::Json));
  write_file(dir / "aggregate.txt", render(report, ReportFormat::Table));
  write_file(dir / "per_file.csv", render(report, ReportFormat::Csv));
  write_file(dir / "bins.csv", emit_bin_plot_data(report));
}

// Rates compared exactly as count / gt_total > threshold.
bool exceeds(const DatasetReport& report, double threshold) {
  for (ErrorCategory c : kAllCategories) {
    const CategoryCell& cell = report.aggregate[c];
    for (ErrorKind k : kAllKinds)
      if (cell.gt_total > 0 && static_cast<double>(cell.count(k)) > threshold * static_cast<double>(cell.gt_total))
        return true;
  }
  return false;
}

int finish(const DatasetReport& report, const Settings& s) {
  print_warnings(report);
  std::cout << render(report, parse_format(s.format));
  if (!s.out_dir.empty()) write_outputs(report, s.out_dir);
  if (s.fail_threshold && exceeds(report, *s.fail_threshold)) {
    std::cerr << "pumldiff: an aggregate rate exceeds the fail threshold " << *s.fail_threshold << "\n";
    return kExitThreshold;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error metrics for PlantUML sequence diagrams against ground truth"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file mirroring the long flags; flags override it");

  Settings s;
  app.add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table", "tsv"}))
      ->capture_default_str();
  app.add_option("--out", s.out_dir, "Write report.json, aggregate.txt, per_file.csv and bins.csv here");
  app.add_option("--tau", s.tau, "Unrelatedness threshold on normalized distance")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--bins", s.bins, "Line-count bin edges")->capture_default_str();
  app.add_flag("--no-normalize", s.no_normalize, "Compare candidates verbatim");
  app.add_option("--rules", s.rules, "Normalization rules: strip-stray-chars,dotted-to-dashed,actor-to-participant");
  app.add_option("--jobs,-j", s.jobs, "Worker threads (0 = hardware concurrency)")->capture_default_str();
  app.add_option("--fail-threshold", s.fail_threshold, "Exit 3 when any aggregate rate exceeds this fraction")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--self-message-nodes", s.self_message_nodes, "Node occurrences counted for A -> A")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();

  std::string gt_path, cand_path, label, manifest, patch_path;
  std::vector<std::string> count_files;
  std::string normalize_file;

  auto* compare = app.add_subcommand("compare", "Compare one candidate with its ground truth");
  compare->add_option("ground_truth", gt_path)->required()->check(CLI::ExistingFile);
  compare->add_option("candidate", cand_path)->required()->check(CLI::ExistingFile);
  compare->add_option("--label", label, "File name used in the report");

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate candidate files paired by relative path, or a manifest");
  evaluate->add_option("gt_dir", gt_path)->check(CLI::ExistingDirectory);
  evaluate->add_option("cand_dir", cand_path)->check(CLI::ExistingDirectory);
  evaluate->add_option("--manifest", manifest, "CSV with header ground_truth,candidate,label")
      ->check(CLI::ExistingFile);

  auto* from_patch = app.add_subcommand("from-patch", "Evaluate a unified diff against ground-truth files");
  from_patch->add_option("patch", patch_path)->required()->check(CLI::ExistingFile);
  from_patch->add_option("gt_dir", gt_path)->required()->check(CLI::ExistingDirectory);

  auto* count = app.add_subcommand("count", "Count diagram components");
  count->add_option("files", count_files)->required()->check(CLI::ExistingFile);

  auto* normalize = app.add_subcommand("normalize", "Print a script with the normalization rules applied");
  normalize->add_option("file", normalize_file)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compare) {
      PipelineOptions opts = to_options(s);
      std::optional<std::string> name;
      if (!label.empty()) name = label;
      return finish(compare_files(gt_path, cand_path, opts, name), s);
    }
    if (*evaluate) {
      bool dirs = !gt_path.empty() && !cand_path.empty();
      if (dirs == !manifest.empty()) {
        std::cerr << "pumldiff evaluate: give either GT_DIR CAND_DIR or --manifest FILE\n";
        return kExitUsage;
      }
      PipelineOptions opts = to_options(s);
      return finish(dirs ? evaluate_directories(gt_path, cand_path, opts) : evaluate_manifest(manifest, opts), s);
    }
    if (*from_patch) {
      PipelineOptions opts = to_options(s);
      return finish(evaluate_patch(read_file(patch_path), gt_path, opts), s);
    }
    if (*count) {
      ReportFormat fmt = parse_format(s.format);
      for (const std::string& f : count_files) {
        PumlScript script = parse_statements(read_file(f), f);
        for (const ParseWarning& w : script.warnings) std::cerr << "warning: " << f << ":" << w.line << ": " << w.message << "\n";
        std::cout << render_counts(count_components(script, to_options(s).self_message_nodes), f, fmt);
      }
      return kExitOk;
    }
    if (*normalize) {
      PipelineOptions opts = to_options(s);
      std::vector<NormalizationChange> log;
      std::cout << normalize_script(read_file(normalize_file), opts.rules, &log);
      for (const NormalizationChange& c : log)
        std::cerr << normalize_file << ":" << c.line_no << ": " << rule_key(c.rule) << ": '" << c.before << "' -> '"
                  << c.after << "'\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "pumldiff: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidOption || e.code() == ErrorCode::InvalidBins ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "pumldiff: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
