// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "pumldiff/pumldiff.hpp"
#include "synthetic.hpp"

using namespace pumldiff;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

synth::Counts swapped(const synth::Counts& c) {
  synth::Counts out;
  for (auto [key, n] : c) {
    ErrorKind k = key.second == ErrorKind::Insertion ? ErrorKind::Deletion
                  : key.second == ErrorKind::Deletion ? ErrorKind::Insertion
                                                      : ErrorKind::Substitution;
    out[{key.first, k}] = n;
  }
  return out;
}

// Ground truths in the shape the mutation harness and identity suite use.
synth::Script corpus_script(synth::Generator& gen, int i) {
  synth::GenOptions o;
  o.min_arrows = 4 + static_cast<std::size_t>(i % 5);
  return gen.script(o);
}

Outcome identity_suite() {
  synth::Generator gen(1001);
  auto dir = synth::temp_dir("acc_identity");
  std::set<StatementKind> kinds;
  std::size_t files = 0, errors = 0, nonzero_rates = 0;
  auto t0 = Clock::now();
  for (int i = 0; i < 40; ++i) {
    std::string text = synth::render(corpus_script(gen, i));
    for (const std::string& line : text::split_lines(text)) kinds.insert(classify_line(line));
    fs::path p = dir / ("s" + std::to_string(i) + ".puml");
    write_file(p, text);
    DatasetReport r = compare_files(p, p);
    ++files;
    errors += r.per_file[0].errors.size();
    for (ErrorCategory c : kAllCategories)
      for (ErrorKind k : kAllKinds)
        if (auto rate = r.aggregate[c].rate(k); rate && *rate != 0.0) ++nonzero_rates;
  }
  double secs = seconds_since(t0);
  fs::remove_all(dir);
  Outcome o;
  o.pass = errors == 0 && nonzero_rates == 0 && kinds.size() == 8 && secs < 1.0;
  o.detail = std::to_string(files) + " scripts, " + std::to_string(kinds.size()) + "/8 statement kinds, " +
             std::to_string(errors) + " error records, " + std::to_string(secs).substr(0, 5) + " s";
  return o;
}

Outcome mutation_oracle() {
  synth::Generator gen(2002);
  synth::Mutator mutator(gen);
  std::size_t trials = 0, mismatches = 0, edits = 0;
  std::map<synth::Mutation, std::size_t> used;
  std::string first_failure;
  for (int t = 0; t < 300; ++t) {
    synth::Script gt = corpus_script(gen, t);
    auto m = mutator.mutate(gt, gen.uniform(1, 6));
    FileMetrics f = evaluate_pair(synth::render(gt), synth::render(m.candidate), "trial" + std::to_string(t));
    ++trials;
    edits += m.applied.size();
    for (auto x : m.applied) ++used[x];
    if (synth::counts_of(f.errors) != m.expected) {
      ++mismatches;
      if (first_failure.empty()) first_failure = " (first mismatch: trial " + std::to_string(t) + ")";
    }
  }
  Outcome o;
  o.pass = mismatches == 0 && trials >= 200 && used.size() == 15;
  o.detail = std::to_string(trials) + " trials, " + std::to_string(edits) + " injected edits over " +
             std::to_string(used.size()) + " edit types, " + std::to_string(mismatches) + " mismatches" + first_failure;
  return o;
}

Outcome assignment_optimality() {
  synth::Generator gen(3003);
  std::size_t trials = 0, wrong = 0, rectangular = 0;
  for (int t = 0; t < 2000; ++t) {
    std::size_t r = gen.uniform(1, 6), c = gen.uniform(1, 6);
    CostMatrix m(r, c);
    std::size_t hi = gen.chance(0.3) ? 3 : 1000;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<std::int64_t>(gen.uniform(0, hi));
    ++trials;
    if (r != c) ++rectangular;
    Assignment a = linear_sum_assignment(m);
    if (a.total_cost != synth::brute_force_assignment(m) || a.pairs.size() != std::min(r, c)) ++wrong;
  }
  Outcome o;
  o.pass = wrong == 0 && trials >= 1000;
  o.detail = std::to_string(trials) + " matrices (" + std::to_string(rectangular) + " rectangular), " +
             std::to_string(wrong) + " non-optimal";
  return o;
}

Outcome levenshtein_oracle() {
  synth::Generator gen(4004);
  std::size_t wrong = 0, trials = 0;
  for (int t = 0; t < 2000; ++t) {
    std::string a = synth::random_utf8(gen, 20), b = synth::random_utf8(gen, 20);
    ++trials;
    if (levenshtein(a, b) != synth::dp_levenshtein(text::decode_utf8(a), text::decode_utf8(b))) ++wrong;
  }
  std::size_t kitten = levenshtein("kitten", "sitting");
  Outcome o;
  o.pass = wrong == 0 && kitten == 3;
  o.detail = std::to_string(trials) + " pairs, " + std::to_string(wrong) + " mismatches, kitten/sitting = " +
             std::to_string(kitten);
  return o;
}

std::vector<std::string> table_cells(const std::string& table, const std::string& label) {
  for (const std::string& line : text::split_lines(table)) {
    if (!line.starts_with(label)) continue;
    std::istringstream ss(line.substr(label.size()));
    std::vector<std::string> cells;
    std::string c;
    while (ss >> c) cells.push_back(c);
    return cells;
  }
  return {};
}

Outcome table_format() {
  GroundTruthCounts counts;
  counts.node_count = 1736;
  counts.arrow_count = 881;
  counts.message_count = 881;
  counts.relevant_line_count = 40;
  std::vector<ErrorRecord> errs;
  for (int i = 0; i < 226; ++i) errs.push_back({ErrorCategory::Node, ErrorKind::Insertion, "f", {}, 1, "", {}});
  DatasetReport r = aggregate({compute_file_metrics(errs, counts, "f")});
  std::string table = render(r, ReportFormat::Table);
  auto header = text::split_lines(table).at(0);
  auto ins = table_cells(table, "Insertion (%)");
  auto del = table_cells(table, "Deletion (%)");
  bool columns = header.find("Node") < header.find("Direction change") &&
                 header.find("Direction change") < header.find("Direction type") &&
                 header.find("Direction type") < header.find("Message") && header.find("Message") < header.find("Box") &&
                 header.find("Box") < header.find("Group") && header.find("Group") < header.find("Note") &&
                 header.find("Note") < header.find("Participants");
  Outcome o;
  o.pass = columns && ins.size() == 8 && del.size() == 8 && ins[0] == "13.02" && ins[2] == "0.00" && del[2] == "0.00";
  o.detail = "Node/Insertion = " + (ins.empty() ? "?" : ins[0]) + ", Direction type insertion/deletion = " +
             (ins.size() > 2 ? ins[2] : "?") + "/" + (del.size() > 2 ? del[2] : "?");
  return o;
}

Outcome swap_symmetry() {
  synth::Generator gen(6006);
  synth::Mutator mutator(gen);
  PipelineOptions raw;
  raw.normalize = false;  // only the candidate side is ever normalized
  std::size_t pairs = 0, broken = 0, skipped = 0;
  for (int t = 0; t < 300; ++t) {
    synth::Script base = corpus_script(gen, t);
    std::string a = synth::render(base);
    std::string b = t % 2 ? synth::render(mutator.mutate(base, gen.uniform(1, 6)).candidate)
                          : synth::join_lines(synth::scramble_lines(gen, text::split_lines(a), gen.uniform(1, 10)));
    try {
      auto ab = synth::counts_of(evaluate_pair(a, b, "x", raw).errors);
      auto ba = synth::counts_of(evaluate_pair(b, a, "x", raw).errors);
      ++pairs;
      if (ba != swapped(ab)) ++broken;
    } catch (const Error&) {
      ++skipped;
    }
  }
  Outcome o;
  o.pass = broken == 0 && pairs >= 100;
  o.detail = std::to_string(pairs) + " script pairs, " + std::to_string(broken) + " asymmetric" +
             (skipped ? ", " + std::to_string(skipped) + " unparseable skipped" : "");
  return o;
}

Outcome patch_equivalence() {
  synth::Generator gen(7007);
  auto dir = synth::temp_dir("acc_patch");
  std::size_t pairs = 0, different = 0, skipped = 0;
  for (int t = 0; t < 200; ++t) {
    std::string gt = synth::render(corpus_script(gen, t));
    auto cand_lines = synth::scramble_lines(gen, text::split_lines(gt), gen.uniform(0, 10));
    if (t % 3 == 0)
      for (auto& l : cand_lines)
        if (l.starts_with("participant") && gen.chance(0.5)) l.replace(0, 11, "actor");
    std::string name = "case" + std::to_string(t) + ".puml";
    fs::path gt_dir = dir / ("gt" + std::to_string(t));
    synth::write_text(gt_dir / name, gt);
    synth::write_text(dir / "cand" / name, synth::join_lines(cand_lines));
    std::string patch = to_unified_diff(line_diff(text::split_lines(gt), cand_lines, name, name));
    try {
      DatasetReport native = compare_files(gt_dir / name, dir / "cand" / name);
      DatasetReport patched = evaluate_patch(patch, gt_dir);
      ++pairs;
      bool same = true;
      for (ReportFormat f : {ReportFormat::Json, ReportFormat::Table, ReportFormat::Csv})
        same = same && render(native, f) == render(patched, f);
      same = same && emit_bin_plot_data(native) == emit_bin_plot_data(patched);
      if (!same) ++different;
    } catch (const Error&) {
      ++skipped;
    }
  }
  fs::remove_all(dir);
  Outcome o;
  o.pass = different == 0 && pairs >= 100;
  o.detail = std::to_string(pairs) + " script pairs, " + std::to_string(different) + " reports differ" +
             (skipped ? ", " + std::to_string(skipped) + " unparseable skipped" : "");
  return o;
}

Outcome bin_reproduction() {
  synth::Generator gen(8008);
  synth::Mutator mutator(gen);
  auto dir = synth::temp_dir("acc_bins");
  const std::array<std::pair<std::size_t, std::size_t>, 5> ranges = {{{1, 20}, {21, 30}, {31, 40}, {41, 50}, {51, 100}}};
  const std::array<std::size_t, 5> population = {10, 13, 5, 13, 9};
  int n = 0;
  for (std::size_t b = 0; b < ranges.size(); ++b) {
    for (std::size_t k = 0; k < population[b]; ++k) {
      std::size_t lines = gen.uniform(std::max<std::size_t>(ranges[b].first, 3), ranges[b].second);
      synth::Script gt = synth::sized_script(gen, lines);
      std::string name = "f" + std::to_string(n++) + ".puml";
      synth::write_text(dir / "gt" / name, synth::render(gt));
      synth::write_text(dir / "cand" / name, synth::render(mutator.mutate(gt, gen.uniform(0, 4)).candidate));
    }
  }
  auto t0 = Clock::now();
  DatasetReport r = evaluate_directories(dir / "gt", dir / "cand");
  std::string out = render(r, ReportFormat::Json) + emit_bin_plot_data(r);
  double secs = seconds_since(t0);
  fs::remove_all(dir);

  std::vector<std::size_t> got;
  std::string labels;
  for (const LineBin& b : r.bins) {
    got.push_back(b.file_count);
    labels += (labels.empty() ? "" : " ") + b.label + ":" + std::to_string(b.file_count);
  }
  Outcome o;
  o.pass = got == std::vector<std::size_t>(population.begin(), population.end()) && r.per_file.size() == 50 &&
           secs < 5.0 && !out.empty();
  o.detail = labels + ", " + std::to_string(secs).substr(0, 5) + " s";
  return o;
}

Outcome normalization() {
  synth::Generator gen(9009);
  std::size_t pairs = 0, with_errors = 0, rewrites = 0, not_idempotent = 0, corpus = 0;
  for (int t = 0; t < 100; ++t) {
    synth::Script gt = corpus_script(gen, t);
    synth::Script cand = gt;
    for (auto& it : cand) {
      if (it.type == synth::Item::Type::Participant && it.keyword == "participant") it.keyword = "actor";
    }
    std::vector<std::string> lines = synth::render_lines(cand);
    for (auto& l : lines) {
      std::size_t p = l.find("-->");
      if (p != std::string::npos && classify_line(l) == StatementKind::ArrowLine) {
        l.replace(p, 3, "..>");
        ++rewrites;
      }
    }
    for (const auto& it : cand) rewrites += it.type == synth::Item::Type::Participant && it.keyword == "actor";
    ++pairs;
    if (!evaluate_pair(synth::render(gt), synth::join_lines(lines), "x").errors.empty()) ++with_errors;

    for (const std::string& s : {synth::render(gt), synth::join_lines(lines)}) {
      ++corpus;
      std::string once = normalize_script(s);
      if (normalize_script(once) != once) ++not_idempotent;
    }
  }
  Outcome o;
  o.pass = with_errors == 0 && not_idempotent == 0 && rewrites > 0;
  o.detail = std::to_string(pairs) + " pairs with " + std::to_string(rewrites) + " rewrites, " +
             std::to_string(with_errors) + " with errors; " + std::to_string(not_idempotent) + "/" +
             std::to_string(corpus) + " scripts not idempotent";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"identity suite", identity_suite},
      {"mutation oracle", mutation_oracle},
      {"assignment optimality", assignment_optimality},
      {"levenshtein oracle", levenshtein_oracle},
      {"table arithmetic and format", table_format},
      {"swap symmetry", swap_symmetry},
      {"patch-path equivalence", patch_equivalence},
      {"bin reproduction", bin_reproduction},
      {"normalization idempotence and leniency", normalization},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " -- "
              << o.detail << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failed ? 1 : 0;
}
