#include <gtest/gtest.h>

#include "pumldiff/pumldiff.hpp"
#include "synthetic.hpp"

using namespace pumldiff;
namespace fs = std::filesystem;

namespace {

std::string describe(const synth::MutationResult& m) {
  std::string s;
  for (auto x : m.applied) s += std::string(synth::to_string(x)) + " ";
  return s;
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

}  // namespace

TEST(Properties, IdentityOnSyntheticCorpus) {
  synth::Generator gen(101);
  for (int i = 0; i < 100; ++i) {
    std::string s = synth::render(gen.script());
    FileMetrics m = evaluate_pair(s, s, "x");
    EXPECT_TRUE(m.errors.empty()) << s;
  }
}

TEST(Properties, MutationCountsAreRecovered) {
  synth::Generator gen(202);
  synth::Mutator mutator(gen);
  for (int t = 0; t < 150; ++t) {
    synth::Script gt = gen.script();
    auto m = mutator.mutate(gt, gen.uniform(1, 5));
    FileMetrics got = evaluate_pair(synth::render(gt), synth::render(m.candidate), "x");
    EXPECT_EQ(synth::counts_of(got.errors), m.expected)
        << describe(m) << "\n--- gt\n" << synth::render(gt) << "--- cand\n" << synth::render(m.candidate);
  }
}

TEST(Properties, SwapSymmetry) {
  synth::Generator gen(303);
  PipelineOptions raw;
  raw.normalize = false;
  for (int t = 0; t < 150; ++t) {
    std::string a = synth::render(gen.script());
    std::string b = synth::join_lines(synth::scramble_lines(gen, text::split_lines(a), gen.uniform(1, 8)));
    try {
      auto ab = synth::counts_of(evaluate_pair(a, b, "x", raw).errors);
      auto ba = synth::counts_of(evaluate_pair(b, a, "x", raw).errors);
      EXPECT_EQ(ba, swapped(ab)) << "--- a\n" << a << "--- b\n" << b;
    } catch (const Error& e) {
      // scrambling can produce an arrow with an empty endpoint
      EXPECT_EQ(e.code(), ErrorCode::MalformedArrow);
    }
  }
}

TEST(Properties, PatchPathEquivalence) {
  synth::Generator gen(404);
  auto dir = synth::temp_dir("props");
  for (int t = 0; t < 60; ++t) {
    std::string gt = synth::render(gen.script());
    auto cand_lines = synth::scramble_lines(gen, text::split_lines(gt), gen.uniform(0, 6));
    if (gen.chance(0.3))
      for (auto& l : cand_lines)
        if (l.starts_with("participant")) l.replace(0, 11, "actor");
    std::string cand = synth::join_lines(cand_lines);
    fs::remove_all(dir / "gt");
    synth::write_text(dir / "gt" / "x.puml", gt);
    synth::write_text(dir / "cand.puml", cand);
    std::string patch = to_unified_diff(line_diff(text::split_lines(gt), cand_lines, "x.puml", "x.puml"));
    try {
      std::string a = render(compare_files(dir / "gt" / "x.puml", dir / "cand.puml"), ReportFormat::Json);
      std::string b = render(evaluate_patch(patch, dir / "gt"), ReportFormat::Json);
      EXPECT_EQ(a, b) << patch;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MalformedArrow);
    }
  }
  fs::remove_all(dir);
}

TEST(Properties, DeterministicAcrossRuns) {
  synth::Generator gen(505);
  std::string a = synth::render(gen.script());
  std::string b = synth::join_lines(synth::scramble_lines(gen, text::split_lines(a), 6));
  std::string first = render(aggregate({evaluate_pair(a, b, "x")}), ReportFormat::Json);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(render(aggregate({evaluate_pair(a, b, "x")}), ReportFormat::Json), first);
}

TEST(Properties, RatesAreBounded) {
  synth::Generator gen(606);
  synth::Mutator mutator(gen);
  for (int t = 0; t < 100; ++t) {
    synth::Script gt = gen.script();
    auto m = mutator.mutate(gt, gen.uniform(1, 8));
    FileMetrics f = evaluate_pair(synth::render(gt), synth::render(m.candidate), "x");
    for (ErrorCategory c : kAllCategories) {
      const CategoryCell& cell = f.cells[c];
      if (cell.gt_total == 0) continue;
      EXPECT_LE(*cell.deletion_rate(), 1.0) << to_string(c);
      EXPECT_LE(*cell.substitution_rate(), 1.0) << to_string(c);
    }
    EXPECT_EQ(f.cells[ErrorCategory::EdgeType].insertions, 0u);
    EXPECT_EQ(f.cells[ErrorCategory::EdgeType].deletions, 0u);
  }
}
