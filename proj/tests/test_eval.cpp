#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mars/eval.hpp"
#include "mars/records.hpp"
#include "test_support.hpp"

namespace mars {
namespace {

// O(n^2) pair count.
double auroc_oracle(const std::vector<double>& u, const std::vector<bool>& inc) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!inc[i]) continue;
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (inc[j]) continue;
      pairs += 1.0;
      if (u[i] > u[j]) wins += 1.0;
      if (u[i] == u[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

TEST(Auroc, Examples) {
  EXPECT_EQ(auroc(std::vector<double>{0.1, 0.2, 0.8, 0.9},
                  {false, false, true, true}),
            1.0);
  EXPECT_EQ(auroc(std::vector<double>{0.5, 0.5, 0.5, 0.5},
                  {false, true, false, true}),
            0.5);
  EXPECT_EQ(auroc(std::vector<double>{0.1, 0.4, 0.35, 0.8},
                  {false, false, true, true}),
            0.75);
  EXPECT_EQ(auroc(std::vector<double>{0.9, 0.8, 0.2, 0.1},
                  {false, false, true, true}),
            0.0);
}

TEST(Auroc, MatchesPairCountWithTies) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 120;
    std::uniform_int_distribution<int> level(0, 1 + trial % 9);
    std::vector<double> u(n);
    std::vector<bool> inc(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = level(rng) * 0.5;
      inc[i] = (rng() & 1u) != 0;
    }
    inc[0] = true;
    inc[1] = false;
    EXPECT_NEAR(auroc(u, inc), auroc_oracle(u, inc), 1e-12);
  }
}

TEST(Auroc, InvariantUnderStrictlyIncreasingMaps) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> level(-20, 20);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 10 + trial;
    std::vector<double> u(n), a(n), b(n);
    std::vector<bool> inc(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = level(rng) / 8.0;  // exact in binary, so maps keep order strictly
      a[i] = std::exp(u[i]);
      b[i] = 2.0 * u[i] + 7.0;
      inc[i] = (i % 3) == 0;
    }
    const double base = auroc(u, inc);
    EXPECT_EQ(auroc(a, inc), base);
    EXPECT_EQ(auroc(b, inc), base);
  }
}

TEST(Auroc, LabelFlipComplements) {
  const std::vector<double> u = {0.3, 0.1, 0.7, 0.7, 0.2, 0.9};
  std::vector<bool> inc = {true, false, true, false, false, true};
  std::vector<bool> flipped(inc.size());
  for (std::size_t i = 0; i < inc.size(); ++i) flipped[i] = !inc[i];
  EXPECT_NEAR(auroc(u, inc) + auroc(u, flipped), 1.0, 1e-15);
}

TEST(Auroc, Errors) {
  EXPECT_THROW(auroc(std::vector<double>{0.1, 0.2}, {true, true}),
               DegenerateLabels);
  EXPECT_THROW(auroc(std::vector<double>{0.1, 0.2}, {false, false}),
               DegenerateLabels);
  EXPECT_THROW(auroc(std::vector<double>{0.1}, {true, false}),
               std::invalid_argument);
  EXPECT_THROW(auroc(std::vector<double>{0.1, NAN}, {true, false}),
               std::invalid_argument);
}

// --- evaluate ----------------------------------------------------------------------

class ConstantImportance final : public ImportanceProvider {
 public:
  double score(std::string_view, std::string_view, std::string_view) const override {
    return 0.5;
  }
  std::string describe() const override { return "constant"; }
};

std::vector<GenerationRecord> fixture20() {
  return ingest_records_file(testing::data_path("fixture20.jsonl"));
}

TEST(Evaluate, UniformImportanceMarsColumnsEqualLengthNormalized) {
  const auto records = fixture20();
  ConstantImportance imp;
  NormalizedMatchEquivalence match;
  // Token segmentation: equal coefficients per token, not per phrase.
  RunConfig c;
  c.ue.importance.segmentation = Segmentation::Token;
  const UEReport r = evaluate(records, c, {&imp, &match});
  ASSERT_EQ(r.cells.size(), 6u);
  for (Method m : kAllMethods) {
    const auto* ln = r.find(m, Scoring::LengthNormalized);
    const auto* mars = r.find(m, Scoring::Mars);
    ASSERT_TRUE(ln && mars && ln->auroc && mars->auroc);
    EXPECT_EQ(*ln->auroc, *mars->auroc) << to_string(m);
  }
}

TEST(Evaluate, UnlabeledRecordsSkipped) {
  auto records = fixture20();
  records[3].correctness.reset();
  records[7].correctness.reset();
  HeuristicImportanceProvider imp;
  NormalizedMatchEquivalence match;
  const UEReport r = evaluate(records, RunConfig{}, {&imp, &match});
  EXPECT_EQ(r.record_count, 20u);
  EXPECT_EQ(r.labeled_count, 18u);
  ASSERT_EQ(r.skipped.size(), 2u);
  EXPECT_EQ(r.skipped[0], (SkippedMethod{"q04", "*", "unlabeled"}));
  EXPECT_EQ(r.skipped[1], (SkippedMethod{"q08", "*", "unlabeled"}));
  for (const auto& c : r.cells) EXPECT_EQ(c.n, 18u);
}

TEST(Evaluate, SampleMethodsWithoutSamplesBecomeCellErrors) {
  auto records = fixture20();
  for (auto& r : records) r.samples.clear();
  HeuristicImportanceProvider imp;
  NormalizedMatchEquivalence match;
  const UEReport r = evaluate(records, RunConfig{}, {&imp, &match});
  for (const auto& c : r.cells) {
    if (c.method == Method::Confidence) {
      EXPECT_TRUE(c.auroc.has_value());
      EXPECT_EQ(c.n, 20u);
    } else {
      EXPECT_FALSE(c.auroc.has_value());
      EXPECT_EQ(c.error, "no usable records");
    }
  }
  EXPECT_EQ(r.skipped.size(), 20u * 4u);
  EXPECT_NE(to_table(r).find("entropy/mars: no usable records"),
            std::string::npos);
}

TEST(Evaluate, DegenerateLabelsReportedPerCell) {
  auto records = fixture20();
  for (auto& r : records) r.correctness = true;
  HeuristicImportanceProvider imp;
  NormalizedMatchEquivalence match;
  const UEReport r = evaluate(records, RunConfig{}, {&imp, &match});
  for (const auto& c : r.cells) {
    EXPECT_EQ(c.error, "degenerate labels: no incorrect answers");
  }
}

TEST(Evaluate, IndependentOfInputOrderAndThreads) {
  auto records = fixture20();
  HeuristicImportanceProvider imp;
  NormalizedMatchEquivalence match;
  RunConfig c;
  const auto base = to_json(evaluate(records, c, {&imp, &match})).dump();
  std::reverse(records.begin(), records.end());
  c.jobs = 4;
  EXPECT_EQ(to_json(evaluate(records, c, {&imp, &match})).dump(), base);
}

TEST(Evaluate, ReportJsonShape) {
  HeuristicImportanceProvider imp;
  NormalizedMatchEquivalence match;
  const auto j = to_json(evaluate(fixture20(), RunConfig{}, {&imp, &match}));
  EXPECT_EQ(j["record_count"], 20);
  EXPECT_EQ(j["samples_per_record"]["min"], 4);
  EXPECT_EQ(j["results"].size(), 6u);
  EXPECT_FALSE(j["config"].contains("jobs"));
  EXPECT_EQ(config_from_json(nlohmann::json::parse(j["config"].dump())),
            RunConfig{});
}

TEST(Ablate, GridShape) {
  HeuristicImportanceProvider imp;
  NormalizedMatchEquivalence match;
  const auto grid = ablate(fixture20(), RunConfig{}, {&imp, &match});
  EXPECT_EQ(grid.baseline.size(), 3u);
  ASSERT_EQ(grid.rows.size(), 6u);
  for (const auto& row : grid.rows) {
    ASSERT_EQ(row.cells.size(), 3u);
    for (const auto& c : row.cells) EXPECT_EQ(c.scoring, Scoring::Mars);
  }
}

}  // namespace
}  // namespace mars
