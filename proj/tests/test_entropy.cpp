#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "mars/entropy.hpp"
#include "mars/scoring.hpp"
#include "test_support.hpp"

namespace mars {
namespace {

using testing::gen_from_probs;
using testing::make_gen;

// Equivalence by a label table: texts with the same label are equivalent.
class LabelEquivalence final : public EquivalenceProvider {
 public:
  explicit LabelEquivalence(std::map<std::string, int> labels)
      : labels_(std::move(labels)) {}
  bool equivalent(std::string_view, std::string_view a,
                  std::string_view b) const override {
    return labels_.at(std::string(a)) == labels_.at(std::string(b));
  }
  std::string describe() const override { return "labels"; }

 private:
  std::map<std::string, int> labels_;
};

// Probability-space reference: clusters as label groups, cluster
// probability as a plain sum of exp().
double se_oracle(const std::vector<double>& log_scores,
                 const std::vector<int>& labels, SeDenominator denom) {
  std::map<int, double> mass;
  for (std::size_t b = 0; b < labels.size(); ++b) {
    mass[labels[b]] += std::exp(log_scores[b]);
  }
  if (denom == SeDenominator::Clusters) {
    double s = 0.0;
    for (const auto& [label, p] : mass) s += std::log(p);
    return -s / static_cast<double>(mass.size());
  }
  double s = 0.0;
  for (int label : labels) s += std::log(mass[label]);
  return -s / static_cast<double>(labels.size());
}

TEST(McEntropy, Examples) {
  const double one[] = {std::log(0.5)};
  EXPECT_NEAR(mc_entropy(one), std::log(2.0), 1e-15);
  const double two[] = {std::log(0.5), std::log(0.25)};
  EXPECT_NEAR(mc_entropy(two), 1.0397, 1e-4);
  EXPECT_THROW(mc_entropy(std::span<const double>{}), std::invalid_argument);
}

TEST(ClusterLogScore, SumsInProbabilitySpace) {
  const double members[] = {std::log(0.3), std::log(0.2)};
  EXPECT_NEAR(cluster_log_score(members), std::log(0.5), 1e-15);
  const double single[] = {-3.25};
  EXPECT_EQ(cluster_log_score(single), -3.25);
}

TEST(ClusterLogScore, StableForVeryNegativeScores) {
  const double members[] = {-1000.0, -1000.0};
  EXPECT_NEAR(cluster_log_score(members), -1000.0 + std::log(2.0), 1e-12);
}

TEST(Clustering, GreedyAgainstFirstMember) {
  NormalizedMatchEquivalence match;
  const auto c = cluster_texts("q", {"a", "b", "a"}, match);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].member_indices, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(c[1].member_indices, (std::vector<std::size_t>{1}));
}

TEST(Clustering, FixturePairsMerge) {
  FixtureEquivalence eq(std::vector<std::pair<std::string, std::string>>{{"Paris", "It's Paris"}});
  const auto c = cluster_texts("Capital of France?",
                               {"Paris", "Lyon", "It's Paris"}, eq);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].member_indices, (std::vector<std::size_t>{0, 2}));
}

TEST(Clustering, PartitionIndependentOfSampleOrder) {
  std::vector<std::string> texts = {"a1", "b1", "a2", "c1", "b2", "a3", "c2"};
  LabelEquivalence eq({{"a1", 0}, {"a2", 0}, {"a3", 0}, {"b1", 1}, {"b2", 1},
                       {"c1", 2}, {"c2", 2}});
  auto partition = [&](const std::vector<std::string>& order) {
    std::set<std::set<std::string>> out;
    for (const auto& c : cluster_texts("q", order, eq)) {
      std::set<std::string> members;
      for (auto i : c.member_indices) members.insert(order[i]);
      out.insert(members);
    }
    return out;
  };
  const auto expected = partition(texts);
  EXPECT_EQ(expected.size(), 3u);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::shuffle(texts.begin(), texts.end(), rng);
    EXPECT_EQ(partition(texts), expected);
  }
}

TEST(SemanticEntropy, AllSingletonsEqualsEntropy) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-8.0, -0.01);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t b = 1 + trial % 6;
    std::vector<double> scores(b);
    std::vector<MeaningCluster> clusters;
    for (std::size_t i = 0; i < b; ++i) {
      scores[i] = d(rng);
      clusters.push_back({{i}, 0.0});
    }
    const auto scored = score_clusters(clusters, scores);
    EXPECT_NEAR(semantic_entropy(scored, SeDenominator::Clusters),
                mc_entropy(scores), 1e-12);
    EXPECT_NEAR(semantic_entropy(scored, SeDenominator::Samples),
                mc_entropy(scores), 1e-12);
  }
}

TEST(SemanticEntropy, DenominatorsDiffer) {
  // {0, 1} with mass 0.3 + 0.2, {2} with 0.1.
  const std::vector<double> scores = {std::log(0.3), std::log(0.2),
                                      std::log(0.1)};
  const auto clusters =
      score_clusters({{{0, 1}, 0.0}, {{2}, 0.0}}, scores);
  EXPECT_NEAR(semantic_entropy(clusters, SeDenominator::Clusters),
              -(std::log(0.5) + std::log(0.1)) / 2.0, 1e-15);
  EXPECT_NEAR(semantic_entropy(clusters, SeDenominator::Samples),
              -(2.0 * std::log(0.5) + std::log(0.1)) / 3.0, 1e-15);
  EXPECT_THROW(semantic_entropy({}), std::invalid_argument);
}

TEST(SemanticEntropy, MatchesProbabilitySpaceOracle) {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> p(0.01, 1.0);
  std::uniform_int_distribution<int> len(1, 8);
  for (int trial = 0; trial < 300; ++trial) {
    const int b = 1 + trial % 6;
    std::uniform_int_distribution<int> lab(0, b - 1);
    std::vector<std::string> texts;
    std::vector<int> labels;
    std::map<std::string, int> table;
    std::vector<double> scores;
    for (int i = 0; i < b; ++i) {
      std::vector<double> probs(len(rng));
      for (auto& x : probs) x = p(rng);
      scores.push_back(sequence_log_prob(gen_from_probs(probs)));
      labels.push_back(lab(rng));
      texts.push_back("t" + std::to_string(i));
      table[texts.back()] = labels.back();
    }
    LabelEquivalence eq(table);
    const auto clusters = score_clusters(cluster_texts("q", texts, eq), scores);
    for (auto denom : {SeDenominator::Clusters, SeDenominator::Samples}) {
      EXPECT_NEAR(semantic_entropy(clusters, denom),
                  se_oracle(scores, labels, denom), 1e-9);
    }
  }
}

// --- per-record driver -------------------------------------------------------------

GenerationRecord sample_record() {
  GenerationRecord r;
  r.id = "r1";
  r.question = "Capital of France?";
  r.answer = make_gen({{"Paris", 0.8}, {".", 0.9}});
  r.samples = {make_gen({{"Paris", 0.5}}), make_gen({{"Lyon", 0.25}}),
               make_gen({{"paris", 0.2}})};
  return r;
}

TEST(UeForRecord, LengthNormalizedValues) {
  const auto r = sample_record();
  NormalizedMatchEquivalence match;
  UEOptions opts;
  opts.scorings = {Scoring::LengthNormalized};
  const auto out = ue_for_record(r, opts, {nullptr, &match});
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].method, Method::Confidence);
  EXPECT_NEAR(out[0].value, -(std::log(0.8) + std::log(0.9)) / 2.0, 1e-15);
  EXPECT_EQ(out[1].method, Method::Entropy);
  EXPECT_NEAR(out[1].value,
              -(std::log(0.5) + std::log(0.25) + std::log(0.2)) / 3.0, 1e-15);
  EXPECT_EQ(out[2].method, Method::SemanticEntropy);
  EXPECT_NEAR(out[2].value, -(std::log(0.7) + std::log(0.25)) / 2.0, 1e-15);
}

TEST(UeForRecord, MethodMajorOrderRegardlessOfRequestOrder) {
  const auto r = sample_record();
  HeuristicImportanceProvider imp;
  NormalizedMatchEquivalence match;
  UEOptions opts;
  opts.methods = {Method::SemanticEntropy, Method::Confidence, Method::Entropy,
                  Method::Confidence};
  opts.scorings = {Scoring::Mars, Scoring::LengthNormalized};
  const auto out = ue_for_record(r, opts, {&imp, &match});
  ASSERT_EQ(out.size(), 6u);
  for (std::size_t i = 1; i < out.size(); ++i) {
    EXPECT_LT(method_key(out[i - 1].method, out[i - 1].scoring),
              method_key(out[i].method, out[i].scoring));
  }
}

TEST(UeForRecord, SingleTokenMarsEqualsLengthNormalized) {
  // One token per generation: importance is necessarily [1].
  const auto r = sample_record();
  GenerationRecord one = r;
  one.answer = make_gen({{"Paris", 0.8}});
  HeuristicImportanceProvider imp;
  NormalizedMatchEquivalence match;
  const auto out = ue_for_record(one, UEOptions{}, {&imp, &match});
  ASSERT_EQ(out.size(), 6u);
  for (std::size_t i = 0; i < out.size(); i += 2) {
    EXPECT_EQ(out[i].value, out[i + 1].value) << method_key(out[i].method, out[i].scoring);
  }
}

TEST(UeForRecord, MissingSamplesAndProviders) {
  auto r = sample_record();
  NormalizedMatchEquivalence match;
  HeuristicImportanceProvider imp;
  r.samples.clear();
  EXPECT_THROW(ue_for_record(r, UEOptions{}, {&imp, &match}),
               InsufficientSamples);

  UEOptions conf;
  conf.methods = {Method::Confidence};
  EXPECT_EQ(ue_for_record(r, conf, {&imp, nullptr}).size(), 2u);

  EXPECT_THROW(ue_for_record(sample_record(), UEOptions{}, {nullptr, &match}),
               ConfigError);
  EXPECT_THROW(ue_for_record(sample_record(), UEOptions{}, {&imp, nullptr}),
               ConfigError);
}

TEST(UeForRecord, SamplesDenominatorOption) {
  const auto r = sample_record();
  NormalizedMatchEquivalence match;
  UEOptions opts;
  opts.methods = {Method::SemanticEntropy};
  opts.scorings = {Scoring::LengthNormalized};
  opts.se_denominator = SeDenominator::Samples;
  const auto out = ue_for_record(r, opts, {nullptr, &match});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(out[0].value, -(2.0 * std::log(0.7) + std::log(0.25)) / 3.0,
              1e-15);
}

}  // namespace
}  // namespace mars
