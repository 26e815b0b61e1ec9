#pragma once

// Monte-Carlo entropy and semantic entropy over sampled generations, plus
// the per-record driver that produces every requested UE score.

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mars/importance.hpp"
#include "mars/types.hpp"

namespace mars {

// ---------------------------------------------------------------------------
// Equivalence providers
// ---------------------------------------------------------------------------

/// Decides whether two answers to `question` mean the same thing. Must be
/// symmetric and safe to call concurrently.
class EquivalenceProvider {
 public:
  virtual ~EquivalenceProvider() = default;
  virtual bool equivalent(std::string_view question, std::string_view a,
                          std::string_view b) const = 0;
  virtual std::string describe() const = 0;
};

/// Equal after text::normalize_for_match.
class NormalizedMatchEquivalence final : public EquivalenceProvider {
 public:
  bool equivalent(std::string_view question, std::string_view a,
                  std::string_view b) const override;
  std::string describe() const override { return "match"; }
};

/// Declared pairs, closed under symmetry. Identical texts are always
/// equivalent. File format: [{"text_a": str, "text_b": str}, ...]
class FixtureEquivalence final : public EquivalenceProvider {
 public:
  explicit FixtureEquivalence(
      std::vector<std::pair<std::string, std::string>> pairs);
  static FixtureEquivalence from_file(const std::string& path);

  bool equivalent(std::string_view question, std::string_view a,
                  std::string_view b) const override;
  std::string describe() const override { return "fixture:" + source_; }

 private:
  std::set<std::pair<std::string, std::string>> pairs_;
  std::string source_ = "inline";
};

inline constexpr double kDefaultEntailThreshold = 0.5;

/// Bidirectional entailment through the sidecar: POST {base_url}/v1/nli
/// with {"premise", "hypothesis"}, expecting {"entail": p}. The question is
/// prepended to both texts; a and b are equivalent iff both directions
/// reach `threshold`.
class RemoteNliEquivalence final : public EquivalenceProvider {
 public:
  explicit RemoteNliEquivalence(std::string base_url,
                                std::string bearer_token = {},
                                double threshold = kDefaultEntailThreshold,
                                int retries = 2, double timeout_s = 30.0);

  bool equivalent(std::string_view question, std::string_view a,
                  std::string_view b) const override;
  std::string describe() const override { return "remote:" + base_url_; }

  /// One directional entailment probability.
  double entail(std::string_view premise, std::string_view hypothesis) const;

 private:
  std::string base_url_;
  std::string token_;
  double threshold_;
  int retries_;
  double timeout_s_;
};

// ---------------------------------------------------------------------------
// Entropy math (log space)
// ---------------------------------------------------------------------------

/// -(1/B) * sum_b log_scores[b]. Throws std::invalid_argument when empty.
double mc_entropy(std::span<const double> log_scores);

/// log(sum_b exp(log_scores[b])) with max subtraction. Throws
/// std::invalid_argument when empty.
double cluster_log_score(std::span<const double> member_log_scores);

/// Greedy clustering: each sample, in index order, is compared against the
/// lowest-index member of every existing cluster and joins the first
/// match, otherwise it opens a new cluster. log_score is left at 0; see
/// score_clusters().
std::vector<MeaningCluster> cluster_samples(std::string_view question,
                                            const std::vector<Generation>& samples,
                                            const EquivalenceProvider& provider);

/// Same greedy procedure over raw texts.
std::vector<MeaningCluster> cluster_texts(std::string_view question,
                                          const std::vector<std::string>& texts,
                                          const EquivalenceProvider& provider);

/// Copies `clusters` with log_score filled from per-sample log scores.
std::vector<MeaningCluster> score_clusters(std::vector<MeaningCluster> clusters,
                                           std::span<const double> sample_log_scores);

/// Clusters denominator: -(1/|C|) * sum_i log_score(c_i).
/// Samples denominator: -(1/B) * sum_b log_score(cluster of b).
/// Throws std::invalid_argument when clusters is empty.
double semantic_entropy(const std::vector<MeaningCluster>& clusters,
                        SeDenominator denominator = SeDenominator::Clusters);

// ---------------------------------------------------------------------------
// Per-record driver
// ---------------------------------------------------------------------------

struct UEOptions {
  std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
  std::vector<Scoring> scorings{std::begin(kAllScorings), std::end(kAllScorings)};
  ImportanceOptions importance;
  SeDenominator se_denominator = SeDenominator::Clusters;

  bool operator==(const UEOptions&) const = default;
};

/// Non-owning provider handles; either may be null when unused.
struct Providers {
  const ImportanceProvider* importance = nullptr;
  const EquivalenceProvider* equivalence = nullptr;
};

bool needs_samples(Method m) noexcept;

/// UE scores for every requested (method, scoring) pair, ordered by
/// method then scoring. Throws InsufficientSamples when a sampling-based
/// method is requested for a record without samples, and ConfigError when
/// a required provider is missing.
std::vector<UEResult> ue_for_record(const GenerationRecord& record,
                                    const UEOptions& options,
                                    const Providers& providers);

}  // namespace mars
