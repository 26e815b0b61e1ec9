#pragma once

// Token importance for MARS.
//
// Pipeline for one generation:
//   segment_phrases -> build_masked_variants -> score_variants (o_k)
//   -> prelim_k = 1 - o_k -> normalize_importance (softmax, temperature tau)
//   -> distribute_to_tokens -> ImportanceProfile
//
// Masking removes a phrase's tokens from the answer; the provider judges
// how well the masked answer still answers the question when the
// unmasked answer is taken as the reference. A phrase whose removal
// destroys correctness (o near 0) gets a large preliminary coefficient.

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mars/types.hpp"

namespace mars {

inline constexpr double kDefaultTau = 0.01;

// ---------------------------------------------------------------------------
// Segmentation
// ---------------------------------------------------------------------------

/// Deterministic heuristic chunker.
///
/// Tokens are first grouped into words: a word boundary falls before a
/// token that starts with whitespace, after a token that ends with
/// whitespace, and wherever the byte class flips between word bytes and
/// punctuation across the token boundary. Sub-word pieces such as
/// "Shake" + "speare" therefore stay together.
///
/// Words are then grouped into phrases:
///   - a determiner run absorbs the following run of content words
///     ("the Red Planet");
///   - an auxiliary run absorbs one following lowercase content word
///     ("is known", "has been eating");
///   - consecutive capitalized content words merge ("William Shakespeare");
///   - everything else (prepositions, punctuation, lone words) stands alone.
///
/// The question is accepted for interface parity with model-based chunkers
/// and is not used by the heuristic.
PhraseSegmentation segment_phrases(const Generation& gen,
                                   std::string_view question);

/// Word-level grouping only; exposed for tests.
PhraseSegmentation segment_words(const Generation& gen);

PhraseSegmentation segment(const Generation& gen, std::string_view question,
                           Segmentation mode);

// ---------------------------------------------------------------------------
// Masking
// ---------------------------------------------------------------------------

struct MaskedVariant {
  std::size_t phrase_index = 0;
  /// Concatenation of the tokens outside the phrase, with leading and
  /// trailing whitespace trimmed.
  std::string masked_text;

  bool operator==(const MaskedVariant&) const = default;
};

std::vector<MaskedVariant> build_masked_variants(const Generation& gen,
                                                 const PhraseSegmentation& seg);

// ---------------------------------------------------------------------------
// Providers
// ---------------------------------------------------------------------------

/// Answer-equivalence judge returning o in [0, 1]: the probability that
/// `candidate` is a correct answer to `question` given `reference`.
/// Implementations must be safe to call concurrently.
class ImportanceProvider {
 public:
  virtual ~ImportanceProvider() = default;
  virtual double score(std::string_view question, std::string_view reference,
                       std::string_view candidate) const = 0;
  virtual std::string describe() const = 0;
};

/// Looks masked texts up in a table; falls back to an optional default.
///
/// File format (JSON):  {"default": 0.5, "scores": {"<masked text>": o, ...}}
/// Both keys are optional; a lookup miss without a default is a
/// ValidationError.
class FixtureImportanceProvider final : public ImportanceProvider {
 public:
  FixtureImportanceProvider(std::unordered_map<std::string, double> scores,
                            std::optional<double> fallback);
  static FixtureImportanceProvider from_file(const std::string& path);

  double score(std::string_view question, std::string_view reference,
               std::string_view candidate) const override;
  std::string describe() const override;

 private:
  std::unordered_map<std::string, double> scores_;
  std::optional<double> fallback_;
  std::string source_ = "inline";
};

/// Local deterministic stand-in for an answer-equivalence model.
///
/// o = fraction of the reference's question-salient content words (content
/// words absent from the question) that survive in the candidate; o = 1
/// when the reference has no such words. Word sets are compared, so
/// repeated words count once.
class HeuristicImportanceProvider final : public ImportanceProvider {
 public:
  double score(std::string_view question, std::string_view reference,
               std::string_view candidate) const override;
  std::string describe() const override { return "heuristic"; }
};

/// HTTP client for the model sidecar: POST {base_url}/v1/bem with
/// {"question", "reference", "candidate"}, expecting {"score": o}.
///
/// Connection failures and 5xx responses raise TransportError after
/// `retries` extra attempts; 4xx responses raise Error immediately; a
/// missing or out-of-range score raises ValidationError.
class RemoteImportanceProvider final : public ImportanceProvider {
 public:
  explicit RemoteImportanceProvider(std::string base_url,
                                    std::string bearer_token = {},
                                    int retries = 2, double timeout_s = 30.0);

  double score(std::string_view question, std::string_view reference,
               std::string_view candidate) const override;
  std::string describe() const override { return "remote:" + base_url_; }

 private:
  std::string base_url_;
  std::string token_;
  int retries_;
  double timeout_s_;
};

/// Environment variable holding the sidecar bearer token.
inline constexpr const char* kSidecarTokenEnv = "MARS_SIDECAR_TOKEN";

// ---------------------------------------------------------------------------
// Scoring and normalization
// ---------------------------------------------------------------------------

/// Provider output o_k per variant, in variant order. Throws
/// ValidationError if the provider returns a value outside [0, 1].
std::vector<double> score_variants(std::string_view question,
                                   const Generation& original,
                                   const std::vector<MaskedVariant>& variants,
                                   const ImportanceProvider& provider);

/// Temperature softmax with max subtraction. Throws std::invalid_argument
/// on empty or non-finite input or tau <= 0.
std::vector<double> normalize_importance(std::span<const double> prelim,
                                         double tau);

/// Spreads phrase coefficients over tokens.
///   Equal        - coeff_k / |span k| to each token of span k
///   MaxUncertain - all of coeff_k to the lowest-logprob token of span k
///   MinUncertain - all of coeff_k to the highest-logprob token of span k
/// Ties go to the lowest token index.
ImportanceProfile distribute_to_tokens(std::span<const double> coeff,
                                       const PhraseSegmentation& seg,
                                       const Generation& gen,
                                       Strategy strategy);

struct ImportanceOptions {
  double tau = kDefaultTau;
  Strategy strategy = Strategy::Equal;
  Segmentation segmentation = Segmentation::Phrase;

  bool operator==(const ImportanceOptions&) const = default;
};

/// Full pipeline for one generation answering `question`.
ImportanceProfile compute_importance(std::string_view question,
                                     const Generation& gen,
                                     const ImportanceProvider& provider,
                                     const ImportanceOptions& options = {});

/// Importance of the record's most likely answer.
ImportanceProfile compute_importance(const GenerationRecord& record,
                                     const ImportanceProvider& provider,
                                     const ImportanceOptions& options = {});

}  // namespace mars
