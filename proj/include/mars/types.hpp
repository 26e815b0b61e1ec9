#pragma once

// Domain model shared by the scoring engine: generations with token
// log-probabilities, phrase segmentations, importance profiles, token
// weights, meaning clusters and uncertainty results.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mars {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input; carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Remote provider failure that may succeed on retry.
class TransportError : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  explicit InsufficientSamples(const std::string& record_id);
  const std::string& record_id() const noexcept { return record_id_; }

 private:
  std::string record_id_;
};

class DegenerateLabels : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

/// Slightly positive log-probabilities up to this value are float noise
/// from producers and are clamped to zero; anything larger is rejected.
inline constexpr double kLogprobClampThreshold = 1e-6;

struct TokenProb {
  std::string text;
  double logprob = 0.0;  // natural log

  bool operator==(const TokenProb&) const = default;
};

struct Generation {
  std::vector<TokenProb> tokens;
  std::string text;

  std::size_t length() const noexcept { return tokens.size(); }
  bool operator==(const Generation&) const = default;
};

/// Token texts concatenated verbatim.
std::string detokenize(std::span<const TokenProb> tokens);

struct GenerationRecord {
  std::string id;
  std::string question;
  Generation answer;
  std::vector<Generation> samples;
  std::optional<bool> correctness;

  bool operator==(const GenerationRecord&) const = default;
};

// ---------------------------------------------------------------------------
// Segmentation, importance, weights
// ---------------------------------------------------------------------------

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const noexcept { return end - start; }
  bool operator==(const Span&) const = default;
};

/// Contiguous, sorted, non-empty spans that exactly cover [0, L).
class PhraseSegmentation {
 public:
  PhraseSegmentation() = default;
  /// Throws ValidationError unless the spans tile [0, length).
  PhraseSegmentation(std::vector<Span> spans, std::size_t length);

  /// Every token its own phrase.
  static PhraseSegmentation token_level(std::size_t length);

  const std::vector<Span>& spans() const noexcept { return spans_; }
  std::size_t phrase_count() const noexcept { return spans_.size(); }
  std::size_t token_count() const noexcept { return length_; }

  bool operator==(const PhraseSegmentation&) const = default;

 private:
  std::vector<Span> spans_;
  std::size_t length_ = 0;
};

inline constexpr double kUnitSumTolerance = 1e-9;

/// Per-token importance coefficients: each in [0, 1], summing to one.
class ImportanceProfile {
 public:
  /// Throws ValidationError when a coefficient leaves [0, 1] or the sum is
  /// further than 1e-9 from one.
  explicit ImportanceProfile(std::vector<double> u);

  static ImportanceProfile uniform(std::size_t length);

  std::span<const double> values() const noexcept { return u_; }
  std::size_t size() const noexcept { return u_.size(); }
  double operator[](std::size_t i) const { return u_[i]; }

 private:
  std::vector<double> u_;
};

/// Token exponents w_l = 1/(2L) + u_l/2. Built by compute_weights().
class WeightVector {
 public:
  std::span<const double> values() const noexcept { return w_; }
  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }

 private:
  friend WeightVector compute_weights(const ImportanceProfile& u,
                                      std::size_t length);
  explicit WeightVector(std::vector<double> w) : w_(std::move(w)) {}
  std::vector<double> w_;
};

struct MeaningCluster {
  std::vector<std::size_t> member_indices;  // ascending
  double log_score = 0.0;
};

// ---------------------------------------------------------------------------
// Method identifiers
// ---------------------------------------------------------------------------

enum class Method { Confidence, Entropy, SemanticEntropy };
enum class Scoring { LengthNormalized, Mars };
enum class Strategy { Equal, MaxUncertain, MinUncertain };
enum class Segmentation { Phrase, Token };
enum class SeDenominator { Clusters, Samples };

inline constexpr Method kAllMethods[] = {Method::Confidence, Method::Entropy,
                                         Method::SemanticEntropy};
inline constexpr Scoring kAllScorings[] = {Scoring::LengthNormalized,
                                           Scoring::Mars};

std::string_view to_string(Method m);
std::string_view to_string(Scoring s);
std::string_view to_string(Strategy s);
std::string_view to_string(Segmentation s);
std::string_view to_string(SeDenominator d);

/// Parsers accept the to_string() spellings plus short aliases; they throw
/// ConfigError on anything else.
Method parse_method(std::string_view s);
Scoring parse_scoring(std::string_view s);
Strategy parse_strategy(std::string_view s);
Segmentation parse_segmentation(std::string_view s);
SeDenominator parse_se_denominator(std::string_view s);

/// "method/scoring", e.g. "confidence/mars". Sorting keys lexicographically
/// gives the same order as sorting by (Method, Scoring).
std::string method_key(Method m, Scoring s);

/// Higher value means more uncertain.
struct UEResult {
  Method method = Method::Confidence;
  Scoring scoring = Scoring::LengthNormalized;
  double value = 0.0;

  bool operator==(const UEResult&) const = default;
};

}  // namespace mars
