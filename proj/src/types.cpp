#include "mars/types.hpp"

#include <cmath>
#include <string>

namespace mars {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

InsufficientSamples::InsufficientSamples(const std::string& record_id)
    : Error("record '" + record_id +
            "': insufficient samples for a sampling-based method"),
      record_id_(record_id) {}

std::string detokenize(std::span<const TokenProb> tokens) {
  std::string out;
  for (const auto& t : tokens) out += t.text;
  return out;
}

PhraseSegmentation::PhraseSegmentation(std::vector<Span> spans,
                                       std::size_t length)
    : spans_(std::move(spans)), length_(length) {
  std::size_t cursor = 0;
  for (const auto& s : spans_) {
    if (s.start != cursor || s.end <= s.start) {
      throw ValidationError("phrase spans must be contiguous, sorted and "
                            "non-empty");
    }
    cursor = s.end;
  }
  if (cursor != length_) {
    throw ValidationError("phrase spans cover " + std::to_string(cursor) +
                          " of " + std::to_string(length_) + " tokens");
  }
}

PhraseSegmentation PhraseSegmentation::token_level(std::size_t length) {
  std::vector<Span> spans;
  spans.reserve(length);
  for (std::size_t i = 0; i < length; ++i) spans.push_back({i, i + 1});
  return PhraseSegmentation(std::move(spans), length);
}

ImportanceProfile::ImportanceProfile(std::vector<double> u) : u_(std::move(u)) {
  if (u_.empty()) throw ValidationError("importance profile is empty");
  double sum = 0.0;
  for (double v : u_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("importance coefficient " + std::to_string(v) +
                            " outside [0, 1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kUnitSumTolerance) {
    throw ValidationError("importance coefficients sum to " +
                          std::to_string(sum) + ", expected 1");
  }
}

ImportanceProfile ImportanceProfile::uniform(std::size_t length) {
  return ImportanceProfile(
      std::vector<double>(length, 1.0 / static_cast<double>(length)));
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Confidence: return "confidence";
    case Method::Entropy: return "entropy";
    case Method::SemanticEntropy: return "semantic_entropy";
  }
  return "?";
}

std::string_view to_string(Scoring s) {
  switch (s) {
    case Scoring::LengthNormalized: return "length_normalized";
    case Scoring::Mars: return "mars";
  }
  return "?";
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Equal: return "equal";
    case Strategy::MaxUncertain: return "max";
    case Strategy::MinUncertain: return "min";
  }
  return "?";
}

std::string_view to_string(Segmentation s) {
  switch (s) {
    case Segmentation::Phrase: return "phrase";
    case Segmentation::Token: return "token";
  }
  return "?";
}

std::string_view to_string(SeDenominator d) {
  switch (d) {
    case SeDenominator::Clusters: return "clusters";
    case SeDenominator::Samples: return "samples";
  }
  return "?";
}

namespace {

[[noreturn]] void bad_value(std::string_view what, std::string_view s) {
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(s) +
                    "'");
}

}  // namespace

Method parse_method(std::string_view s) {
  if (s == "confidence") return Method::Confidence;
  if (s == "entropy") return Method::Entropy;
  if (s == "semantic_entropy" || s == "se") return Method::SemanticEntropy;
  bad_value("method", s);
}

Scoring parse_scoring(std::string_view s) {
  if (s == "length_normalized" || s == "ln") return Scoring::LengthNormalized;
  if (s == "mars") return Scoring::Mars;
  bad_value("scoring", s);
}

Strategy parse_strategy(std::string_view s) {
  if (s == "equal") return Strategy::Equal;
  if (s == "max" || s == "max_uncertain") return Strategy::MaxUncertain;
  if (s == "min" || s == "min_uncertain") return Strategy::MinUncertain;
  bad_value("strategy", s);
}

Segmentation parse_segmentation(std::string_view s) {
  if (s == "phrase") return Segmentation::Phrase;
  if (s == "token") return Segmentation::Token;
  bad_value("segmentation", s);
}

SeDenominator parse_se_denominator(std::string_view s) {
  if (s == "clusters") return SeDenominator::Clusters;
  if (s == "samples") return SeDenominator::Samples;
  bad_value("se_denominator", s);
}

std::string method_key(Method m, Scoring s) {
  std::string key(to_string(m));
  key += '/';
  key += to_string(s);
  return key;
}

}  // namespace mars
