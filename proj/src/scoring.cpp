#include "mars/scoring.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mars {

namespace kernels {

double weighted_log_sum(std::span<const TokenProb> tokens,
                        std::span<const double> weights) {
  double acc = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    acc += weights[i] * tokens[i].logprob;
  }
  return acc;
}

double uniform_weighted_log_sum(std::span<const TokenProb> tokens,
                                double weight) {
  double acc = 0.0;
  for (const auto& t : tokens) acc += weight * t.logprob;
  return acc;
}

}  // namespace kernels

double sequence_log_prob(const Generation& gen) {
  return kernels::uniform_weighted_log_sum(gen.tokens, 1.0);
}

double length_normalized_log_score(const Generation& gen) {
  if (gen.tokens.empty()) {
    throw std::invalid_argument("length-normalized score of an empty sequence");
  }
  return kernels::uniform_weighted_log_sum(
      gen.tokens, 1.0 / static_cast<double>(gen.tokens.size()));
}

WeightVector compute_weights(const ImportanceProfile& u, std::size_t length) {
  if (u.size() != length || length == 0) {
    throw std::invalid_argument("importance profile has " +
                                std::to_string(u.size()) +
                                " entries for a sequence of length " +
                                std::to_string(length));
  }
  // 1/(2L) and u_l/2 are exact halvings, so u_l = 1/L gives w_l = 1/L
  // exactly.
  const double base = 1.0 / static_cast<double>(2 * length);
  std::vector<double> w(length);
  for (std::size_t l = 0; l < length; ++l) w[l] = base + u[l] / 2.0;
  return WeightVector(std::move(w));
}

double mars_log_score(const Generation& gen, const WeightVector& w) {
  if (w.size() != gen.tokens.size()) {
    throw std::invalid_argument("weight vector has " +
                                std::to_string(w.size()) +
                                " entries for a sequence of length " +
                                std::to_string(gen.tokens.size()));
  }
  return kernels::weighted_log_sum(gen.tokens, w.values());
}

UEResult confidence_ue(double log_score, Scoring scoring) {
  if (!std::isfinite(log_score)) {
    throw std::invalid_argument("confidence of a non-finite log score");
  }
  // 0.0 - x rather than -x so a perfect score maps to +0.0.
  return {Method::Confidence, scoring, 0.0 - log_score};
}

}  // namespace mars
