#pragma once

// Sequence scoring in log space.
//
// Every score here is the log of a product of token probabilities raised to
// per-token exponents. Length-normalized scoring uses the exponent 1/L for
// every token; MARS uses w_l = 1/(2L) + u_l/2 where u is the token
// importance profile. Both routes share one weighted-sum kernel so uniform
// importance reproduces the length-normalized score bit for bit.

#include <cstddef>
#include <span>

#include "mars/types.hpp"

namespace mars {

/// Sum of token logprobs: log of the plain sequence probability.
double sequence_log_prob(const Generation& gen);

/// (1/L) * sum of token logprobs.
double length_normalized_log_score(const Generation& gen);

/// Throws std::invalid_argument if u.size() != length.
WeightVector compute_weights(const ImportanceProfile& u, std::size_t length);

/// Sum of w_l * logprob_l. Throws std::invalid_argument on length mismatch.
double mars_log_score(const Generation& gen, const WeightVector& w);

/// Negated log score; higher is more uncertain.
UEResult confidence_ue(double log_score, Scoring scoring);

namespace kernels {

/// sum_l weights[l] * logprobs[l], left to right.
double weighted_log_sum(std::span<const TokenProb> tokens,
                        std::span<const double> weights);

/// sum_l weight * logprobs[l], left to right.
double uniform_weighted_log_sum(std::span<const TokenProb> tokens,
                                double weight);

}  // namespace kernels

}  // namespace mars
