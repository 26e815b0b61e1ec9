#include "mars/importance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mars/text.hpp"

namespace mars {

std::vector<MaskedVariant> build_masked_variants(
    const Generation& gen, const PhraseSegmentation& seg) {
  if (seg.token_count() != gen.tokens.size()) {
    throw std::invalid_argument("segmentation does not match generation");
  }
  std::vector<MaskedVariant> variants;
  variants.reserve(seg.phrase_count());
  for (std::size_t k = 0; k < seg.phrase_count(); ++k) {
    const Span& masked = seg.spans()[k];
    std::string out;
    for (std::size_t i = 0; i < gen.tokens.size(); ++i) {
      if (i < masked.start || i >= masked.end) out += gen.tokens[i].text;
    }
    variants.push_back({k, text::trim(out)});
  }
  return variants;
}

std::vector<double> score_variants(std::string_view question,
                                   const Generation& original,
                                   const std::vector<MaskedVariant>& variants,
                                   const ImportanceProvider& provider) {
  std::vector<double> out;
  out.reserve(variants.size());
  for (const auto& v : variants) {
    const double o = provider.score(question, original.text, v.masked_text);
    if (!(o >= 0.0 && o <= 1.0)) {
      throw ValidationError("importance provider " + provider.describe() +
                            " returned " + std::to_string(o) +
                            " outside [0, 1]");
    }
    out.push_back(o);
  }
  return out;
}

std::vector<double> normalize_importance(std::span<const double> prelim,
                                         double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("softmax temperature must be positive");
  }
  if (prelim.empty()) throw std::invalid_argument("softmax of an empty list");
  double hi = prelim[0];
  for (double p : prelim) {
    if (!std::isfinite(p)) throw std::invalid_argument("non-finite prelim");
    hi = std::max(hi, p);
  }
  // tau = 0.01 puts exponents near +-100; subtracting the max keeps every
  // exp() argument <= 0.
  std::vector<double> coeff(prelim.size());
  double total = 0.0;
  for (std::size_t k = 0; k < prelim.size(); ++k) {
    coeff[k] = std::exp((prelim[k] - hi) / tau);
    total += coeff[k];
  }
  for (double& c : coeff) c /= total;
  return coeff;
}

ImportanceProfile distribute_to_tokens(std::span<const double> coeff,
                                       const PhraseSegmentation& seg,
                                       const Generation& gen,
                                       Strategy strategy) {
  if (coeff.size() != seg.phrase_count()) {
    throw std::invalid_argument("got " + std::to_string(coeff.size()) +
                                " coefficients for " +
                                std::to_string(seg.phrase_count()) +
                                " phrases");
  }
  if (seg.token_count() != gen.tokens.size()) {
    throw std::invalid_argument("segmentation does not match generation");
  }
  std::vector<double> u(gen.tokens.size(), 0.0);
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    const Span& s = seg.spans()[k];
    switch (strategy) {
      case Strategy::Equal: {
        const double share = coeff[k] / static_cast<double>(s.size());
        for (std::size_t i = s.start; i < s.end; ++i) u[i] = share;
        break;
      }
      case Strategy::MaxUncertain:
      case Strategy::MinUncertain: {
        std::size_t pick = s.start;
        for (std::size_t i = s.start + 1; i < s.end; ++i) {
          const double lp = gen.tokens[i].logprob;
          const double best = gen.tokens[pick].logprob;
          if (strategy == Strategy::MaxUncertain ? lp < best : lp > best) {
            pick = i;
          }
        }
        u[pick] = coeff[k];
        break;
      }
    }
  }
  return ImportanceProfile(std::move(u));
}

ImportanceProfile compute_importance(std::string_view question,
                                     const Generation& gen,
                                     const ImportanceProvider& provider,
                                     const ImportanceOptions& options) {
  if (gen.tokens.empty()) {
    throw std::invalid_argument("importance of an empty generation");
  }
  const PhraseSegmentation seg = segment(gen, question, options.segmentation);
  const auto variants = build_masked_variants(gen, seg);
  std::vector<double> prelim = score_variants(question, gen, variants, provider);
  for (double& o : prelim) o = 1.0 - o;
  const auto coeff = normalize_importance(prelim, options.tau);
  return distribute_to_tokens(coeff, seg, gen, options.strategy);
}

ImportanceProfile compute_importance(const GenerationRecord& record,
                                     const ImportanceProvider& provider,
                                     const ImportanceOptions& options) {
  return compute_importance(record.question, record.answer, provider, options);
}

}  // namespace mars
