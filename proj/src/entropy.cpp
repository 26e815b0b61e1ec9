#include "mars/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mars/scoring.hpp"

namespace mars {

double mc_entropy(std::span<const double> log_scores) {
  if (log_scores.empty()) throw std::invalid_argument("entropy over no samples");
  double sum = 0.0;
  for (double s : log_scores) sum += s;
  return -sum / static_cast<double>(log_scores.size());
}

double cluster_log_score(std::span<const double> member_log_scores) {
  if (member_log_scores.empty()) {
    throw std::invalid_argument("score of an empty cluster");
  }
  const double hi =
      *std::max_element(member_log_scores.begin(), member_log_scores.end());
  if (member_log_scores.size() == 1) return hi;
  double acc = 0.0;
  for (double s : member_log_scores) acc += std::exp(s - hi);
  return hi + std::log(acc);
}

std::vector<MeaningCluster> cluster_texts(std::string_view question,
                                          const std::vector<std::string>& texts,
                                          const EquivalenceProvider& provider) {
  if (texts.empty()) throw std::invalid_argument("clustering of no samples");
  std::vector<MeaningCluster> clusters;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    bool placed = false;
    for (auto& c : clusters) {
      const std::size_t rep = c.member_indices.front();
      if (provider.equivalent(question, texts[rep], texts[i])) {
        c.member_indices.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({{i}, 0.0});
  }
  return clusters;
}

std::vector<MeaningCluster> cluster_samples(
    std::string_view question, const std::vector<Generation>& samples,
    const EquivalenceProvider& provider) {
  std::vector<std::string> texts;
  texts.reserve(samples.size());
  for (const auto& s : samples) texts.push_back(s.text);
  return cluster_texts(question, texts, provider);
}

std::vector<MeaningCluster> score_clusters(
    std::vector<MeaningCluster> clusters,
    std::span<const double> sample_log_scores) {
  std::vector<double> members;
  for (auto& c : clusters) {
    members.clear();
    for (std::size_t idx : c.member_indices) {
      if (idx >= sample_log_scores.size()) {
        throw std::invalid_argument("cluster member index out of range");
      }
      members.push_back(sample_log_scores[idx]);
    }
    c.log_score = cluster_log_score(members);
  }
  return clusters;
}

double semantic_entropy(const std::vector<MeaningCluster>& clusters,
                        SeDenominator denominator) {
  if (clusters.empty()) {
    throw std::invalid_argument("semantic entropy over no clusters");
  }
  if (denominator == SeDenominator::Clusters) {
    double sum = 0.0;
    for (const auto& c : clusters) sum += c.log_score;
    return -sum / static_cast<double>(clusters.size());
  }
  // Every sample contributes the log score of the cluster it belongs to,
  // summed in sample order.
  std::size_t total = 0;
  for (const auto& c : clusters) total += c.member_indices.size();
  std::vector<double> per_sample(total, 0.0);
  for (const auto& c : clusters) {
    for (std::size_t idx : c.member_indices) {
      if (idx >= total) throw std::invalid_argument("cluster index out of range");
      per_sample[idx] = c.log_score;
    }
  }
  return mc_entropy(per_sample);
}

bool needs_samples(Method m) noexcept { return m != Method::Confidence; }

namespace {

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double log_score_for(std::string_view question, const Generation& gen,
                     Scoring scoring, const UEOptions& options,
                     const Providers& providers) {
  if (scoring == Scoring::LengthNormalized) {
    return length_normalized_log_score(gen);
  }
  const ImportanceProfile u = compute_importance(
      question, gen, *providers.importance, options.importance);
  return mars_log_score(gen, compute_weights(u, gen.tokens.size()));
}

}  // namespace

std::vector<UEResult> ue_for_record(const GenerationRecord& record,
                                    const UEOptions& options,
                                    const Providers& providers) {
  const auto methods = sorted_unique(options.methods);
  const auto scorings = sorted_unique(options.scorings);

  bool want_samples = false;
  bool want_clusters = false;
  for (Method m : methods) {
    want_samples = want_samples || needs_samples(m);
    want_clusters = want_clusters || m == Method::SemanticEntropy;
  }
  if (want_samples && record.samples.empty()) {
    throw InsufficientSamples(record.id);
  }
  if (std::count(scorings.begin(), scorings.end(), Scoring::Mars) &&
      providers.importance == nullptr) {
    throw ConfigError("MARS scoring requires an importance provider");
  }
  if (want_clusters && providers.equivalence == nullptr) {
    throw ConfigError("semantic entropy requires an equivalence provider");
  }

  std::vector<MeaningCluster> clusters;
  if (want_clusters) {
    clusters = cluster_samples(record.question, record.samples,
                               *providers.equivalence);
  }

  std::vector<std::vector<double>> sample_scores(scorings.size());
  if (want_samples) {
    for (std::size_t si = 0; si < scorings.size(); ++si) {
      for (const auto& s : record.samples) {
        sample_scores[si].push_back(log_score_for(record.question, s,
                                                  scorings[si], options,
                                                  providers));
      }
    }
  }

  std::vector<UEResult> out;
  for (Method m : methods) {
    for (std::size_t si = 0; si < scorings.size(); ++si) {
      const Scoring sc = scorings[si];
      UEResult r{m, sc, 0.0};
      switch (m) {
        case Method::Confidence:
          r = confidence_ue(log_score_for(record.question, record.answer, sc,
                                          options, providers),
                            sc);
          break;
        case Method::Entropy:
          r.value = mc_entropy(sample_scores[si]);
          break;
        case Method::SemanticEntropy:
          r.value = semantic_entropy(score_clusters(clusters, sample_scores[si]),
                                     options.se_denominator);
          break;
      }
      if (!std::isfinite(r.value)) {
        throw ValidationError("record '" + record.id + "': non-finite " +
                              method_key(m, sc) + " value");
      }
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace mars
