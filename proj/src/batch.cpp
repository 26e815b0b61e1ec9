#include "mars/batch.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#include "mars/scoring.hpp"

namespace mars {

namespace {

int checked_jobs(int jobs) {
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  return jobs;
}

ScoredRecord score_one(const GenerationRecord& rec, const UEOptions& options,
                       const Providers& providers, MissingSamples missing) {
  ScoredRecord out;
  out.id = rec.id;
  if (missing == MissingSamples::Skip && rec.samples.empty()) {
    UEOptions reduced = options;
    reduced.methods.clear();
    auto methods = options.methods;
    std::sort(methods.begin(), methods.end());
    methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
    auto scorings = options.scorings;
    std::sort(scorings.begin(), scorings.end());
    scorings.erase(std::unique(scorings.begin(), scorings.end()), scorings.end());
    for (Method m : methods) {
      if (!needs_samples(m)) {
        reduced.methods.push_back(m);
        continue;
      }
      for (Scoring s : scorings) {
        out.skipped.push_back({rec.id, method_key(m, s), "insufficient samples"});
      }
    }
    if (!reduced.methods.empty()) {
      out.results = ue_for_record(rec, reduced, providers);
    }
    return out;
  }
  out.results = ue_for_record(rec, options, providers);
  return out;
}

}  // namespace

std::vector<ScoredRecord> score_records_serial(
    std::span<const GenerationRecord> records, const UEOptions& options,
    const Providers& providers, MissingSamples missing) {
  std::vector<ScoredRecord> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    out.push_back(score_one(rec, options, providers, missing));
  }
  return out;
}

std::vector<ScoredRecord> score_records(std::span<const GenerationRecord> records,
                                        const UEOptions& options,
                                        const Providers& providers,
                                        MissingSamples missing, int jobs) {
  const auto n = static_cast<std::ptrdiff_t>(records.size());
  std::vector<ScoredRecord> out(records.size());
  std::vector<std::exception_ptr> errors(records.size());
  const int threads = checked_jobs(jobs);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = score_one(records[i], options, providers, missing);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<double> length_normalized_batch_serial(
    std::span<const Generation> gens) {
  std::vector<double> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(length_normalized_log_score(g));
  return out;
}

std::vector<double> length_normalized_batch(std::span<const Generation> gens,
                                            int jobs) {
  const auto n = static_cast<std::ptrdiff_t>(gens.size());
  for (const auto& g : gens) {
    if (g.tokens.empty()) {
      throw std::invalid_argument("length-normalized score of an empty sequence");
    }
  }
  std::vector<double> out(gens.size());
  const int threads = checked_jobs(jobs);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = length_normalized_log_score(gens[i]);
  }
  return out;
}

}  // namespace mars
