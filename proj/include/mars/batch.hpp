#pragma once

// Dataset-level scoring kernels.
//
// score_records() fans records out over an OpenMP team; results are written
// into per-record slots, so output order and bytes never depend on the
// thread count. score_records_serial() is the single-threaded reference the
// tests and the benchmark compare it against.

#include <span>
#include <string>
#include <vector>

#include "mars/entropy.hpp"
#include "mars/types.hpp"

namespace mars {

enum class MissingSamples {
  Fail,  // throw InsufficientSamples
  Skip,  // drop sampling-based methods for that record and report them
};

struct SkippedMethod {
  std::string record_id;
  std::string method;  // method_key(), or "*" for the whole record
  std::string reason;

  bool operator==(const SkippedMethod&) const = default;
};

struct ScoredRecord {
  std::string id;
  std::vector<UEResult> results;
  std::vector<SkippedMethod> skipped;

  bool operator==(const ScoredRecord&) const = default;
};

/// Parallel over records with at most `jobs` threads. When several records
/// fail, the error of the lowest-index record is rethrown.
std::vector<ScoredRecord> score_records(std::span<const GenerationRecord> records,
                                        const UEOptions& options,
                                        const Providers& providers,
                                        MissingSamples missing, int jobs);

std::vector<ScoredRecord> score_records_serial(
    std::span<const GenerationRecord> records, const UEOptions& options,
    const Providers& providers, MissingSamples missing);

/// Length-normalized log scores of many generations.
std::vector<double> length_normalized_batch(std::span<const Generation> gens,
                                            int jobs);
std::vector<double> length_normalized_batch_serial(
    std::span<const Generation> gens);

}  // namespace mars
