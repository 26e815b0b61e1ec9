#pragma once

// AUROC of UE scores against correctness labels, and the method x scoring
// report built on it.
//
// The positive class is an incorrect answer: a good UE method ranks
// incorrect answers above correct ones.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "mars/batch.hpp"
#include "mars/config.hpp"
#include "mars/types.hpp"

namespace mars {

/// P(U_incorrect > U_correct) + 0.5 * P(U_incorrect = U_correct), computed
/// from midranks in O(n log n). Throws DegenerateLabels when either class is
/// empty and std::invalid_argument on length mismatch or non-finite values.
double auroc(std::span<const double> ue_values,
             const std::vector<bool>& incorrect);

struct ReportCell {
  Method method = Method::Confidence;
  Scoring scoring = Scoring::LengthNormalized;
  std::optional<double> auroc;
  std::size_t n = 0;            // records contributing
  std::size_t n_incorrect = 0;
  std::string error;            // set when auroc is empty

  bool operator==(const ReportCell&) const = default;
};

struct UEReport {
  RunConfig config;
  std::size_t record_count = 0;
  std::size_t labeled_count = 0;
  std::size_t min_samples = 0;
  std::size_t max_samples = 0;
  std::vector<ReportCell> cells;       // method-major, scoring-minor
  std::vector<SkippedMethod> skipped;  // sorted by record id

  const ReportCell* find(Method m, Scoring s) const;
};

/// Scores every labeled record (in parallel, config.jobs threads) and
/// computes one AUROC per requested method x scoring. Unlabeled records are
/// skipped with reason "unlabeled"; records without samples are skipped for
/// sampling-based methods only. A cell with no usable records or a single
/// label class carries an error instead of failing the whole run.
UEReport evaluate(std::span<const GenerationRecord> dataset,
                  const RunConfig& config, const Providers& providers);

nlohmann::ordered_json to_json(const UEReport& report);
/// Aligned table, AUROC in points (x100).
std::string to_table(const UEReport& report);

// ---------------------------------------------------------------------------
// Ablation
// ---------------------------------------------------------------------------

struct AblationRow {
  Segmentation segmentation = Segmentation::Phrase;
  Strategy strategy = Strategy::Equal;
  std::vector<ReportCell> cells;  // MARS scoring, one per method
};

struct AblationGrid {
  RunConfig config;
  std::vector<ReportCell> baseline;  // length-normalized, one per method
  std::vector<AblationRow> rows;     // {phrase, token} x {equal, max, min}
  std::vector<SkippedMethod> skipped;
};

AblationGrid ablate(std::span<const GenerationRecord> dataset,
                    const RunConfig& config, const Providers& providers);

nlohmann::ordered_json to_json(const AblationGrid& grid);
std::string to_table(const AblationGrid& grid);

}  // namespace mars
