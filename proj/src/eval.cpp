#include "mars/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mars {

double auroc(std::span<const double> ue_values,
             const std::vector<bool>& incorrect) {
  if (ue_values.size() != incorrect.size()) {
    throw std::invalid_argument("auroc: " + std::to_string(ue_values.size()) +
                                " values for " +
                                std::to_string(incorrect.size()) + " labels");
  }
  const std::size_t n = ue_values.size();
  std::int64_t n_pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(ue_values[i])) {
      throw std::invalid_argument("auroc: non-finite UE value");
    }
    n_pos += incorrect[i] ? 1 : 0;
  }
  const std::int64_t n_neg = static_cast<std::int64_t>(n) - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw DegenerateLabels("auroc needs both correct and incorrect answers");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ue_values[a] < ue_values[b];
  });

  // Twice the midrank keeps every rank an integer: a tie block occupying
  // sorted positions [i, j) has 1-based midrank (i + 1 + j) / 2.
  std::int64_t pos_rank_x2 = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && ue_values[order[j]] == ue_values[order[i]]) ++j;
    const auto rank_x2 = static_cast<std::int64_t>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (incorrect[order[k]]) pos_rank_x2 += rank_x2;
    }
    i = j;
  }
  const std::int64_t u_x2 = pos_rank_x2 - n_pos * (n_pos + 1);
  return static_cast<double>(u_x2) /
         (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

const ReportCell* UEReport::find(Method m, Scoring s) const {
  for (const auto& c : cells) {
    if (c.method == m && c.scoring == s) return &c;
  }
  return nullptr;
}

namespace {

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

ReportCell make_cell(Method m, Scoring s,
                     const std::vector<ScoredRecord>& scored,
                     const std::vector<bool>& incorrect_by_record) {
  ReportCell cell{m, s, std::nullopt, 0, 0, {}};
  std::vector<double> values;
  std::vector<bool> labels;
  for (std::size_t r = 0; r < scored.size(); ++r) {
    for (const auto& res : scored[r].results) {
      if (res.method == m && res.scoring == s) {
        values.push_back(res.value);
        labels.push_back(incorrect_by_record[r]);
      }
    }
  }
  cell.n = values.size();
  cell.n_incorrect =
      static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
  if (values.empty()) {
    cell.error = "no usable records";
    return cell;
  }
  try {
    cell.auroc = auroc(values, labels);
  } catch (const DegenerateLabels&) {
    cell.error = cell.n_incorrect == 0 ? "degenerate labels: no incorrect answers"
                                       : "degenerate labels: no correct answers";
  }
  return cell;
}

std::string points(const ReportCell& c) {
  if (!c.auroc) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *c.auroc * 100.0);
  return buf;
}

nlohmann::ordered_json cell_json(const ReportCell& c) {
  nlohmann::ordered_json j;
  j["method"] = to_string(c.method);
  j["scoring"] = to_string(c.scoring);
  if (c.auroc) {
    j["auroc"] = *c.auroc;
  } else {
    j["auroc"] = nullptr;
  }
  j["n"] = c.n;
  j["n_incorrect"] = c.n_incorrect;
  if (!c.error.empty()) j["error"] = c.error;
  return j;
}

nlohmann::ordered_json skipped_json(const std::vector<SkippedMethod>& skipped) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : skipped) {
    nlohmann::ordered_json j;
    j["id"] = s.record_id;
    j["method"] = s.method;
    j["reason"] = s.reason;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string config_line(const RunConfig& c) {
  std::ostringstream os;
  char tau[32];
  std::snprintf(tau, sizeof tau, "%g", c.ue.importance.tau);
  os << "tau=" << tau << " strategy=" << to_string(c.ue.importance.strategy)
     << " segmentation=" << to_string(c.ue.importance.segmentation)
     << " importance=" << to_string(c.importance)
     << " equivalence=" << to_string(c.equivalence)
     << " se_denominator=" << to_string(c.ue.se_denominator);
  return os.str();
}

// Thread count never changes results, so it stays out of report echoes.
nlohmann::ordered_json config_echo(const RunConfig& c) {
  auto j = to_json(c);
  j.erase("jobs");
  return j;
}

}  // namespace

UEReport evaluate(std::span<const GenerationRecord> dataset,
                  const RunConfig& config, const Providers& providers) {
  UEReport report;
  report.config = config;
  report.record_count = dataset.size();

  std::vector<const GenerationRecord*> sorted;
  sorted.reserve(dataset.size());
  for (const auto& r : dataset) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto* a, const auto* b) { return a->id < b->id; });

  std::vector<GenerationRecord> labeled;
  std::vector<bool> incorrect;
  std::vector<SkippedMethod> unlabeled;
  bool first = true;
  for (const auto* r : sorted) {
    const std::size_t b = r->samples.size();
    report.min_samples = first ? b : std::min(report.min_samples, b);
    report.max_samples = first ? b : std::max(report.max_samples, b);
    first = false;
    if (!r->correctness) {
      unlabeled.push_back({r->id, "*", "unlabeled"});
      continue;
    }
    labeled.push_back(*r);
    incorrect.push_back(!*r->correctness);
  }
  report.labeled_count = labeled.size();

  const auto scored = score_records(labeled, config.ue, providers,
                                    MissingSamples::Skip, config.jobs);

  for (Method m : sorted_unique(config.ue.methods)) {
    for (Scoring s : sorted_unique(config.ue.scorings)) {
      report.cells.push_back(make_cell(m, s, scored, incorrect));
    }
  }

  // Merge the two id-sorted skip lists.
  std::size_t ui = 0;
  for (const auto& rec : scored) {
    while (ui < unlabeled.size() && unlabeled[ui].record_id < rec.id) {
      report.skipped.push_back(unlabeled[ui++]);
    }
    for (const auto& s : rec.skipped) report.skipped.push_back(s);
  }
  while (ui < unlabeled.size()) report.skipped.push_back(unlabeled[ui++]);
  return report;
}

nlohmann::ordered_json to_json(const UEReport& report) {
  nlohmann::ordered_json j;
  j["config"] = config_echo(report.config);
  j["record_count"] = report.record_count;
  j["labeled_count"] = report.labeled_count;
  j["samples_per_record"] = {{"min", report.min_samples},
                             {"max", report.max_samples}};
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : report.cells) cells.push_back(cell_json(c));
  j["results"] = std::move(cells);
  j["skipped"] = skipped_json(report.skipped);
  return j;
}

std::string to_table(const UEReport& report) {
  const auto scorings = sorted_unique(report.config.ue.scorings);
  std::ostringstream os;
  os << "AUROC (points)\n";
  os << "records: " << report.record_count
     << " (labeled " << report.labeled_count << ", skipped entries "
     << report.skipped.size() << ")\n";
  os << config_line(report.config) << "\n\n";

  os << pad("method", 20);
  for (Scoring s : scorings) os << pad(std::string(to_string(s)), 20);
  os << '\n';
  for (Method m : sorted_unique(report.config.ue.methods)) {
    os << pad(std::string(to_string(m)), 20);
    for (Scoring s : scorings) {
      const ReportCell* c = report.find(m, s);
      os << pad(c ? points(*c) : "n/a", 20);
    }
    os << '\n';
  }
  bool header = false;
  for (const auto& c : report.cells) {
    if (c.error.empty()) continue;
    if (!header) os << "\nerrors:\n";
    header = true;
    os << "  " << method_key(c.method, c.scoring) << ": " << c.error << '\n';
  }
  return os.str();
}

AblationGrid ablate(std::span<const GenerationRecord> dataset,
                    const RunConfig& config, const Providers& providers) {
  AblationGrid grid;
  grid.config = config;

  RunConfig base = config;
  base.ue.scorings = {Scoring::LengthNormalized};
  const UEReport baseline = evaluate(dataset, base, providers);
  grid.baseline = baseline.cells;
  grid.skipped = baseline.skipped;

  for (Segmentation seg : {Segmentation::Phrase, Segmentation::Token}) {
    for (Strategy strat :
         {Strategy::Equal, Strategy::MaxUncertain, Strategy::MinUncertain}) {
      RunConfig c = config;
      c.ue.scorings = {Scoring::Mars};
      c.ue.importance.segmentation = seg;
      c.ue.importance.strategy = strat;
      grid.rows.push_back({seg, strat, evaluate(dataset, c, providers).cells});
    }
  }
  return grid;
}

nlohmann::ordered_json to_json(const AblationGrid& grid) {
  nlohmann::ordered_json j;
  j["config"] = config_echo(grid.config);
  auto base = nlohmann::ordered_json::array();
  for (const auto& c : grid.baseline) base.push_back(cell_json(c));
  j["baseline"] = std::move(base);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : grid.rows) {
    nlohmann::ordered_json row;
    row["segmentation"] = to_string(r.segmentation);
    row["strategy"] = to_string(r.strategy);
    auto cells = nlohmann::ordered_json::array();
    for (const auto& c : r.cells) cells.push_back(cell_json(c));
    row["results"] = std::move(cells);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["skipped"] = skipped_json(grid.skipped);
  return j;
}

std::string to_table(const AblationGrid& grid) {
  const auto methods = sorted_unique(grid.config.ue.methods);
  std::ostringstream os;
  os << "Ablation: AUROC (points), MARS scoring unless noted\n";
  os << config_line(grid.config) << "\n\n";
  os << pad("configuration", 24);
  for (Method m : methods) os << pad(std::string(to_string(m)), 20);
  os << '\n';

  auto emit = [&](const std::string& label, const std::vector<ReportCell>& cells) {
    os << pad(label, 24);
    for (Method m : methods) {
      auto it = std::find_if(cells.begin(), cells.end(),
                             [&](const ReportCell& c) { return c.method == m; });
      os << pad(it == cells.end() ? "n/a" : points(*it), 20);
    }
    os << '\n';
  };
  emit("length_normalized", grid.baseline);
  for (const auto& r : grid.rows) {
    emit(std::string(to_string(r.segmentation)) + "/" +
             std::string(to_string(r.strategy)),
         r.cells);
  }
  return os.str();
}

}  // namespace mars
