#include "mars/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "mars/batch.hpp"
#include "mars/config.hpp"
#include "mars/eval.hpp"
#include "mars/records.hpp"

namespace mars::cli {

namespace fs = std::filesystem;

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot move output into place at '" + path + "'");
  }
}

namespace {

struct Flags {
  std::string input;
  std::string config_path;
  std::string out_path;
  std::optional<double> tau;
  std::optional<std::string> strategy;
  std::optional<std::string> segmentation;
  std::optional<std::string> se_denominator;
  std::optional<std::string> importance;
  std::optional<std::string> equivalence;
  std::optional<std::string> methods;
  std::optional<std::string> scorings;
  std::optional<int> jobs;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

RunConfig build_config(const Flags& f) {
  RunConfig c = f.config_path.empty() ? RunConfig{}
                                      : load_config_file(f.config_path);
  if (f.tau) c.ue.importance.tau = *f.tau;
  if (f.strategy) c.ue.importance.strategy = parse_strategy(*f.strategy);
  if (f.segmentation) {
    c.ue.importance.segmentation = parse_segmentation(*f.segmentation);
  }
  if (f.se_denominator) {
    c.ue.se_denominator = parse_se_denominator(*f.se_denominator);
  }
  if (f.importance) c.importance = parse_importance_spec(*f.importance);
  if (f.equivalence) {
    const double th = c.equivalence.entail_threshold;
    c.equivalence = parse_equivalence_spec(*f.equivalence);
    c.equivalence.entail_threshold = th;
  }
  if (f.methods) {
    c.ue.methods.clear();
    for (const auto& m : split_list(*f.methods)) {
      c.ue.methods.push_back(parse_method(m));
    }
  }
  if (f.scorings) {
    c.ue.scorings.clear();
    for (const auto& s : split_list(*f.scorings)) {
      c.ue.scorings.push_back(parse_scoring(s));
    }
  }
  if (f.jobs) c.jobs = *f.jobs;
  validate(c);
  return c;
}

void add_run_options(CLI::App* sub, Flags& f) {
  sub->add_option("input", f.input, "Line-delimited record file")->required();
  sub->add_option("--config", f.config_path, "JSON run configuration");
  sub->add_option("--tau", f.tau, "Softmax temperature for importance");
  sub->add_option("--strategy", f.strategy,
                  "Phrase-to-token distribution: equal, max, min");
  sub->add_option("--segmentation", f.segmentation, "phrase or token");
  sub->add_option("--se-denominator", f.se_denominator, "clusters or samples");
  sub->add_option("--importance", f.importance,
                  "heuristic, none, fixture:PATH or remote:URL");
  sub->add_option("--equivalence", f.equivalence,
                  "match, none, fixture:PATH or remote:URL");
  sub->add_option("--methods", f.methods,
                  "Comma list of confidence, entropy, semantic_entropy");
  sub->add_option("--scorings", f.scorings,
                  "Comma list of length_normalized, mars");
  sub->add_option("--jobs", f.jobs, "Worker threads");
  sub->add_option("--out", f.out_path, "Output path");
}

std::vector<GenerationRecord> sorted_by_id(std::vector<GenerationRecord> recs) {
  std::stable_sort(recs.begin(), recs.end(),
                   [](const auto& a, const auto& b) { return a.id < b.id; });
  return recs;
}

std::string render_scores(const std::vector<ScoredRecord>& scored) {
  std::string out;
  for (const auto& rec : scored) {
    for (const auto& r : rec.results) {
      nlohmann::ordered_json j;
      j["id"] = rec.id;
      j["method"] = to_string(r.method);
      j["scoring"] = to_string(r.scoring);
      j["value"] = r.value;
      out += j.dump();
      out += '\n';
    }
  }
  return out;
}

void emit(const std::string& out_path, const std::string& content,
          std::ostream& out) {
  if (out_path.empty()) {
    out << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

int cmd_score(const Flags& f, std::ostream& out) {
  const RunConfig config = build_config(f);
  const auto records = sorted_by_id(ingest_records_file(f.input));
  const ProviderSet providers(config);
  const auto scored = score_records(records, config.ue, providers.view(),
                                    MissingSamples::Fail, config.jobs);
  emit(f.out_path, render_scores(scored), out);
  return kOk;
}

int cmd_evaluate(const Flags& f, std::ostream& out) {
  const RunConfig config = build_config(f);
  const auto records = ingest_records_file(f.input);
  const ProviderSet providers(config);
  const UEReport report = evaluate(records, config, providers.view());
  const std::string table = to_table(report);
  if (!f.out_path.empty()) {
    write_file_atomic(f.out_path, to_json(report).dump(2) + "\n");
    write_file_atomic(f.out_path + ".txt", table);
  }
  out << table;
  return kOk;
}

int cmd_ablate(const Flags& f, std::ostream& out) {
  const RunConfig config = build_config(f);
  const auto records = ingest_records_file(f.input);
  const ProviderSet providers(config);
  const AblationGrid grid = ablate(records, config, providers.view());
  const std::string table = to_table(grid);
  if (!f.out_path.empty()) {
    write_file_atomic(f.out_path, to_json(grid).dump(2) + "\n");
    write_file_atomic(f.out_path + ".txt", table);
  }
  out << table;
  return kOk;
}

int cmd_validate(const std::string& input, std::ostream& out) {
  const auto records = ingest_records_file(input);
  std::size_t labeled = 0;
  std::size_t with_samples = 0;
  for (const auto& r : records) {
    labeled += r.correctness.has_value();
    with_samples += !r.samples.empty();
  }
  out << "ok: " << records.size() << " records (" << labeled << " labeled, "
      << with_samples << " with samples)\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Uncertainty scoring for generated answers (MARS and baselines)"};
  app.require_subcommand(1);

  Flags score_f, eval_f, ablate_f;
  std::string validate_input;
  auto* score = app.add_subcommand("score", "Write per-record UE values");
  add_run_options(score, score_f);
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "AUROC of every method against labels");
  add_run_options(evaluate_cmd, eval_f);
  auto* ablate_cmd = app.add_subcommand(
      "ablate", "AUROC grid over segmentation x distribution strategy");
  add_run_options(ablate_cmd, ablate_f);
  auto* validate_cmd = app.add_subcommand("validate", "Schema check only");
  validate_cmd->add_option("input", validate_input, "Record file")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (score->parsed()) return cmd_score(score_f, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(eval_f, out);
    if (ablate_cmd->parsed()) return cmd_ablate(ablate_f, out);
    return cmd_validate(validate_input, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRunError;
  }
}

}  // namespace mars::cli
