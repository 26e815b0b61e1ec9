#pragma once

// Run configuration: everything a scoring or evaluation run depends on.
// A run is reproducible from (input file, RunConfig) alone, and the config
// echoed into reports parses back to an equal RunConfig.

#include <memory>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mars/entropy.hpp"
#include "mars/importance.hpp"

namespace mars {

struct ImportanceSpec {
  enum class Kind { None, Heuristic, Fixture, Remote };
  Kind kind = Kind::Heuristic;
  std::string location;  // fixture path or base URL

  bool operator==(const ImportanceSpec&) const = default;
};

struct EquivalenceSpec {
  enum class Kind { None, Match, Fixture, Remote };
  Kind kind = Kind::Match;
  std::string location;
  double entail_threshold = kDefaultEntailThreshold;

  bool operator==(const EquivalenceSpec&) const = default;
};

/// Producer-side sampling settings, recorded for provenance only.
struct SamplingMeta {
  int samples = 5;
  double temperature = 0.5;

  bool operator==(const SamplingMeta&) const = default;
};

struct RunConfig {
  UEOptions ue;
  ImportanceSpec importance;
  EquivalenceSpec equivalence;
  SamplingMeta sampling;
  int jobs = 1;

  bool operator==(const RunConfig&) const = default;
};

/// "heuristic" | "none" | "fixture:PATH" | "remote:URL"
ImportanceSpec parse_importance_spec(std::string_view s);
/// "match" | "none" | "fixture:PATH" | "remote:URL"
EquivalenceSpec parse_equivalence_spec(std::string_view s);
std::string to_string(const ImportanceSpec& s);
std::string to_string(const EquivalenceSpec& s);

nlohmann::ordered_json to_json(const RunConfig& config);
/// Missing keys keep their defaults. Throws ConfigError on bad values.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

/// Throws ConfigError if the configuration cannot run: non-positive tau or
/// jobs, empty method/scoring sets, MARS without an importance provider,
/// semantic entropy without an equivalence provider.
void validate(const RunConfig& config);

/// Providers built from a RunConfig, owned for the duration of a run.
class ProviderSet {
 public:
  explicit ProviderSet(const RunConfig& config);
  Providers view() const noexcept {
    return {importance_.get(), equivalence_.get()};
  }

 private:
  std::unique_ptr<ImportanceProvider> importance_;
  std::unique_ptr<EquivalenceProvider> equivalence_;
};

}  // namespace mars
