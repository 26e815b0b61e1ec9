#include "mars/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace mars {

namespace {

std::pair<std::string_view, std::string_view> split_kind(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) return {s, {}};
  return {s.substr(0, colon), s.substr(colon + 1)};
}

std::string sidecar_token() {
  const char* t = std::getenv(kSidecarTokenEnv);
  return t ? std::string(t) : std::string();
}

}  // namespace

ImportanceSpec parse_importance_spec(std::string_view s) {
  auto [kind, loc] = split_kind(s);
  using K = ImportanceSpec::Kind;
  if (kind == "none" && loc.empty()) return {K::None, {}};
  if (kind == "heuristic" && loc.empty()) return {K::Heuristic, {}};
  if (kind == "fixture" && !loc.empty()) return {K::Fixture, std::string(loc)};
  if (kind == "remote" && !loc.empty()) return {K::Remote, std::string(loc)};
  throw ConfigError("bad importance provider '" + std::string(s) +
                    "' (expected heuristic, none, fixture:PATH or remote:URL)");
}

EquivalenceSpec parse_equivalence_spec(std::string_view s) {
  auto [kind, loc] = split_kind(s);
  using K = EquivalenceSpec::Kind;
  EquivalenceSpec spec;
  if (kind == "none" && loc.empty()) {
    spec.kind = K::None;
  } else if (kind == "match" && loc.empty()) {
    spec.kind = K::Match;
  } else if (kind == "fixture" && !loc.empty()) {
    spec.kind = K::Fixture;
    spec.location = loc;
  } else if (kind == "remote" && !loc.empty()) {
    spec.kind = K::Remote;
    spec.location = loc;
  } else {
    throw ConfigError("bad equivalence provider '" + std::string(s) +
                      "' (expected match, none, fixture:PATH or remote:URL)");
  }
  return spec;
}

std::string to_string(const ImportanceSpec& s) {
  using K = ImportanceSpec::Kind;
  switch (s.kind) {
    case K::None: return "none";
    case K::Heuristic: return "heuristic";
    case K::Fixture: return "fixture:" + s.location;
    case K::Remote: return "remote:" + s.location;
  }
  return "?";
}

std::string to_string(const EquivalenceSpec& s) {
  using K = EquivalenceSpec::Kind;
  switch (s.kind) {
    case K::None: return "none";
    case K::Match: return "match";
    case K::Fixture: return "fixture:" + s.location;
    case K::Remote: return "remote:" + s.location;
  }
  return "?";
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  auto methods = nlohmann::ordered_json::array();
  for (Method m : c.ue.methods) methods.push_back(to_string(m));
  auto scorings = nlohmann::ordered_json::array();
  for (Scoring s : c.ue.scorings) scorings.push_back(to_string(s));
  j["methods"] = std::move(methods);
  j["scorings"] = std::move(scorings);
  j["tau"] = c.ue.importance.tau;
  j["strategy"] = to_string(c.ue.importance.strategy);
  j["segmentation"] = to_string(c.ue.importance.segmentation);
  j["se_denominator"] = to_string(c.ue.se_denominator);
  j["importance"] = to_string(c.importance);
  j["equivalence"] = to_string(c.equivalence);
  j["entail_threshold"] = c.equivalence.entail_threshold;
  j["sampling"] = {{"samples", c.sampling.samples},
                   {"temperature", c.sampling.temperature}};
  j["jobs"] = c.jobs;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    if (j.contains("methods")) {
      c.ue.methods.clear();
      for (const auto& m : j.at("methods")) {
        c.ue.methods.push_back(parse_method(m.get<std::string>()));
      }
    }
    if (j.contains("scorings")) {
      c.ue.scorings.clear();
      for (const auto& s : j.at("scorings")) {
        c.ue.scorings.push_back(parse_scoring(s.get<std::string>()));
      }
    }
    if (j.contains("tau")) c.ue.importance.tau = j.at("tau").get<double>();
    if (j.contains("strategy")) {
      c.ue.importance.strategy =
          parse_strategy(j.at("strategy").get<std::string>());
    }
    if (j.contains("segmentation")) {
      c.ue.importance.segmentation =
          parse_segmentation(j.at("segmentation").get<std::string>());
    }
    if (j.contains("se_denominator")) {
      c.ue.se_denominator =
          parse_se_denominator(j.at("se_denominator").get<std::string>());
    }
    if (j.contains("importance")) {
      c.importance = parse_importance_spec(j.at("importance").get<std::string>());
    }
    if (j.contains("equivalence")) {
      c.equivalence =
          parse_equivalence_spec(j.at("equivalence").get<std::string>());
    }
    if (j.contains("entail_threshold")) {
      c.equivalence.entail_threshold = j.at("entail_threshold").get<double>();
    }
    if (j.contains("sampling")) {
      const auto& s = j.at("sampling");
      if (s.contains("samples")) c.sampling.samples = s.at("samples").get<int>();
      if (s.contains("temperature")) {
        c.sampling.temperature = s.at("temperature").get<double>();
      }
    }
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  try {
    return config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

void validate(const RunConfig& c) {
  if (!(c.ue.importance.tau > 0.0) || !std::isfinite(c.ue.importance.tau)) {
    throw ConfigError("tau must be a positive finite number");
  }
  if (c.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (c.ue.methods.empty()) throw ConfigError("no methods selected");
  if (c.ue.scorings.empty()) throw ConfigError("no scorings selected");
  for (Scoring s : c.ue.scorings) {
    if (s == Scoring::Mars && c.importance.kind == ImportanceSpec::Kind::None) {
      throw ConfigError("MARS scoring requires an importance provider");
    }
  }
  for (Method m : c.ue.methods) {
    if (m == Method::SemanticEntropy &&
        c.equivalence.kind == EquivalenceSpec::Kind::None) {
      throw ConfigError("semantic entropy requires an equivalence provider");
    }
  }
  const double th = c.equivalence.entail_threshold;
  if (!(th >= 0.0 && th <= 1.0)) {
    throw ConfigError("entail_threshold must lie in [0, 1]");
  }
}

ProviderSet::ProviderSet(const RunConfig& config) {
  using IK = ImportanceSpec::Kind;
  switch (config.importance.kind) {
    case IK::None: break;
    case IK::Heuristic:
      importance_ = std::make_unique<HeuristicImportanceProvider>();
      break;
    case IK::Fixture:
      importance_ = std::make_unique<FixtureImportanceProvider>(
          FixtureImportanceProvider::from_file(config.importance.location));
      break;
    case IK::Remote:
      importance_ = std::make_unique<RemoteImportanceProvider>(
          config.importance.location, sidecar_token());
      break;
  }
  using EK = EquivalenceSpec::Kind;
  switch (config.equivalence.kind) {
    case EK::None: break;
    case EK::Match:
      equivalence_ = std::make_unique<NormalizedMatchEquivalence>();
      break;
    case EK::Fixture:
      equivalence_ = std::make_unique<FixtureEquivalence>(
          FixtureEquivalence::from_file(config.equivalence.location));
      break;
    case EK::Remote:
      equivalence_ = std::make_unique<RemoteNliEquivalence>(
          config.equivalence.location, sidecar_token(),
          config.equivalence.entail_threshold);
      break;
  }
}

}  // namespace mars
