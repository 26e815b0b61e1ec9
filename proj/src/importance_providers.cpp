#include <cmath>
#include <fstream>
#include <set>

#include "http_json.hpp"
#include "json.hpp"
#include "mars/importance.hpp"
#include "mars/text.hpp"

namespace mars {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

// --- Fixture ----------------------------------------------------------------

FixtureImportanceProvider::FixtureImportanceProvider(
    std::unordered_map<std::string, double> scores,
    std::optional<double> fallback)
    : scores_(std::move(scores)), fallback_(fallback) {
  for (const auto& [key, o] : scores_) {
    if (!in_unit_interval(o)) {
      throw ValidationError("fixture score for '" + key + "' outside [0, 1]");
    }
  }
  if (fallback_ && !in_unit_interval(*fallback_)) {
    throw ValidationError("fixture default score outside [0, 1]");
  }
}

FixtureImportanceProvider FixtureImportanceProvider::from_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open importance fixture '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("importance fixture '" + path + "': " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("importance fixture '" + path + "' must be an object");
  }
  std::unordered_map<std::string, double> scores;
  std::optional<double> fallback;
  try {
    if (auto it = doc.find("scores"); it != doc.end()) {
      for (const auto& [key, v] : it->items()) scores[key] = v.get<double>();
    }
    if (auto it = doc.find("default"); it != doc.end() && !it->is_null()) {
      fallback = it->get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("importance fixture '" + path + "': " + e.what());
  }
  FixtureImportanceProvider p(std::move(scores), fallback);
  p.source_ = path;
  return p;
}

double FixtureImportanceProvider::score(std::string_view /*question*/,
                                        std::string_view /*reference*/,
                                        std::string_view candidate) const {
  if (auto it = scores_.find(std::string(candidate)); it != scores_.end()) {
    return it->second;
  }
  if (fallback_) return *fallback_;
  throw ValidationError("importance fixture has no entry for '" +
                        std::string(candidate) + "'");
}

std::string FixtureImportanceProvider::describe() const {
  return "fixture:" + source_;
}

// --- Heuristic --------------------------------------------------------------

double HeuristicImportanceProvider::score(std::string_view question,
                                          std::string_view reference,
                                          std::string_view candidate) const {
  const auto q_words = text::words(question);
  const std::set<std::string> in_question(q_words.begin(), q_words.end());

  std::set<std::string> salient;
  for (auto& w : text::words(reference)) {
    if (!text::is_stopword(w) && !in_question.count(w)) salient.insert(w);
  }
  if (salient.empty()) return 1.0;

  const auto c_words = text::words(candidate);
  const std::set<std::string> kept(c_words.begin(), c_words.end());
  std::size_t survived = 0;
  for (const auto& w : salient) survived += kept.count(w);
  return static_cast<double>(survived) / static_cast<double>(salient.size());
}

// --- Remote -----------------------------------------------------------------

RemoteImportanceProvider::RemoteImportanceProvider(std::string base_url,
                                                   std::string bearer_token,
                                                   int retries,
                                                   double timeout_s)
    : base_url_(std::move(base_url)),
      token_(std::move(bearer_token)),
      retries_(retries),
      timeout_s_(timeout_s) {}

double RemoteImportanceProvider::score(std::string_view question,
                                       std::string_view reference,
                                       std::string_view candidate) const {
  nlohmann::json body;
  body["question"] = question;
  body["reference"] = reference;
  body["candidate"] = candidate;
  const auto res = detail::post_json(base_url_, "/v1/bem", body, token_,
                                     retries_, timeout_s_);
  auto it = res.find("score");
  if (it == res.end() || !it->is_number()) {
    throw ValidationError(describe() + ": response lacks a numeric 'score'");
  }
  const double o = it->get<double>();
  if (!in_unit_interval(o)) {
    throw ValidationError(describe() + ": score " + std::to_string(o) +
                          " outside [0, 1]");
  }
  return o;
}

}  // namespace mars
