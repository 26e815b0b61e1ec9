#include <fstream>

#include "http_json.hpp"
#include "json.hpp"
#include "mars/entropy.hpp"
#include "mars/text.hpp"

namespace mars {

bool NormalizedMatchEquivalence::equivalent(std::string_view /*question*/,
                                            std::string_view a,
                                            std::string_view b) const {
  return text::normalize_for_match(a) == text::normalize_for_match(b);
}

FixtureEquivalence::FixtureEquivalence(
    std::vector<std::pair<std::string, std::string>> pairs) {
  for (auto& [a, b] : pairs) {
    pairs_.emplace(a, b);
    pairs_.emplace(std::move(b), std::move(a));
  }
}

FixtureEquivalence FixtureEquivalence::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open equivalence fixture '" + path + "'");
  std::vector<std::pair<std::string, std::string>> pairs;
  try {
    const auto doc = nlohmann::json::parse(in);
    if (!doc.is_array()) throw ConfigError("expected an array of pairs");
    for (const auto& p : doc) {
      pairs.emplace_back(p.at("text_a").get<std::string>(),
                         p.at("text_b").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("equivalence fixture '" + path + "': " + e.what());
  }
  FixtureEquivalence f(std::move(pairs));
  f.source_ = path;
  return f;
}

bool FixtureEquivalence::equivalent(std::string_view /*question*/,
                                    std::string_view a,
                                    std::string_view b) const {
  if (a == b) return true;
  return pairs_.count({std::string(a), std::string(b)}) > 0;
}

RemoteNliEquivalence::RemoteNliEquivalence(std::string base_url,
                                           std::string bearer_token,
                                           double threshold, int retries,
                                           double timeout_s)
    : base_url_(std::move(base_url)),
      token_(std::move(bearer_token)),
      threshold_(threshold),
      retries_(retries),
      timeout_s_(timeout_s) {}

double RemoteNliEquivalence::entail(std::string_view premise,
                                    std::string_view hypothesis) const {
  nlohmann::json body;
  body["premise"] = premise;
  body["hypothesis"] = hypothesis;
  const auto res = detail::post_json(base_url_, "/v1/nli", body, token_,
                                     retries_, timeout_s_);
  auto it = res.find("entail");
  if (it == res.end() || !it->is_number()) {
    throw ValidationError(describe() + ": response lacks a numeric 'entail'");
  }
  const double p = it->get<double>();
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(describe() + ": entail " + std::to_string(p) +
                          " outside [0, 1]");
  }
  return p;
}

bool RemoteNliEquivalence::equivalent(std::string_view question,
                                      std::string_view a,
                                      std::string_view b) const {
  std::string qa(question);
  std::string qb(question);
  qa += ' ';
  qa += a;
  qb += ' ';
  qb += b;
  return entail(qa, qb) >= threshold_ && entail(qb, qa) >= threshold_;
}

}  // namespace mars
