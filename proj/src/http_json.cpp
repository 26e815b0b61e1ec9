#include "http_json.hpp"

#include "httplib.h"
#include "mars/types.hpp"

namespace mars::detail {

namespace {

struct Endpoint {
  std::string scheme_host_port;
  std::string prefix;
};

Endpoint split_url(const std::string& url) {
  const auto scheme = url.find("://");
  const auto path_at =
      url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  Endpoint ep;
  ep.scheme_host_port = url.substr(0, path_at);
  if (path_at != std::string::npos) ep.prefix = url.substr(path_at);
  while (!ep.prefix.empty() && ep.prefix.back() == '/') ep.prefix.pop_back();
  return ep;
}

}  // namespace

nlohmann::json post_json(const std::string& base_url, const std::string& path,
                         const nlohmann::json& body, const std::string& token,
                         int retries, double timeout_s) {
  const Endpoint ep = split_url(base_url);
  httplib::Client client(ep.scheme_host_port);
  const auto secs = static_cast<time_t>(timeout_s);
  const auto usecs = static_cast<time_t>((timeout_s - secs) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  if (!token.empty()) client.set_bearer_token_auth(token);

  const std::string target = ep.prefix + path;
  const std::string payload = body.dump();
  std::string last_error;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    auto res = client.Post(target, payload, "application/json");
    if (!res) {
      last_error = "request to " + base_url + target + " failed: " +
                   httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = base_url + target + " returned HTTP " +
                   std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw Error(base_url + target + " rejected request with HTTP " +
                  std::to_string(res->status) + ": " + res->body);
    }
    nlohmann::json out =
        nlohmann::json::parse(res->body, nullptr, /*allow_exceptions=*/false);
    if (!out.is_object()) {
      throw ValidationError(base_url + target +
                            " returned a body that is not a JSON object");
    }
    return out;
  }
  throw TransportError(last_error);
}

}  // namespace mars::detail
