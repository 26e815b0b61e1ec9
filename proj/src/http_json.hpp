#pragma once

// Internal: JSON-over-HTTP POST used by the remote providers.

#include <string>

#include "json.hpp"

namespace mars::detail {

/// POSTs `body` to base_url + path. Retries connection failures and 5xx
/// responses `retries` extra times, then throws TransportError. Any other
/// non-200 status throws Error. Throws ValidationError if the response body
/// is not a JSON object.
nlohmann::json post_json(const std::string& base_url, const std::string& path,
                         const nlohmann::json& body, const std::string& token,
                         int retries, double timeout_s);

}  // namespace mars::detail
