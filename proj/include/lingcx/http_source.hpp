// SPDX-License-Identifier: Apache-2.0
#pragma once

// Lookup source for an Ethnea-compatible HTTP endpoint:
//   GET <path>?name=<full>&fname=<first>&lname=<last>
// answering with a JSON object of ethnicity -> probability, either at the top
// level or under a "probabilities" key. Plain http only.

#include <chrono>
#include <string>
#include <string_view>
#include <thread>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "lingcx/error.hpp"
#include "lingcx/ethnicity.hpp"
#include "lingcx/lookup.hpp"

namespace lingcx::ethnicity {

struct HttpOptions {
  std::string base_url;  // http://host[:port][/path]
  double timeout_seconds = 10.0;
  int retries = 2;
};

class HttpSource final : public Source {
 public:
  explicit HttpSource(HttpOptions options) : options_(std::move(options)) {
    std::string_view url = options_.base_url;
    constexpr std::string_view scheme = "http://";
    if (url.substr(0, scheme.size()) != scheme) {
      throw ConfigError("ethnicity endpoint must be an http:// URL: " + options_.base_url);
    }
    url.remove_prefix(scheme.size());
    const auto slash = url.find('/');
    host_ = std::string(url.substr(0, slash));
    path_ = slash == std::string_view::npos ? "/" : std::string(url.substr(slash));
    if (host_.empty()) throw ConfigError("ethnicity endpoint has no host: " + options_.base_url);
  }

  Probabilities lookup(const std::string& full_name) override {
    const auto space = full_name.rfind(' ');
    httplib::Params params{{"name", full_name},
                           {"fname", space == std::string::npos ? std::string() : full_name.substr(0, space)},
                           {"lname", space == std::string::npos ? full_name : full_name.substr(space + 1)}};
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= options_.retries; ++attempt) {
      if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(100 << std::min(attempt, 5)));
      httplib::Client client("http://" + host_);
      const auto timeout = std::chrono::duration<double>(options_.timeout_seconds);
      client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
      client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
      const auto res = client.Get(path_, params, httplib::Headers{});
      if (!res) {
        last_error = httplib::to_string(res.error());
        continue;
      }
      if (res->status != 200) {
        last_error = "HTTP " + std::to_string(res->status);
        continue;
      }
      return parse_response(res->body, full_name);
    }
    throw LookupUnavailable("lookup of '" + full_name + "' failed: " + last_error);
  }

  static Probabilities parse_response(const std::string& body, const std::string& full_name) {
    try {
      auto j = nlohmann::json::parse(body);
      if (j.is_object() && j.contains("probabilities")) j = j.at("probabilities");
      if (!j.is_object()) throw LookupUnavailable("unexpected response for '" + full_name + "'");
      Probabilities p;
      for (const auto& [key, value] : j.items()) {
        const auto canon = canonical_ethnicity(key);
        if (!canon || !value.is_number()) {
          throw LookupUnavailable("unexpected field '" + key + "' in response for '" + full_name + "'");
        }
        p[std::string(*canon)] = value.get<double>();
      }
      return p;
    } catch (const nlohmann::json::exception& e) {
      throw LookupUnavailable("bad response for '" + full_name + "': " + e.what());
    }
  }

 private:
  HttpOptions options_;
  std::string host_;
  std::string path_;
};

}  // namespace lingcx::ethnicity
