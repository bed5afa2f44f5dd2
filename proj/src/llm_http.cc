// Copyright 2026 The sqlbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#include "sqlbench/error.h"
#include "sqlbench/llmclient.h"
#include "sqlbench/strings.h"

#include <cstdlib>

namespace sqlbench {

HttpChatBackend::HttpChatBackend(const ModelEndpointConfig& cfg)
    : timeout_(cfg.request_timeout) {
  static const std::string kSuffix = "/chat/completions";
  std::string url = cfg.base_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  const size_t scheme = url.find("://");
  if (url.empty() || scheme == std::string::npos) {
    throw ConfigError("base_url must look like http(s)://host[:port]/path, got '" +
                      cfg.base_url + "'");
  }
  const size_t path_start = url.find('/', scheme + 3);
  origin_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "" : url.substr(path_start);
  if (!EndsWith(path_, kSuffix)) path_ += kSuffix;
  if (!cfg.auth_token_env.empty()) {
    const char* token = std::getenv(cfg.auth_token_env.c_str());
    if (token == nullptr) {
      throw ConfigError("environment variable " + cfg.auth_token_env +
                        " is not set");
    }
    token_ = token;
  }
}

HttpReply HttpChatBackend::Send(const ChatRequest& request) {
  httplib::Client client(origin_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
  const nlohmann::json body = {
      {"model", request.model},
      {"messages", nlohmann::json::array(
                       {{{"role", "user"}, {"content", request.prompt}}})},
      {"temperature", request.temperature},
      {"max_tokens", request.max_tokens},
  };
  auto result = client.Post(path_, headers, body.dump(), "application/json");
  if (!result) return HttpReply{0, httplib::to_string(result.error())};
  return HttpReply{result->status, result->body};
}

}  // namespace sqlbench
