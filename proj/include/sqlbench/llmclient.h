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

#ifndef SQLBENCH_LLMCLIENT_H_
#define SQLBENCH_LLMCLIENT_H_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sqlbench/prompt.h"

namespace sqlbench {

struct ModelEndpointConfig {
  // e.g. "http://localhost:8000/v1"; "/chat/completions" is appended.
  std::string base_url;
  std::string model_name;
  double temperature = 0;
  int max_tokens = 1024;
  std::chrono::milliseconds request_timeout{120000};
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  // Name of the environment variable that holds the bearer token.
  std::string auth_token_env;
  int max_in_flight = 4;

  void Validate() const;
};

ModelEndpointConfig EndpointFromJson(const nlohmann::json& j);
nlohmann::json EndpointToJson(const ModelEndpointConfig& cfg);

struct TokenUsage {
  int prompt_tokens = 0;
  int completion_tokens = 0;
};

struct CompletionRecord {
  std::string cache_key;
  std::string model_name;
  double temperature = 0;
  int max_tokens = 0;
  std::string prompt;
  std::string completion;
  double latency_seconds = 0;
  TokenUsage token_usage;
  // Not persisted: whether this call was served from the cache.
  bool from_cache = false;
};

nlohmann::json RecordToJson(const CompletionRecord& record);
CompletionRecord RecordFromJson(const nlohmann::json& j);

std::string Sha256Hex(std::string_view data);

// Hex SHA-256 over the canonical JSON array of the four inputs.
std::string CacheKey(std::string_view model_name, std::string_view prompt,
                     double temperature, int max_tokens);

struct ChatRequest {
  std::string model;
  std::string prompt;
  double temperature = 0;
  int max_tokens = 0;
};

// Raw HTTP result. status 0 means the connection itself failed.
struct HttpReply {
  int status = 0;
  std::string body;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual HttpReply Send(const ChatRequest& request) = 0;
};

// OpenAI-compatible chat-completions over HTTP(S), prompt as one user message.
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(const ModelEndpointConfig& cfg);
  HttpReply Send(const ChatRequest& request) override;

 private:
  std::string origin_;
  std::string path_;
  std::string token_;
  std::chrono::milliseconds timeout_;
};

// Backend over a callable, for scripted endpoints.
class FunctionBackend : public ChatBackend {
 public:
  using Fn = std::function<HttpReply(const ChatRequest&)>;
  explicit FunctionBackend(Fn fn) : fn_(std::move(fn)) {}
  HttpReply Send(const ChatRequest& request) override { return fn_(request); }

 private:
  Fn fn_;
};

// Chat-completions response body carrying `content`.
std::string MakeChatCompletionBody(std::string_view content,
                                   const TokenUsage& usage = {});

// Wraps a text-to-text function as a backend that always answers 200.
std::shared_ptr<ChatBackend> MakeScriptedBackend(
    std::function<std::string(const ChatRequest&)> answer);

// One JSON file per record, named <cache_key>.json.
class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path dir);

  std::optional<CompletionRecord> Get(const std::string& key) const;
  void Put(const CompletionRecord& record);
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  mutable std::mutex mu_;
};

class LlmClient {
 public:
  // backend may be null: the client then answers from the cache only.
  LlmClient(ModelEndpointConfig cfg, std::shared_ptr<ChatBackend> backend,
            std::shared_ptr<DiskCache> cache = nullptr);

  CompletionRecord Complete(const RenderedPrompt& prompt);
  CompletionRecord Complete(std::string_view prompt_text);

  const ModelEndpointConfig& config() const { return cfg_; }
  int network_requests() const { return network_requests_.load(); }

  // Replaces the backoff sleep, e.g. to record delays in tests.
  void set_sleeper(std::function<void(std::chrono::milliseconds)> sleeper) {
    sleeper_ = std::move(sleeper);
  }

 private:
  CompletionRecord Fetch(const std::string& key, const std::string& prompt);

  ModelEndpointConfig cfg_;
  std::shared_ptr<ChatBackend> backend_;
  std::shared_ptr<DiskCache> cache_;
  std::function<void(std::chrono::milliseconds)> sleeper_;
  std::atomic<int> network_requests_{0};

  std::mutex mu_;
  std::condition_variable slots_cv_;
  int in_flight_ = 0;
  std::map<std::string, std::shared_future<CompletionRecord>> pending_;
  std::map<std::string, CompletionRecord> memo_;
};

std::string ExtractSql(std::string_view completion, AnswerMode mode);
std::string ExtractQuestion(std::string_view completion);
bool ExtractBool(std::string_view completion);

}  // namespace sqlbench

#endif  // SQLBENCH_LLMCLIENT_H_
