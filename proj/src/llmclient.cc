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

#include "sqlbench/llmclient.h"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "sqlbench/error.h"
#include "sqlbench/strings.h"

namespace sqlbench {

using nlohmann::json;

void ModelEndpointConfig::Validate() const {
  if (model_name.empty()) throw ConfigError("model_name is required");
  if (!(temperature >= 0)) throw ConfigError("temperature must be >= 0");
  if (max_tokens < 1) throw ConfigError("max_tokens must be >= 1");
  if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (max_in_flight < 1) throw ConfigError("max_in_flight must be >= 1");
  if (request_timeout.count() <= 0) {
    throw ConfigError("request_timeout must be > 0");
  }
}

ModelEndpointConfig EndpointFromJson(const json& j) {
  if (!j.is_object()) throw ConfigError("model endpoint must be an object");
  ModelEndpointConfig cfg;
  try {
    cfg.base_url = j.value("base_url", "");
    cfg.model_name = j.value("model_name", "");
    cfg.temperature = j.value("temperature", cfg.temperature);
    cfg.max_tokens = j.value("max_tokens", cfg.max_tokens);
    cfg.request_timeout = std::chrono::milliseconds(
        static_cast<int64_t>(j.value("request_timeout_s", 120.0) * 1000));
    cfg.max_retries = j.value("max_retries", cfg.max_retries);
    cfg.initial_backoff = std::chrono::milliseconds(
        static_cast<int64_t>(j.value("initial_backoff_s", 0.5) * 1000));
    cfg.auth_token_env = j.value("auth_token_env", "");
    cfg.max_in_flight = j.value("max_in_flight", cfg.max_in_flight);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model endpoint: ") + e.what());
  }
  cfg.Validate();
  return cfg;
}

json EndpointToJson(const ModelEndpointConfig& cfg) {
  return {
      {"base_url", cfg.base_url},
      {"model_name", cfg.model_name},
      {"temperature", cfg.temperature},
      {"max_tokens", cfg.max_tokens},
      {"request_timeout_s", cfg.request_timeout.count() / 1000.0},
      {"max_retries", cfg.max_retries},
      {"initial_backoff_s", cfg.initial_backoff.count() / 1000.0},
      {"auth_token_env", cfg.auth_token_env},
      {"max_in_flight", cfg.max_in_flight},
  };
}

json RecordToJson(const CompletionRecord& r) {
  return {
      {"cache_key", r.cache_key},
      {"model_name", r.model_name},
      {"temperature", r.temperature},
      {"max_tokens", r.max_tokens},
      {"prompt", r.prompt},
      {"completion", r.completion},
      {"latency_seconds", r.latency_seconds},
      {"token_usage",
       {{"prompt_tokens", r.token_usage.prompt_tokens},
        {"completion_tokens", r.token_usage.completion_tokens}}},
  };
}

CompletionRecord RecordFromJson(const json& j) {
  CompletionRecord r;
  r.cache_key = j.at("cache_key").get<std::string>();
  r.model_name = j.at("model_name").get<std::string>();
  r.temperature = j.at("temperature").get<double>();
  r.max_tokens = j.at("max_tokens").get<int>();
  r.prompt = j.at("prompt").get<std::string>();
  r.completion = j.at("completion").get<std::string>();
  r.latency_seconds = j.value("latency_seconds", 0.0);
  if (j.contains("token_usage")) {
    r.token_usage.prompt_tokens = j["token_usage"].value("prompt_tokens", 0);
    r.token_usage.completion_tokens =
        j["token_usage"].value("completion_tokens", 0);
  }
  return r;
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorClass::kInternal, "SHA-256 digest failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 15];
  }
  return hex;
}

std::string CacheKey(std::string_view model_name, std::string_view prompt,
                     double temperature, int max_tokens) {
  return Sha256Hex(
      json::array({model_name, prompt, temperature, max_tokens}).dump());
}

std::string MakeChatCompletionBody(std::string_view content,
                                   const TokenUsage& usage) {
  return json{
      {"object", "chat.completion"},
      {"choices",
       json::array({{{"index", 0},
                     {"message", {{"role", "assistant"}, {"content", content}}},
                     {"finish_reason", "stop"}}})},
      {"usage",
       {{"prompt_tokens", usage.prompt_tokens},
        {"completion_tokens", usage.completion_tokens}}},
  }
      .dump();
}

std::shared_ptr<ChatBackend> MakeScriptedBackend(
    std::function<std::string(const ChatRequest&)> answer) {
  return std::make_shared<FunctionBackend>(
      [answer = std::move(answer)](const ChatRequest& request) {
        return HttpReply{200, MakeChatCompletionBody(answer(request))};
      });
}

DiskCache::DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    throw ConfigError("cannot create cache directory " + dir_.string() + ": " +
                      ec.message());
  }
}

std::optional<CompletionRecord> DiskCache::Get(const std::string& key) const {
  std::lock_guard lock(mu_);
  std::ifstream in(dir_ / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    CompletionRecord record = RecordFromJson(json::parse(in));
    if (record.cache_key != key) return std::nullopt;
    return record;
  } catch (const json::exception&) {
    // A torn or foreign file is a miss; the next Put overwrites it.
    return std::nullopt;
  }
}

void DiskCache::Put(const CompletionRecord& record) {
  std::lock_guard lock(mu_);
  const auto final_path = dir_ / (record.cache_key + ".json");
  const auto tmp_path = dir_ / (record.cache_key + ".json.tmp");
  {
    std::ofstream out(tmp_path, std::ios::trunc);
    out << RecordToJson(record).dump(2) << "\n";
    if (!out) {
      throw Error(ErrorClass::kInternal,
                  "cannot write cache file " + tmp_path.string());
    }
  }
  std::filesystem::rename(tmp_path, final_path);
}

LlmClient::LlmClient(ModelEndpointConfig cfg,
                     std::shared_ptr<ChatBackend> backend,
                     std::shared_ptr<DiskCache> cache)
    : cfg_(std::move(cfg)),
      backend_(std::move(backend)),
      cache_(std::move(cache)),
      sleeper_([](std::chrono::milliseconds d) {
        std::this_thread::sleep_for(d);
      }) {
  cfg_.Validate();
}

CompletionRecord LlmClient::Complete(const RenderedPrompt& prompt) {
  return Complete(prompt.text);
}

CompletionRecord LlmClient::Complete(std::string_view prompt_text) {
  const std::string prompt(prompt_text);
  const std::string key =
      CacheKey(cfg_.model_name, prompt, cfg_.temperature, cfg_.max_tokens);
  std::promise<CompletionRecord> promise;
  {
    std::unique_lock lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) {
      CompletionRecord hit = it->second;
      hit.from_cache = true;
      return hit;
    }
    if (auto it = pending_.find(key); it != pending_.end()) {
      auto future = it->second;
      lock.unlock();
      CompletionRecord hit = future.get();
      hit.from_cache = true;
      return hit;
    }
    if (cache_) {
      if (auto hit = cache_->Get(key)) {
        memo_[key] = *hit;
        hit->from_cache = true;
        return *hit;
      }
    }
    pending_[key] = promise.get_future().share();
  }
  try {
    CompletionRecord record = Fetch(key, prompt);
    if (cache_) cache_->Put(record);
    std::lock_guard lock(mu_);
    memo_[key] = record;
    pending_.erase(key);
    promise.set_value(record);
    return record;
  } catch (...) {
    std::lock_guard lock(mu_);
    pending_.erase(key);
    promise.set_exception(std::current_exception());
    throw;
  }
}

CompletionRecord LlmClient::Fetch(const std::string& key,
                                  const std::string& prompt) {
  if (!backend_) {
    throw EndpointError(0, "offline: no cached completion for key " + key);
  }
  {
    std::unique_lock lock(mu_);
    slots_cv_.wait(lock, [&] { return in_flight_ < cfg_.max_in_flight; });
    ++in_flight_;
  }
  struct SlotRelease {
    LlmClient* self;
    ~SlotRelease() {
      {
        std::lock_guard lock(self->mu_);
        --self->in_flight_;
      }
      self->slots_cv_.notify_one();
    }
  } release{this};

  const ChatRequest request{cfg_.model_name, prompt, cfg_.temperature,
                            cfg_.max_tokens};
  const int attempts = cfg_.max_retries + 1;
  std::string last_failure;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const auto start = std::chrono::steady_clock::now();
    HttpReply reply;
    try {
      reply = backend_->Send(request);
    } catch (const std::exception& e) {
      reply = HttpReply{0, e.what()};
    }
    ++network_requests_;
    const double latency = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    if (reply.status >= 200 && reply.status < 300) {
      CompletionRecord record;
      record.cache_key = key;
      record.model_name = cfg_.model_name;
      record.temperature = cfg_.temperature;
      record.max_tokens = cfg_.max_tokens;
      record.prompt = prompt;
      record.latency_seconds = latency;
      try {
        const json body = json::parse(reply.body);
        const json& content = body.at("choices").at(0).at("message").at("content");
        record.completion = content.is_string() ? content.get<std::string>() : "";
        if (body.contains("usage") && body["usage"].is_object()) {
          record.token_usage.prompt_tokens = body["usage"].value("prompt_tokens", 0);
          record.token_usage.completion_tokens =
              body["usage"].value("completion_tokens", 0);
        }
      } catch (const json::exception& e) {
        throw EndpointError(reply.status,
                            std::string("malformed completion response: ") +
                                e.what());
      }
      return record;
    }
    const std::string excerpt = reply.body.substr(0, 300);
    const bool transient = reply.status == 0 || reply.status == 408 ||
                           reply.status == 429 || reply.status >= 500;
    if (!transient) {
      throw EndpointError(reply.status, "endpoint returned HTTP " +
                                            std::to_string(reply.status) +
                                            ": " + excerpt);
    }
    last_failure = reply.status == 0
                       ? "connection failed: " + excerpt
                       : "HTTP " + std::to_string(reply.status) + ": " + excerpt;
    if (attempt + 1 < attempts) {
      sleeper_(cfg_.initial_backoff * (int64_t{1} << std::min(attempt, 20)));
    }
  }
  throw TransportError("gave up after " + std::to_string(attempts) +
                       " attempts; last failure " + last_failure);
}

namespace {

// Contents of the first fenced block, or the text itself.
std::string StripFences(std::string_view text) {
  const size_t open = text.find("```");
  if (open == std::string_view::npos) return std::string(text);
  size_t body = text.find('\n', open);
  if (body == std::string_view::npos) return std::string(text.substr(open + 3));
  ++body;
  const size_t close = text.find("```", body);
  return std::string(text.substr(body, close == std::string_view::npos
                                           ? std::string_view::npos
                                           : close - body));
}

// Cuts at the first top-level ';' or blank line outside quotes.
std::string FirstStatement(std::string_view sql) {
  char quote = 0;
  for (size_t i = 0; i < sql.size(); ++i) {
    const char c = sql[i];
    if (quote) {
      if (c == quote) quote = 0;
      continue;
    }
    if (c == '\'' || c == '"' || c == '`') {
      quote = c;
    } else if (c == '[') {
      quote = ']';
    } else if (c == ';') {
      return std::string(sql.substr(0, i));
    } else if (c == '\n') {
      size_t j = i + 1;
      while (j < sql.size() && (sql[j] == ' ' || sql[j] == '\t' || sql[j] == '\r')) ++j;
      if (j < sql.size() && sql[j] == '\n') return std::string(sql.substr(0, i));
    }
  }
  return std::string(sql);
}

}  // namespace

std::string ExtractSql(std::string_view completion, AnswerMode mode) {
  std::string text(Trim(StripFences(completion)));
  if (mode == AnswerMode::kCompletionAfterSelect) {
    static const std::regex kLeadingSelect(R"(^\s*select\b)", std::regex::icase);
    if (!std::regex_search(text, kLeadingSelect)) text = "SELECT " + text;
  }
  static const std::regex kSelect(R"(\bselect\b)", std::regex::icase);
  static const std::regex kWith(
      R"(\bwith\s+(recursive\s+)?[A-Za-z_"`\[][^\s(]*\s*(\([^)]*\)\s*)?as\s*(not\s+)?(materialized\s*)?\()",
      std::regex::icase);
  std::smatch select_match;
  if (!std::regex_search(text, select_match, kSelect)) {
    throw ExtractionError("no SQL found in completion: " + text.substr(0, 120));
  }
  size_t start = select_match.position(0);
  std::smatch with_match;
  if (std::regex_search(text, with_match, kWith) &&
      static_cast<size_t>(with_match.position(0)) < start) {
    start = with_match.position(0);
  }
  std::string sql(Trim(FirstStatement(std::string_view(text).substr(start))));
  if (sql.empty()) throw ExtractionError("empty SQL in completion");
  return sql;
}

std::string ExtractQuestion(std::string_view completion) {
  const std::string lower = ToLower(completion);
  const size_t marker = lower.rfind("question:");
  if (marker == std::string::npos) {
    throw ExtractionError("no 'question:' marker in completion");
  }
  std::string_view rest = completion.substr(marker + 9);
  const size_t eol = rest.find('\n');
  std::string question(Trim(rest.substr(0, eol)));
  if (question.empty()) throw ExtractionError("empty question in completion");
  return question;
}

bool ExtractBool(std::string_view completion) {
  static const std::regex kBool(R"(\b(true|false)\b)", std::regex::icase);
  const std::string text(completion);
  std::optional<bool> verdict;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kBool);
       it != std::sregex_iterator(); ++it) {
    verdict = EqualsIgnoreCase((*it)[1].str(), "true");
  }
  if (!verdict) throw ExtractionError("no True/False verdict in completion");
  return *verdict;
}

}  // namespace sqlbench
