// Copyright 2026 The Framecraft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "framecraft/chat_client.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "framecraft/error.hpp"

namespace framecraft {

using nlohmann::json;

std::string SerializeChatRequest(const ChatRequest& request) {
  json messages = json::array();
  for (const auto& m : request.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  json body = {{"model", request.model}, {"temperature", request.temperature}, {"messages", messages}};
  return body.dump();
}

std::string ParseChatResponse(const std::string& body) {
  try {
    const json j = json::parse(body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw OracleError(OracleError::Kind::kParse,
                      std::string("malformed chat-completion response: ") + e.what());
  }
}

HttpChatClient::HttpChatClient(HttpChatConfig config) : config_(std::move(config)) {
  const auto scheme_end = config_.endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw ValidationError("endpoint must be a full URL: " + config_.endpoint);
  }
  const auto path_start = config_.endpoint.find('/', scheme_end + 3);
  base_ = config_.endpoint.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : config_.endpoint.substr(path_start);
}

std::string HttpChatClient::Complete(const ChatRequest& request) const {
  const std::string body = SerializeChatRequest(request);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);
  std::string last_error;
  int backoff = config_.backoff_ms;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    if (attempt > 0 && backoff > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff *= 2;
    }
    httplib::Client client(base_);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_write_timeout(config_.timeout_seconds, 0);
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP status " + std::to_string(res->status);
      continue;
    }
    return ParseChatResponse(res->body);
  }
  throw OracleError(OracleError::Kind::kEndpoint,
                    "chat endpoint " + config_.endpoint + " failed after " +
                        std::to_string(config_.retries + 1) + " attempts: " + last_error);
}

std::string ApiKeyFromEnvironment() {
  const char* key = std::getenv("FRAMECRAFT_LLM_KEY");
  return key == nullptr ? std::string() : std::string(key);
}

}  // namespace framecraft
