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

#ifndef FRAMECRAFT_CHAT_CLIENT_HPP_
#define FRAMECRAFT_CHAT_CLIENT_HPP_

#include <string>
#include <vector>

namespace framecraft {

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;
};

struct ChatRequest {
  std::string model;
  double temperature = 0.7;
  std::vector<ChatMessage> messages;
};

// Request body in the chat-completion wire format.
std::string SerializeChatRequest(const ChatRequest& request);
// Extracts choices[0].message.content. Throws OracleError(kParse).
std::string ParseChatResponse(const std::string& body);

// One completion per call. Implementations must be safe to call concurrently.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string Complete(const ChatRequest& request) const = 0;
};

struct HttpChatConfig {
  std::string endpoint;  // full URL, e.g. https://host/v1/chat/completions
  std::string api_key;   // sent as a bearer token when non-empty
  int timeout_seconds = 60;
  int retries = 3;         // extra attempts after the first
  int backoff_ms = 200;    // doubled after every failed attempt
};

// POSTs to a chat-completion endpoint. Transport failures and non-2xx
// statuses are retried; the last failure surfaces as OracleError(kEndpoint).
class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(HttpChatConfig config);
  std::string Complete(const ChatRequest& request) const override;

 private:
  HttpChatConfig config_;
  std::string base_;  // scheme://host[:port]
  std::string path_;
};

// Value of FRAMECRAFT_LLM_KEY, or empty.
std::string ApiKeyFromEnvironment();

}  // namespace framecraft

#endif  // FRAMECRAFT_CHAT_CLIENT_HPP_
