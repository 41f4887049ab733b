#pragma once

// Minimal client for OpenAI-compatible chat-completions endpoints.
//
// The HTTP layer sits behind HttpTransport so tests can script responses.
// Transient failures (timeouts, connection errors, 408/429/5xx) are retried
// with capped exponential backoff; 401/403 fail immediately.

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <semaphore>
#include <string>
#include <vector>

#include "infoseek/prompts.hpp"

namespace infoseek {

struct OracleEndpointConfig {
    // Everything up to (not including) "/chat/completions",
    // e.g. "https://api.openai.com/v1" or "http://127.0.0.1:8080/v1".
    std::string base_url = "http://127.0.0.1:8080/v1";
    std::string model_name = "gpt-4";
    // Name of the environment variable holding the bearer token. Empty means
    // the endpoint needs no authentication.
    std::string api_key_env_var = "OPENAI_API_KEY";
    double temperature = 0.7;
    int timeout_seconds = 60;
    int max_retries = 3;
    int max_in_flight = 4;
    int backoff_initial_ms = 500;
    int backoff_max_ms = 8000;

    void validate() const;
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    // POSTs a JSON body. Throws LlmTimeoutError on timeout and
    // LlmHttpError(0, ...) when no response arrives.
    virtual HttpResponse post(const std::string& url, const std::map<std::string, std::string>& headers,
                              const std::string& body, std::chrono::seconds timeout) = 0;
};

// cpp-httplib backed transport. https URLs require a TLS-enabled build.
class HttplibTransport final : public HttpTransport {
public:
    HttpResponse post(const std::string& url, const std::map<std::string, std::string>& headers,
                      const std::string& body, std::chrono::seconds timeout) override;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Request body for one completion; exposed for tests.
std::string chat_request_body(const OracleEndpointConfig& config, const std::vector<ChatMessage>& messages);

// choices[0].message.content, or LlmMalformedResponseError.
std::string parse_chat_response(const std::string& body);

// Delay before retry number `attempt` (0-based).
std::chrono::milliseconds backoff_delay(const OracleEndpointConfig& config, int attempt);

class LlmClient {
public:
    explicit LlmClient(OracleEndpointConfig config, std::shared_ptr<HttpTransport> transport = nullptr,
                       Sleeper sleeper = nullptr);

    // Blocks while max_in_flight requests are outstanding.
    std::string complete(const std::vector<ChatMessage>& messages);

    const OracleEndpointConfig& config() const noexcept { return config_; }
    std::uint64_t requests_sent() const noexcept { return requests_.load(); }

private:
    OracleEndpointConfig config_;
    std::shared_ptr<HttpTransport> transport_;
    Sleeper sleeper_;
    std::unique_ptr<std::counting_semaphore<1024>> slots_;
    std::atomic<std::uint64_t> requests_{0};
};

// One-shot convenience over a fresh client.
std::string llm_call(const OracleEndpointConfig& config, const std::vector<ChatMessage>& messages,
                     std::shared_ptr<HttpTransport> transport = nullptr);

}  // namespace infoseek
