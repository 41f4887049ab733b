#include "infoseek/llm_client.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "infoseek/errors.hpp"

namespace infoseek {

namespace {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw InputError("endpoint URL lacks a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

bool retryable_status(int status) {
    return status == 0 || status == 408 || status == 429 || status >= 500;
}

// Guard so an exception inside the request still frees the slot.
class SlotGuard {
public:
    explicit SlotGuard(std::counting_semaphore<1024>& s) : s_(s) { s_.acquire(); }
    ~SlotGuard() { s_.release(); }
    SlotGuard(const SlotGuard&) = delete;
    SlotGuard& operator=(const SlotGuard&) = delete;

private:
    std::counting_semaphore<1024>& s_;
};

}  // namespace

void OracleEndpointConfig::validate() const {
    if (base_url.empty()) throw InputError("endpoint base_url is empty");
    split_url(base_url);
    if (model_name.empty()) throw InputError("endpoint model_name is empty");
    if (!(temperature >= 0.0)) throw InputError("temperature must be >= 0");
    if (timeout_seconds < 1) throw InputError("timeout_seconds must be >= 1");
    if (max_retries < 0) throw InputError("max_retries must be >= 0");
    if (max_in_flight < 1 || max_in_flight > 1024) throw InputError("max_in_flight must be in [1, 1024]");
    if (backoff_initial_ms < 0 || backoff_max_ms < backoff_initial_ms) throw InputError("invalid backoff bounds");
}

HttpResponse HttplibTransport::post(const std::string& url, const std::map<std::string, std::string>& headers,
                                    const std::string& body, std::chrono::seconds timeout) {
    const auto parts = split_url(url);
    httplib::Client client(parts.origin);
    if (!client.is_valid()) throw LlmHttpError(0, "cannot create HTTP client for " + parts.origin);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);

    const auto start = std::chrono::steady_clock::now();
    auto res = client.Post(parts.path, h, body, "application/json");
    if (!res) {
        const auto err = res.error();
        const auto elapsed = std::chrono::steady_clock::now() - start;
        if (err == httplib::Error::ConnectionTimeout ||
            (err == httplib::Error::Read && elapsed >= timeout * 9 / 10)) {
            throw LlmTimeoutError("request to " + parts.origin + " timed out");
        }
        throw LlmHttpError(0, "request to " + parts.origin + " failed: " + httplib::to_string(err));
    }
    return HttpResponse{res->status, res->body};
}

std::string chat_request_body(const OracleEndpointConfig& config, const std::vector<ChatMessage>& messages) {
    nlohmann::json msgs = nlohmann::json::array();
    for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
    nlohmann::json body = {{"model", config.model_name}, {"messages", msgs}, {"temperature", config.temperature}};
    return body.dump();
}

std::string parse_chat_response(const std::string& body) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw LlmMalformedResponseError(std::string("response is not JSON: ") + e.what());
    }
    const auto choices = j.find("choices");
    if (choices == j.end() || !choices->is_array() || choices->empty())
        throw LlmMalformedResponseError("response has no choices");
    const auto& first = (*choices)[0];
    if (!first.is_object() || !first.contains("message") || !first["message"].is_object())
        throw LlmMalformedResponseError("choices[0] has no message");
    const auto& msg = first["message"];
    if (!msg.contains("content") || !msg["content"].is_string())
        throw LlmMalformedResponseError("choices[0].message.content is not a string");
    return msg["content"].get<std::string>();
}

std::chrono::milliseconds backoff_delay(const OracleEndpointConfig& config, int attempt) {
    long long delay = config.backoff_initial_ms;
    for (int i = 0; i < attempt && delay < config.backoff_max_ms; ++i) delay *= 2;
    return std::chrono::milliseconds(std::min<long long>(delay, config.backoff_max_ms));
}

LlmClient::LlmClient(OracleEndpointConfig config, std::shared_ptr<HttpTransport> transport, Sleeper sleeper)
    : config_(std::move(config)),
      transport_(transport ? std::move(transport) : std::make_shared<HttplibTransport>()),
      sleeper_(sleeper ? std::move(sleeper) : Sleeper([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); })) {
    config_.validate();
    slots_ = std::make_unique<std::counting_semaphore<1024>>(config_.max_in_flight);
}

std::string LlmClient::complete(const std::vector<ChatMessage>& messages) {
    std::map<std::string, std::string> headers;
    if (!config_.api_key_env_var.empty()) {
        const char* key = std::getenv(config_.api_key_env_var.c_str());
        if (!key || !*key) throw LlmAuthError("environment variable " + config_.api_key_env_var + " is not set");
        headers["Authorization"] = std::string("Bearer ") + key;
    }
    const auto url = config_.base_url + (config_.base_url.ends_with('/') ? "" : "/") + "chat/completions";
    const auto body = chat_request_body(config_, messages);

    for (int attempt = 0;; ++attempt) {
        HttpResponse res;
        try {
            SlotGuard slot(*slots_);
            requests_.fetch_add(1);
            res = transport_->post(url, headers, body, std::chrono::seconds(config_.timeout_seconds));
        } catch (const LlmTimeoutError&) {
            if (attempt >= config_.max_retries) throw;
            sleeper_(backoff_delay(config_, attempt));
            continue;
        } catch (const LlmHttpError& e) {
            if (attempt >= config_.max_retries || !retryable_status(e.status())) throw;
            sleeper_(backoff_delay(config_, attempt));
            continue;
        }
        if (res.status == 401 || res.status == 403)
            throw LlmAuthError("endpoint rejected credentials (HTTP " + std::to_string(res.status) + ")");
        if (res.status < 200 || res.status >= 300) {
            if (attempt >= config_.max_retries || !retryable_status(res.status))
                throw LlmHttpError(res.status, "endpoint returned HTTP " + std::to_string(res.status));
            sleeper_(backoff_delay(config_, attempt));
            continue;
        }
        return parse_chat_response(res.body);
    }
}

std::string llm_call(const OracleEndpointConfig& config, const std::vector<ChatMessage>& messages,
                     std::shared_ptr<HttpTransport> transport) {
    LlmClient client(config, std::move(transport));
    return client.complete(messages);
}

}  // namespace infoseek
