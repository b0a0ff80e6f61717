#include <atomic>
#include <cstdlib>
#include <memory>
#include <semaphore>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "cqgen/embedding.hpp"
#include "cqgen/error.hpp"
#include "cqgen/llm.hpp"

namespace cqgen {

namespace {

std::string api_key_from_env(const std::string& env_var) {
    if (env_var.empty()) return "";
    const char* value = std::getenv(env_var.c_str());
    return value ? value : "";
}

httplib::Headers auth_headers(const std::string& api_key) {
    httplib::Headers headers;
    if (!api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + api_key);
    }
    return headers;
}

int retry_after_ms_from(const httplib::Response& res) {
    if (res.has_header("Retry-After")) {
        try {
            return std::stoi(res.get_header_value("Retry-After")) * 1000;
        } catch (...) {
        }
    }
    return 0;
}

[[noreturn]] void throw_http_failure(const httplib::Result& result, const std::string& what) {
    if (!result) {
        throw Error(ErrorCode::provider_unavailable,
                    what + ": " + httplib::to_string(result.error()));
    }
    const auto& res = result.value();
    if (res.status == 429) {
        int retry_ms = retry_after_ms_from(res);
        if (retry_ms > 0) {
            throw Error(ErrorCode::rate_limited, what + ": HTTP 429", retry_ms);
        }
        throw Error(ErrorCode::rate_limited, what + ": HTTP 429");
    }
    throw Error(ErrorCode::provider_unavailable,
                what + ": HTTP " + std::to_string(res.status) + " " + res.body.substr(0, 200));
}

/// Counting guard limiting concurrent in-flight requests.
class InFlightGuard {
public:
    explicit InFlightGuard(std::counting_semaphore<>& sem) : sem_(sem) { sem_.acquire(); }
    ~InFlightGuard() { sem_.release(); }

private:
    std::counting_semaphore<>& sem_;
};

class HttpEmbeddingProvider : public EmbeddingProvider {
public:
    explicit HttpEmbeddingProvider(HttpEmbeddingConfig config)
        : config_(std::move(config)),
          in_flight_(std::max(1, config_.max_in_flight)),
          dim_(config_.dim) {
        if (config_.base_url.empty()) {
            throw Error(ErrorCode::invalid_argument, "embedding provider needs a base_url");
        }
    }

    std::string provider_id() const override {
        return "http-embed:" + config_.model + "@" + config_.base_url;
    }

    std::size_t dim() const override { return dim_.load(); }

    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override {
        InFlightGuard guard(in_flight_);
        httplib::Client client(config_.base_url);
        client.set_read_timeout(config_.timeout_seconds, 0);
        client.set_connection_timeout(config_.timeout_seconds, 0);

        nlohmann::json payload;
        payload["model"] = config_.model;
        payload["input"] = texts;
        auto result = client.Post(config_.path, auth_headers(api_key_from_env(config_.api_key_env)),
                                  payload.dump(), "application/json");
        if (!result || result->status != 200) {
            throw_http_failure(result, "embedding request failed");
        }
        nlohmann::json body;
        try {
            body = nlohmann::json::parse(result->body);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::provider_unavailable,
                        std::string("embedding response is not JSON: ") + e.what());
        }
        std::vector<EmbeddingVector> vectors;
        for (const auto& item : body.at("data")) {
            EmbeddingVector v;
            v.values = item.at("embedding").get<std::vector<double>>();
            vectors.push_back(std::move(v));
        }
        if (dim_.load() == 0 && !vectors.empty()) {
            dim_.store(vectors.front().dim());
        }
        return vectors;
    }

private:
    HttpEmbeddingConfig config_;
    std::counting_semaphore<> in_flight_;
    std::atomic<std::size_t> dim_;
};

class HttpLlmProvider : public LlmProvider {
public:
    explicit HttpLlmProvider(HttpLlmConfig config)
        : config_(std::move(config)), in_flight_(std::max(1, config_.max_in_flight)) {
        if (config_.base_url.empty()) {
            throw Error(ErrorCode::invalid_argument, "LLM provider needs a base_url");
        }
    }

    std::string provider_id() const override {
        return "http-llm:" + config_.model + "@" + config_.base_url;
    }

    ChatResponse send(const ChatRequest& request) override {
        InFlightGuard guard(in_flight_);
        httplib::Client client(config_.base_url);
        client.set_read_timeout(config_.timeout_seconds, 0);
        client.set_connection_timeout(config_.timeout_seconds, 0);

        nlohmann::json payload;
        payload["model"] = request.model.empty() ? config_.model : request.model;
        payload["temperature"] = request.temperature;
        payload["max_tokens"] = request.max_output_tokens;
        if (request.request_seed) payload["seed"] = *request.request_seed;

        auto messages = nlohmann::json::array();
        if (config_.message_style == MessageStyle::system_context &&
            !request.context_blocks.empty()) {
            std::string context;
            for (const auto& block : request.context_blocks) {
                context += block;
                context += "\n\n";
            }
            messages.push_back({{"role", "system"}, {"content", context}});
            messages.push_back({{"role", "user"}, {"content", request.prompt_text}});
        } else {
            messages.push_back({{"role", "user"}, {"content", assemble_input(request)}});
        }
        payload["messages"] = std::move(messages);

        auto result = client.Post(config_.path, auth_headers(api_key_from_env(config_.api_key_env)),
                                  payload.dump(), "application/json");
        if (!result || result->status != 200) {
            throw_http_failure(result, "chat request failed");
        }
        nlohmann::json body;
        try {
            body = nlohmann::json::parse(result->body);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::provider_unavailable,
                        std::string("chat response is not JSON: ") + e.what());
        }
        ChatResponse response;
        try {
            response.raw_text =
                body.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception&) {
            throw Error(ErrorCode::provider_unavailable,
                        "chat response missing choices[0].message.content");
        }
        if (body.contains("model")) {
            response.provider_metadata["model"] = body["model"].dump();
        }
        if (body.contains("usage")) {
            response.provider_metadata["usage"] = body["usage"].dump();
        }
        return response;
    }

private:
    HttpLlmConfig config_;
    std::counting_semaphore<> in_flight_;
};

}  // namespace

std::shared_ptr<EmbeddingProvider> make_http_embedding_provider(const HttpEmbeddingConfig& config) {
    return std::make_shared<HttpEmbeddingProvider>(config);
}

std::shared_ptr<LlmProvider> make_http_llm_provider(const HttpLlmConfig& config) {
    return std::make_shared<HttpLlmProvider>(config);
}

}  // namespace cqgen
