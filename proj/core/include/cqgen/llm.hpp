#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cqgen {

/// One chat-completion request. context_blocks (empty in zero-shot mode) are
/// placed ahead of prompt_text when the input is assembled.
struct ChatRequest {
    std::string model;
    double temperature = 1.0;
    std::string prompt_text;
    std::vector<std::string> context_blocks;
    int max_output_tokens = 4096;
    std::optional<std::int64_t> request_seed;
};

struct ChatResponse {
    std::string raw_text;
    std::map<std::string, std::string> provider_metadata;
    std::int64_t latency_ms = 0;
};

/// Throws InvalidArgument unless temperature is in [0, 2], prompt_text is
/// non-empty and max_output_tokens >= 1.
void validate_request(const ChatRequest& request);

/// The full model input: context blocks joined by blank lines, then the
/// prompt. Equals prompt_text when there is no context.
std::string assemble_input(const ChatRequest& request);

/// Stable hex fingerprint of (model, temperature, prompt, context, seed);
/// mock fixture scripts key on it.
std::string request_fingerprint(const ChatRequest& request);

class LlmProvider {
public:
    virtual ~LlmProvider() = default;
    virtual std::string provider_id() const = 0;
    /// Issues one request. May throw ProviderUnavailable or RateLimited;
    /// retries are the gateway's concern, not the provider's.
    virtual ChatResponse send(const ChatRequest& request) = 0;
};

/// Deterministic offline LLM. Responses come from, in order of precedence:
///   1. a programmatic failure hook (for fault-injection tests),
///   2. scripted entries matched by request fingerprint or substring,
///   3. a synthesized numbered list of questions derived purely from the
///      request and the provider seed.
/// The synthesizer reads the requested count from a "Derive N competency
/// questions" phrase in the prompt and varies its output with temperature,
/// seed and context, so repeated runs at one setting differ while identical
/// requests collapse to identical responses.
class MockLlmProvider : public LlmProvider {
public:
    struct ScriptEntry {
        std::string fingerprint;  // exact match on request_fingerprint()
        std::string contains;     // or substring match on the assembled input
        std::string text;         // response body;
        std::string error;        // or "rate_limited" / "unavailable"
    };

    explicit MockLlmProvider(std::uint64_t seed = 0);

    /// Loads scripted entries from a JSON file:
    /// {"entries": [{"fingerprint"|"contains": ..., "text"|"error": ...}]}.
    void load_script(const std::string& path);
    void add_script_entry(ScriptEntry entry);

    /// Every matching request throws; errors_to_inject limits how many times
    /// (-1 = always).
    void fail_when(std::function<bool(const ChatRequest&)> predicate, std::string error_kind,
                   int errors_to_inject = -1);

    std::string provider_id() const override;
    ChatResponse send(const ChatRequest& request) override;

    std::size_t call_count() const;

private:
    std::string synthesize(const ChatRequest& request) const;

    std::uint64_t seed_;
    std::vector<ScriptEntry> script_;
    std::function<bool(const ChatRequest&)> fail_predicate_;
    std::string fail_kind_;
    mutable std::mutex mutex_;
    int failures_left_ = 0;
    std::size_t calls_ = 0;
};

enum class OverflowPolicy { error, truncate_context };

/// Retry, backoff and context-limit policy applied around a provider.
struct GatewayOptions {
    int max_attempts = 3;
    int backoff_base_ms = 250;
    std::size_t max_context_chars = 400000;
    OverflowPolicy overflow_policy = OverflowPolicy::error;
    /// Injectable for tests; defaults to std::this_thread::sleep_for.
    std::function<void(int /*ms*/)> sleeper;
};

/// Wraps a provider with request validation, context-overflow handling and
/// exponential backoff on RateLimited (honoring a provider retry-after hint
/// when one is attached).
class LlmGateway {
public:
    LlmGateway(std::shared_ptr<LlmProvider> provider, GatewayOptions options = {});

    ChatResponse complete(const ChatRequest& request) const;

    LlmProvider& provider() { return *provider_; }
    const GatewayOptions& options() const { return options_; }

private:
    std::shared_ptr<LlmProvider> provider_;
    GatewayOptions options_;
};

/// Single message vs split system/user payload layout for HTTP providers.
enum class MessageStyle { single_user, system_context };

struct HttpLlmConfig {
    std::string base_url;
    std::string path = "/v1/chat/completions";
    std::string model;  // default model; the request's own model wins when set
    std::string api_key_env = "CQGEN_API_KEY";
    MessageStyle message_style = MessageStyle::single_user;
    int max_in_flight = 1;
    int timeout_seconds = 120;
};

/// Remote provider speaking a JSON chat protocol:
/// POST {"model", "temperature", "max_tokens", "messages": [...]} ->
/// {"choices": [{"message": {"content": ...}}]}. HTTP 429 surfaces as
/// RateLimited with the Retry-After header attached when present.
std::shared_ptr<LlmProvider> make_http_llm_provider(const HttpLlmConfig& config);

}  // namespace cqgen
