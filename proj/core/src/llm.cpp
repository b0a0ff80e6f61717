#include "cqgen/llm.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "cqgen/error.hpp"
#include "cqgen/hash.hpp"

namespace cqgen {

void validate_request(const ChatRequest& request) {
    if (request.temperature < 0.0 || request.temperature > 2.0) {
        throw Error(ErrorCode::invalid_argument,
                    "temperature must be within [0, 2], got " + std::to_string(request.temperature));
    }
    if (request.prompt_text.empty()) {
        throw Error(ErrorCode::invalid_argument, "prompt_text must be non-empty");
    }
    if (request.max_output_tokens < 1) {
        throw Error(ErrorCode::invalid_argument, "max_output_tokens must be >= 1");
    }
}

std::string assemble_input(const ChatRequest& request) {
    std::string input;
    for (const auto& block : request.context_blocks) {
        input += block;
        input += "\n\n";
    }
    input += request.prompt_text;
    return input;
}

std::string request_fingerprint(const ChatRequest& request) {
    std::uint64_t h = kFnvOffset;
    h = fnv1a64(request.model, h);
    double temp = request.temperature;
    std::uint64_t temp_bits;
    static_assert(sizeof(temp_bits) == sizeof(temp));
    __builtin_memcpy(&temp_bits, &temp, sizeof(temp));
    h = fnv1a64_mix(temp_bits, h);
    h = fnv1a64(request.prompt_text, h);
    for (const auto& block : request.context_blocks) {
        h = fnv1a64(block, h);
        h = fnv1a64("\x1f", h);
    }
    h = fnv1a64_mix(request.request_seed ? static_cast<std::uint64_t>(*request.request_seed) + 1
                                         : 0,
                    h);
    return to_hex(h);
}

MockLlmProvider::MockLlmProvider(std::uint64_t seed) : seed_(seed) {}

std::string MockLlmProvider::provider_id() const {
    return "mock-llm-s" + std::to_string(seed_);
}

void MockLlmProvider::load_script(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot read mock script '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::io_error, std::string("cannot parse mock script: ") + e.what());
    }
    for (const auto& rec : j.value("entries", nlohmann::json::array())) {
        ScriptEntry entry;
        entry.fingerprint = rec.value("fingerprint", "");
        entry.contains = rec.value("contains", "");
        entry.text = rec.value("text", "");
        entry.error = rec.value("error", "");
        add_script_entry(std::move(entry));
    }
}

void MockLlmProvider::add_script_entry(ScriptEntry entry) {
    std::lock_guard<std::mutex> lock(mutex_);
    script_.push_back(std::move(entry));
}

void MockLlmProvider::fail_when(std::function<bool(const ChatRequest&)> predicate,
                                std::string error_kind, int errors_to_inject) {
    std::lock_guard<std::mutex> lock(mutex_);
    fail_predicate_ = std::move(predicate);
    fail_kind_ = std::move(error_kind);
    failures_left_ = errors_to_inject;
}

std::size_t MockLlmProvider::call_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return calls_;
}

namespace {

[[noreturn]] void throw_mock_error(const std::string& kind) {
    if (kind == "rate_limited") {
        throw Error(ErrorCode::rate_limited, "mock provider injected rate limit", 1);
    }
    throw Error(ErrorCode::provider_unavailable, "mock provider injected failure");
}

int requested_count(const std::string& prompt) {
    // Reads N out of "Derive N competency questions".
    const std::string anchor = "Derive ";
    std::size_t pos = prompt.find(anchor);
    if (pos == std::string::npos) return 5;
    pos += anchor.size();
    int n = 0;
    bool any = false;
    while (pos < prompt.size() && prompt[pos] >= '0' && prompt[pos] <= '9') {
        n = n * 10 + (prompt[pos] - '0');
        ++pos;
        any = true;
    }
    return any && n > 0 ? n : 5;
}

// splitmix64; the mock's only randomness primitive, platform-independent.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

std::string MockLlmProvider::synthesize(const ChatRequest& request) const {
    const int n = requested_count(request.prompt_text);
    std::uint64_t base = fnv1a64(request_fingerprint(request), seed_ + kFnvOffset);

    // Question material picked by hash from fixed pools. Frames differ in
    // shape on purpose: a shared long suffix would make every question
    // near-identical under n-gram embeddings. Higher temperature widens the
    // topic pool, which lowers run-to-run overlap the way a more random
    // sampler would.
    static const char* kFrames[][2] = {
        {"What is the ", " of the "},      {"How does the ", " influence the "},
        {"Which ", " describes the "},     {"Why does the ", " require a "},
        {"When is the ", " of the "},      {"Who curates the ", " for the "},
    };
    static const char* kFrameTails[] = {"?", "?", "?", "?", " revised?", "?"};
    static const char* kNouns[] = {"concept", "process", "artifact", "method", "relation",
                                   "measurement", "practice", "resource"};
    static const char* kTopics[] = {
        "experiment", "dataset",   "survey",     "replication", "publication", "review",
        "venue",      "protocol",  "hypothesis", "threat",      "sample",      "questionnaire",
        "interview",  "observation", "metric",   "baseline",    "tooling",     "workflow",
        "archive",    "license",   "curation",   "annotation",  "provenance",  "registry",
        "taxonomy",   "guideline", "community",  "repository",  "benchmark",   "interface",
        "session",    "stakeholder"};
    const int pool = std::min(32, 8 + static_cast<int>(request.temperature * 12.0));

    std::string out;
    for (int i = 0; i < n; ++i) {
        std::uint64_t h = mix64(base + static_cast<std::uint64_t>(i));
        std::size_t frame = h % 6;
        const char* noun = kNouns[(h >> 8) % 8];
        const char* topic = kTopics[(h >> 16) % static_cast<std::uint64_t>(pool)];
        const bool topic_first = frame == 1 || frame == 3;
        out += std::to_string(i + 1) + ". " + kFrames[frame][0] +
               (topic_first ? topic : noun) + kFrames[frame][1] +
               (topic_first ? noun : topic) + kFrameTails[frame] + "\n";
    }
    return out;
}

ChatResponse MockLlmProvider::send(const ChatRequest& request) {
    std::string fingerprint = request_fingerprint(request);
    std::string assembled = assemble_input(request);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        ++calls_;
        if (fail_predicate_ && failures_left_ != 0 && fail_predicate_(request)) {
            if (failures_left_ > 0) --failures_left_;
            throw_mock_error(fail_kind_);
        }
        for (const auto& entry : script_) {
            bool matched = (!entry.fingerprint.empty() && entry.fingerprint == fingerprint) ||
                           (!entry.contains.empty() &&
                            assembled.find(entry.contains) != std::string::npos);
            if (!matched) continue;
            if (!entry.error.empty()) throw_mock_error(entry.error);
            ChatResponse response;
            response.raw_text = entry.text;
            response.provider_metadata["mock"] = "scripted";
            response.provider_metadata["fingerprint"] = fingerprint;
            return response;
        }
    }
    ChatResponse response;
    response.raw_text = synthesize(request);
    response.provider_metadata["mock"] = "synthesized";
    response.provider_metadata["fingerprint"] = fingerprint;
    return response;
}

LlmGateway::LlmGateway(std::shared_ptr<LlmProvider> provider, GatewayOptions options)
    : provider_(std::move(provider)), options_(std::move(options)) {
    if (!provider_) {
        throw Error(ErrorCode::invalid_argument, "LlmGateway needs a provider");
    }
    if (options_.max_attempts < 1) {
        throw Error(ErrorCode::invalid_argument, "max_attempts must be >= 1");
    }
    if (!options_.sleeper) {
        options_.sleeper = [](int ms) {
            std::this_thread::sleep_for(std::chrono::milliseconds(ms));
        };
    }
}

ChatResponse LlmGateway::complete(const ChatRequest& request) const {
    validate_request(request);

    ChatRequest effective = request;
    std::string assembled = assemble_input(effective);
    if (assembled.size() > options_.max_context_chars) {
        if (options_.overflow_policy == OverflowPolicy::error) {
            throw Error(ErrorCode::context_overflow,
                        "assembled input is " + std::to_string(assembled.size()) +
                            " chars, limit " + std::to_string(options_.max_context_chars));
        }
        // Lowest-ranked context comes last; drop from the back until it fits.
        while (!effective.context_blocks.empty() &&
               assemble_input(effective).size() > options_.max_context_chars) {
            effective.context_blocks.pop_back();
        }
        if (assemble_input(effective).size() > options_.max_context_chars) {
            throw Error(ErrorCode::context_overflow,
                        "prompt alone exceeds the context limit of " +
                            std::to_string(options_.max_context_chars) + " chars");
        }
    }

    int backoff = options_.backoff_base_ms;
    for (int attempt = 1;; ++attempt) {
        const auto started = std::chrono::steady_clock::now();
        try {
            ChatResponse response = provider_->send(effective);
            response.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                      std::chrono::steady_clock::now() - started)
                                      .count();
            return response;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::rate_limited || attempt >= options_.max_attempts) {
                throw;
            }
            int wait = backoff;
            if (e.retry_after_ms() && *e.retry_after_ms() > wait) {
                wait = *e.retry_after_ms();
            }
            options_.sleeper(wait);
            backoff *= 2;
        }
    }
}

}  // namespace cqgen
