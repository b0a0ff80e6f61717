#include "cqgen/config.hpp"

#include <fstream>

#include "cqgen/error.hpp"
#include "json_codec.hpp"

namespace cqgen {

using codec::ordered_json;

namespace {

ProviderConfig provider_from_json(const ordered_json& j, std::size_t default_dim) {
    ProviderConfig p;
    p.dim = default_dim;
    if (j.is_null()) return p;
    p.kind = j.value("kind", "mock");
    if (p.kind != "mock" && p.kind != "http") {
        throw Error(ErrorCode::invalid_argument, "provider kind must be 'mock' or 'http'");
    }
    p.dim = j.value("dim", p.dim);
    p.seed = j.value("seed", p.seed);
    p.script = j.value("script", "");
    p.base_url = j.value("base_url", "");
    p.path = j.value("path", "");
    p.model = j.value("model", "");
    p.api_key_env = j.value("api_key_env", "");
    p.max_in_flight = j.value("max_in_flight", 0);
    p.timeout_seconds = j.value("timeout_seconds", 0);
    if (p.kind == "http" && p.base_url.empty()) {
        throw Error(ErrorCode::invalid_argument, "http provider needs a base_url");
    }
    return p;
}

}  // namespace

std::filesystem::path AppConfig::resolve(const std::string& rel) const {
    std::filesystem::path p(rel);
    return p.is_absolute() ? p : base_dir / p;
}

AppConfig load_app_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot read config '" + path.string() + "'");
    }
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::invalid_argument,
                    "config '" + path.string() + "' is not valid JSON: " + e.what());
    }

    AppConfig config;
    config.base_dir = std::filesystem::absolute(path).parent_path();
    config.corpus_manifest = j.value("corpus_manifest", "");
    config.ground_truth = j.value("ground_truth", "");
    config.prompt_preset = j.value("prompt_preset", "");
    config.prompt_template = j.value("prompt_template", "");
    config.pdf_extractor_command = j.value("pdf_extractor_command", "");
    if (j.contains("chunking")) {
        config.chunking = codec::chunking_policy_from_json(j.at("chunking"));
    }
    if (j.contains("grid")) config.grid = codec::grid_from_json(j.at("grid"));

    const ordered_json providers = j.value("providers", ordered_json::object());
    config.retrieval = provider_from_json(providers.value("retrieval", ordered_json()), 64);
    config.evaluation = provider_from_json(providers.value("evaluation", ordered_json()), 64);
    config.llm = provider_from_json(providers.value("llm", ordered_json()), 0);

    const ordered_json gateway = j.value("gateway", ordered_json::object());
    config.max_attempts = gateway.value("max_attempts", config.max_attempts);
    config.backoff_base_ms = gateway.value("backoff_base_ms", config.backoff_base_ms);
    config.max_context_chars = gateway.value("max_context_chars", config.max_context_chars);
    const std::string overflow = gateway.value("overflow_policy", std::string("error"));
    if (overflow == "error") {
        config.overflow_policy = OverflowPolicy::error;
    } else if (overflow == "truncate_context") {
        config.overflow_policy = OverflowPolicy::truncate_context;
    } else {
        throw Error(ErrorCode::invalid_argument,
                    "overflow_policy must be 'error' or 'truncate_context'");
    }
    const std::string style = gateway.value("message_style", std::string("single_user"));
    if (style == "single_user") {
        config.message_style = MessageStyle::single_user;
    } else if (style == "system_context") {
        config.message_style = MessageStyle::system_context;
    } else {
        throw Error(ErrorCode::invalid_argument,
                    "message_style must be 'single_user' or 'system_context'");
    }
    return config;
}

Providers build_providers(const AppConfig& config, bool force_mock) {
    Providers out;

    auto embedding_slot = [&](const ProviderConfig& p) -> std::shared_ptr<EmbeddingProvider> {
        if (force_mock || p.kind == "mock") {
            return std::make_shared<MockEmbeddingProvider>(p.dim ? p.dim : 64);
        }
        HttpEmbeddingConfig http;
        http.base_url = p.base_url;
        if (!p.path.empty()) http.path = p.path;
        http.model = p.model;
        if (!p.api_key_env.empty()) http.api_key_env = p.api_key_env;
        http.dim = p.dim;
        if (p.max_in_flight > 0) http.max_in_flight = p.max_in_flight;
        if (p.timeout_seconds > 0) http.timeout_seconds = p.timeout_seconds;
        return make_http_embedding_provider(http);
    };
    out.retrieval = embedding_slot(config.retrieval);
    out.evaluation = embedding_slot(config.evaluation);

    const ProviderConfig& p = config.llm;
    if (force_mock || p.kind == "mock") {
        auto mock = std::make_shared<MockLlmProvider>(p.seed);
        if (!p.script.empty()) {
            mock->load_script(config.resolve(p.script).string());
        }
        out.llm = mock;
    } else {
        HttpLlmConfig http;
        http.base_url = p.base_url;
        if (!p.path.empty()) http.path = p.path;
        http.model = p.model;
        if (!p.api_key_env.empty()) http.api_key_env = p.api_key_env;
        http.message_style = config.message_style;
        if (p.max_in_flight > 0) http.max_in_flight = p.max_in_flight;
        if (p.timeout_seconds > 0) http.timeout_seconds = p.timeout_seconds;
        out.llm = make_http_llm_provider(http);
    }
    return out;
}

GatewayOptions gateway_options(const AppConfig& config) {
    GatewayOptions options;
    options.max_attempts = config.max_attempts;
    options.backoff_base_ms = config.backoff_base_ms;
    options.max_context_chars = config.max_context_chars;
    options.overflow_policy = config.overflow_policy;
    return options;
}

}  // namespace cqgen
