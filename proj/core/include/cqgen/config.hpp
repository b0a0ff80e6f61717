#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "cqgen/corpus.hpp"
#include "cqgen/embedding.hpp"
#include "cqgen/grid.hpp"
#include "cqgen/llm.hpp"
#include "cqgen/prompt.hpp"

namespace cqgen {

/// One provider slot of the config file. kind selects the backend:
/// "mock" (deterministic, offline) or "http" (remote JSON API).
struct ProviderConfig {
    std::string kind = "mock";
    // mock embedding providers
    std::size_t dim = 64;
    // mock LLM provider
    std::uint64_t seed = 0;
    std::string script;  // optional fixture script path (relative to config)
    // http providers; zeros/blanks fall back to the provider defaults
    std::string base_url;
    std::string path;
    std::string model;
    std::string api_key_env;
    int max_in_flight = 0;
    int timeout_seconds = 0;
};

/// Parsed application config. All relative paths in the file resolve against
/// the config file's directory (`base_dir`).
struct AppConfig {
    std::filesystem::path base_dir;
    std::string corpus_manifest;
    std::string ground_truth;
    std::string prompt_preset;
    std::string prompt_template;  // optional custom template file
    std::string pdf_extractor_command;
    ChunkingPolicy chunking;
    ExperimentGrid grid;
    ProviderConfig retrieval;
    ProviderConfig evaluation;
    ProviderConfig llm;
    int max_attempts = 3;
    int backoff_base_ms = 250;
    std::size_t max_context_chars = 400000;
    OverflowPolicy overflow_policy = OverflowPolicy::error;
    MessageStyle message_style = MessageStyle::single_user;

    /// base_dir-relative resolution; absolute inputs pass through.
    std::filesystem::path resolve(const std::string& rel) const;
};

AppConfig load_app_config(const std::filesystem::path& path);

struct Providers {
    std::shared_ptr<EmbeddingProvider> retrieval;
    std::shared_ptr<EmbeddingProvider> evaluation;
    std::shared_ptr<LlmProvider> llm;
};

/// Instantiates the three provider slots. force_mock swaps every slot to its
/// mock backend regardless of configured kind (the --mock flag).
Providers build_providers(const AppConfig& config, bool force_mock = false);

GatewayOptions gateway_options(const AppConfig& config);

}  // namespace cqgen
