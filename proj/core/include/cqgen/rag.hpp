#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cqgen/corpus.hpp"
#include "cqgen/cq_parser.hpp"
#include "cqgen/embedding.hpp"
#include "cqgen/index.hpp"
#include "cqgen/llm.hpp"
#include "cqgen/prompt.hpp"

namespace cqgen {

enum class RunMode { rag, zero_shot };

std::string to_string(RunMode mode);
RunMode run_mode_from_string(const std::string& name);

/// Everything one generation run depends on. All fields serialize into the
/// experiment manifest so a run can be replayed from its record alone.
struct RunConfig {
    RunMode mode = RunMode::rag;
    int n_paper = 1;           // ignored (and stored as 0) in zero_shot mode
    double temperature = 1.0;  // [0, 2]
    std::string model;
    int k = 5;                 // retrieval depth, ignored in zero_shot mode
    int repetition_index = 0;  // doubles as the provider seed for mock runs
    ChunkingPolicy chunking;
    PromptVariables prompt_vars;
};

/// Canonical run identifier, e.g. "rag-n3-t1.25-r7" or "zero_shot-t1.0-r0".
/// Temperatures use shortest-round-trip formatting so ids stay stable.
std::string run_id_for(const RunConfig& config);

struct GenerationRun {
    std::string run_id;
    RunConfig config;
    std::string prompt_text;       // rendered prompt sent to the LLM
    std::string template_version;
    std::vector<RetrievalHit> retrieved_hits;  // empty for zero_shot
    std::string raw_response;
    ParsedCQList parsed;
    std::int64_t started_at_ms = 0;  // wall clock, unix milliseconds
    std::int64_t finished_at_ms = 0;
    std::int64_t llm_latency_ms = 0;
    bool degraded = false;  // rag run that ended up with no retrieved context
    std::vector<std::string> notes;
};

/// Providers and knobs shared by every run of an experiment. `embedder` may
/// be null if only zero_shot runs are executed; `index_cache` is optional and
/// lets n_paper sweeps reuse sub-corpus indexes.
struct RunProviders {
    std::shared_ptr<EmbeddingProvider> embedder;
    std::shared_ptr<LlmProvider> llm;
    IndexCache* index_cache = nullptr;
    GatewayOptions gateway;
};

/// Embeds the full rendered prompt as the retrieval query.
EmbeddingVector build_query_vector(const RenderedPrompt& prompt, EmbeddingProvider& provider);

/// One context block per hit, in the given order, each prefixed with a
/// source header line "[doc_id · chunk_index]".
std::vector<std::string> assemble_context(const std::vector<RetrievalHit>& hits);

/// Executes a single run end-to-end. rag mode: select the top-n_paper corpus
/// subset, chunk, index (cached), retrieve top-k for the rendered prompt,
/// complete with context, parse. zero_shot mode: complete with no context;
/// the embedding provider is never touched.
GenerationRun run_generation(const RunConfig& config,
                             const std::vector<SourceDocument>& corpus,
                             const RunProviders& providers,
                             const PromptTemplate& prompt_template = PromptTemplate::builtin());

}  // namespace cqgen
