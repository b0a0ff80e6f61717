#include "cqgen/rag.hpp"

#include <chrono>
#include <utility>

#include <nlohmann/json.hpp>

#include "cqgen/error.hpp"

namespace cqgen {

namespace {

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::string format_temperature(double t) {
    // Shortest round-trip form, e.g. 1.0 -> "1.0", 0.75 -> "0.75".
    return nlohmann::json(t).dump();
}

}  // namespace

std::string to_string(RunMode mode) {
    return mode == RunMode::rag ? "rag" : "zero_shot";
}

RunMode run_mode_from_string(const std::string& name) {
    if (name == "rag") return RunMode::rag;
    if (name == "zero_shot") return RunMode::zero_shot;
    throw Error(ErrorCode::invalid_argument, "unknown run mode '" + name + "'");
}

std::string run_id_for(const RunConfig& config) {
    std::string id = to_string(config.mode);
    if (config.mode == RunMode::rag) {
        id += "-n" + std::to_string(config.n_paper);
    }
    id += "-t" + format_temperature(config.temperature);
    id += "-r" + std::to_string(config.repetition_index);
    return id;
}

EmbeddingVector build_query_vector(const RenderedPrompt& prompt, EmbeddingProvider& provider) {
    return embed_texts(provider, {prompt.text}).front();
}

std::vector<std::string> assemble_context(const std::vector<RetrievalHit>& hits) {
    std::vector<std::string> blocks;
    blocks.reserve(hits.size());
    for (const auto& hit : hits) {
        std::string block = "[" + hit.chunk.doc_id + " \xc2\xb7 " +
                            std::to_string(hit.chunk.chunk_index) + "]\n" + hit.chunk.text;
        blocks.push_back(std::move(block));
    }
    return blocks;
}

GenerationRun run_generation(const RunConfig& config,
                             const std::vector<SourceDocument>& corpus,
                             const RunProviders& providers,
                             const PromptTemplate& prompt_template) {
    if (!providers.llm) {
        throw Error(ErrorCode::invalid_argument, "run_generation needs an LLM provider");
    }
    if (config.mode == RunMode::rag && !providers.embedder) {
        throw Error(ErrorCode::invalid_argument, "rag mode needs an embedding provider");
    }

    GenerationRun run;
    run.config = config;
    // n_paper has no meaning without retrieval; store the canonical 0 so
    // records of equivalent zero-shot runs are identical.
    if (run.config.mode == RunMode::zero_shot) run.config.n_paper = 0;
    run.run_id = run_id_for(run.config);
    run.started_at_ms = now_ms();

    RenderedPrompt prompt = prompt_template.render(config.prompt_vars);
    run.prompt_text = prompt.text;
    run.template_version = prompt.template_version;

    std::vector<std::string> context;
    if (config.mode == RunMode::rag) {
        CorpusSelection selection = select_corpus(corpus, config.n_paper);
        if (selection.truncated) {
            run.notes.push_back("corpus smaller than n_paper=" + std::to_string(config.n_paper) +
                                "; using all " + std::to_string(selection.documents.size()) +
                                " documents");
        }

        std::vector<Chunk> chunks;
        for (const auto& doc : selection.documents) {
            auto doc_chunks = chunk_document(doc, config.chunking);
            chunks.insert(chunks.end(), doc_chunks.begin(), doc_chunks.end());
        }

        std::shared_ptr<const VectorIndex> index;
        if (providers.index_cache) {
            std::string key = index_cache_key(selection.documents, config.chunking,
                                              providers.embedder->provider_id());
            index = providers.index_cache->get_or_build(
                key, [&] { return build_index(chunks, *providers.embedder); });
        } else {
            index = std::make_shared<const VectorIndex>(build_index(chunks, *providers.embedder));
        }

        EmbeddingVector query = build_query_vector(prompt, *providers.embedder);
        run.retrieved_hits = retrieve_top_k(*index, query, config.k);
        context = assemble_context(run.retrieved_hits);
        if (run.retrieved_hits.empty()) {
            run.degraded = true;
            run.notes.push_back("rag run retrieved no context; generation proceeded zero-shot");
        }
    }

    ChatRequest request;
    request.model = config.model;
    request.temperature = config.temperature;
    request.prompt_text = prompt.text;
    request.context_blocks = std::move(context);
    request.request_seed = static_cast<std::uint64_t>(config.repetition_index);

    LlmGateway gateway(providers.llm, providers.gateway);
    ChatResponse response = gateway.complete(request);
    run.raw_response = response.raw_text;
    run.llm_latency_ms = response.latency_ms;

    run.parsed = parse_cqs(run.raw_response, config.prompt_vars.n_cqs);
    run.finished_at_ms = now_ms();
    return run;
}

}  // namespace cqgen
