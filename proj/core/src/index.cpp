#include "cqgen/index.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cqgen/error.hpp"
#include "cqgen/hash.hpp"

namespace cqgen {

namespace {

constexpr int kIndexFormatVersion = 1;

}  // namespace

VectorIndex build_index(const std::vector<Chunk>& chunks, EmbeddingProvider& provider) {
    if (chunks.empty()) {
        throw Error(ErrorCode::empty_index, "cannot build an index from zero chunks");
    }
    std::set<std::pair<std::string, std::size_t>> keys;
    std::vector<std::string> texts;
    texts.reserve(chunks.size());
    for (const auto& chunk : chunks) {
        if (!keys.emplace(chunk.doc_id, chunk.chunk_index).second) {
            throw Error(ErrorCode::invalid_argument,
                        "duplicate chunk key (" + chunk.doc_id + ", " +
                            std::to_string(chunk.chunk_index) + ")");
        }
        texts.push_back(chunk.text);
    }
    auto vectors = embed_texts(provider, texts);
    VectorIndex index;
    index.provider_id = provider.provider_id();
    index.dim = provider.dim();
    index.entries.reserve(chunks.size());
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        index.entries.push_back({chunks[i], std::move(vectors[i])});
    }
    return index;
}

std::vector<RetrievalHit> retrieve_top_k(const VectorIndex& index, const EmbeddingVector& query,
                                         int k) {
    if (index.entries.empty()) {
        throw Error(ErrorCode::empty_index, "retrieval over an empty index");
    }
    if (query.dim() != index.dim) {
        throw Error(ErrorCode::dimension_mismatch,
                    "query dim " + std::to_string(query.dim()) + " vs index dim " +
                        std::to_string(index.dim));
    }
    if (k < 1) {
        throw Error(ErrorCode::invalid_argument, "k must be >= 1");
    }
    std::vector<RetrievalHit> hits;
    hits.reserve(index.entries.size());
    for (const auto& entry : index.entries) {
        hits.push_back({entry.chunk, cosine(query, entry.vector)});
    }
    std::sort(hits.begin(), hits.end(), [](const RetrievalHit& a, const RetrievalHit& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.chunk.doc_id != b.chunk.doc_id) return a.chunk.doc_id < b.chunk.doc_id;
        return a.chunk.chunk_index < b.chunk.chunk_index;
    });
    if (hits.size() > static_cast<std::size_t>(k)) {
        hits.resize(static_cast<std::size_t>(k));
    }
    return hits;
}

void save_index(const VectorIndex& index, const std::string& path) {
    nlohmann::ordered_json j;
    j["format_version"] = kIndexFormatVersion;
    j["provider_id"] = index.provider_id;
    j["dim"] = index.dim;
    auto& entries = j["entries"] = nlohmann::ordered_json::array();
    for (const auto& entry : index.entries) {
        nlohmann::ordered_json rec;
        rec["doc_id"] = entry.chunk.doc_id;
        rec["chunk_index"] = entry.chunk.chunk_index;
        rec["span_start"] = entry.chunk.span_start;
        rec["span_end"] = entry.chunk.span_end;
        rec["text"] = entry.chunk.text;
        rec["values"] = entry.vector.values;
        entries.push_back(std::move(rec));
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::io_error, "cannot write index file '" + path + "'");
    }
    out << j.dump(2) << '\n';
}

VectorIndex load_index(const std::string& path, const std::string& expected_provider_id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot read index file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::io_error, std::string("cannot parse index file: ") + e.what());
    }
    if (j.value("format_version", -1) != kIndexFormatVersion) {
        throw Error(ErrorCode::io_error,
                    "unsupported index format version in '" + path + "'");
    }
    VectorIndex index;
    index.provider_id = j.value("provider_id", "");
    index.dim = j.value("dim", std::size_t{0});
    if (!expected_provider_id.empty() && index.provider_id != expected_provider_id) {
        throw Error(ErrorCode::provider_mismatch,
                    "index was built with provider '" + index.provider_id +
                        "' but current config expects '" + expected_provider_id + "'");
    }
    for (const auto& rec : j.at("entries")) {
        IndexEntry entry;
        entry.chunk.doc_id = rec.at("doc_id").get<std::string>();
        entry.chunk.chunk_index = rec.at("chunk_index").get<std::size_t>();
        entry.chunk.span_start = rec.at("span_start").get<std::size_t>();
        entry.chunk.span_end = rec.at("span_end").get<std::size_t>();
        entry.chunk.text = rec.at("text").get<std::string>();
        entry.vector.values = rec.at("values").get<std::vector<double>>();
        if (entry.vector.dim() != index.dim) {
            throw Error(ErrorCode::dimension_mismatch,
                        "index entry dimension disagrees with header in '" + path + "'");
        }
        index.entries.push_back(std::move(entry));
    }
    return index;
}

std::shared_ptr<const VectorIndex> IndexCache::get_or_build(const std::string& key,
                                                            const Builder& builder) {
    std::shared_ptr<Slot> slot;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto& stored = slots_[key];
        if (!stored) stored = std::make_shared<Slot>();
        slot = stored;
    }
    // Per-slot mutex so concurrent requests for the same key build once
    // while other keys proceed independently.
    std::lock_guard<std::mutex> build_lock(slot->build_mutex);
    if (!slot->index) {
        slot->index = std::make_shared<const VectorIndex>(builder());
        std::lock_guard<std::mutex> lock(mutex_);
        ++builds_;
    }
    return slot->index;
}

std::size_t IndexCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return slots_.size();
}

std::size_t IndexCache::build_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return builds_;
}

std::string index_cache_key(const std::vector<SourceDocument>& docs, const ChunkingPolicy& policy,
                            const std::string& provider_id) {
    std::vector<std::string> ids;
    ids.reserve(docs.size());
    for (const auto& doc : docs) ids.push_back(doc.doc_id);
    std::sort(ids.begin(), ids.end());
    std::uint64_t h = kFnvOffset;
    for (const auto& id : ids) {
        h = fnv1a64(id, h);
        h = fnv1a64("|", h);
    }
    h = fnv1a64_mix(policy.target_size, h);
    h = fnv1a64_mix(policy.overlap, h);
    h = fnv1a64(to_string(policy.boundary_mode), h);
    h = fnv1a64(provider_id, h);
    return to_hex(h);
}

}  // namespace cqgen
