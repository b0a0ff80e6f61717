#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cqgen/corpus.hpp"
#include "cqgen/embedding.hpp"

namespace cqgen {

struct IndexEntry {
    Chunk chunk;
    EmbeddingVector vector;
};

/// Immutable store of (chunk, vector) pairs from one embedding provider.
/// Keys (doc_id, chunk_index) are unique; all vectors share one dimension.
/// Vectors are kept exactly as the provider produced them.
struct VectorIndex {
    std::string provider_id;
    std::size_t dim = 0;
    std::vector<IndexEntry> entries;
};

struct RetrievalHit {
    Chunk chunk;
    double score = 0.0;  // cosine similarity against the query
};

/// Embeds all chunk texts (batched) and assembles an index.
VectorIndex build_index(const std::vector<Chunk>& chunks, EmbeddingProvider& provider);

/// Exact full scan. Hits come back sorted by score descending, then by
/// (doc_id, chunk_index) ascending so equal scores order identically on
/// every platform. Returns min(k, |index|) hits.
/// Throws EmptyIndex or DimensionMismatch.
std::vector<RetrievalHit> retrieve_top_k(const VectorIndex& index, const EmbeddingVector& query,
                                         int k);

/// Versioned JSON persistence. load_index checks the format version and,
/// when expected_provider_id is non-empty, refuses an index built by a
/// different provider (ProviderMismatch).
void save_index(const VectorIndex& index, const std::string& path);
VectorIndex load_index(const std::string& path, const std::string& expected_provider_id = "");

/// Concurrent read-mostly cache with build-once-per-key semantics: two
/// threads asking for the same key never trigger two builds.
class IndexCache {
public:
    using Builder = std::function<VectorIndex()>;

    std::shared_ptr<const VectorIndex> get_or_build(const std::string& key,
                                                    const Builder& builder);

    std::size_t size() const;
    std::size_t build_count() const;

private:
    mutable std::mutex mutex_;
    struct Slot {
        std::mutex build_mutex;
        std::shared_ptr<const VectorIndex> index;
    };
    std::map<std::string, std::shared_ptr<Slot>> slots_;
    std::size_t builds_ = 0;
};

/// Cache key for the index of one corpus subset: hashes the sorted doc ids,
/// the chunking policy and the provider id.
std::string index_cache_key(const std::vector<SourceDocument>& docs, const ChunkingPolicy& policy,
                            const std::string& provider_id);

}  // namespace cqgen
