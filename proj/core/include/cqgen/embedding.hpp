#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace cqgen {

/// Dense embedding. Components must be finite; dim() is fixed per provider.
struct EmbeddingVector {
    std::vector<double> values;

    std::size_t dim() const { return values.size(); }
};

/// Cosine similarity dot(a,b) / (|a| * |b|).
/// Throws DimensionMismatch or ZeroVector.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;

    /// Identifies the provider and its parameters; persisted alongside
    /// indexes so stale vectors are never mixed with a different model.
    virtual std::string provider_id() const = 0;
    virtual std::size_t dim() const = 0;

    /// One vector per input text, order preserved. Implementations may assume
    /// inputs were validated by embed_texts().
    virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;
};

/// Validating front door for providers: rejects empty batches and
/// blank texts (EmptyText), and checks the provider returned one
/// finite vector of the right dimension per input.
std::vector<EmbeddingVector> embed_texts(EmbeddingProvider& provider,
                                         const std::vector<std::string>& texts);

/// Deterministic offline embedder. Projection rule: the text is lowercased,
/// whitespace runs collapse to a single space, and every character n-gram
/// (default n=3; shorter texts contribute the whole text as one gram) is
/// FNV-1a hashed; bucket hash % dim is incremented. Vectors are raw counts,
/// not normalized. Pure function of the text, identical on every platform.
class MockEmbeddingProvider : public EmbeddingProvider {
public:
    explicit MockEmbeddingProvider(std::size_t dim = 64, std::size_t ngram = 3);

    std::string provider_id() const override;
    std::size_t dim() const override { return dim_; }
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;

    EmbeddingVector embed_one(const std::string& text) const;

private:
    std::size_t dim_;
    std::size_t ngram_;
};

/// Caches embeddings per distinct text. Transparent: provider_id() and dim()
/// delegate to the wrapped provider, so cached and uncached evaluation agree.
/// Safe for concurrent calls.
class MemoizingEmbedder : public EmbeddingProvider {
public:
    explicit MemoizingEmbedder(std::shared_ptr<EmbeddingProvider> inner);

    std::string provider_id() const override { return inner_->provider_id(); }
    std::size_t dim() const override { return inner_->dim(); }
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;

    std::size_t cache_size() const;
    /// Number of texts forwarded to the wrapped provider so far.
    std::size_t miss_count() const;

private:
    std::shared_ptr<EmbeddingProvider> inner_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, EmbeddingVector> cache_;
    std::size_t misses_ = 0;
};

struct HttpEmbeddingConfig {
    std::string base_url;           // e.g. "https://api.example.com"
    std::string path = "/v1/embeddings";
    std::string model;
    std::string api_key_env = "CQGEN_API_KEY";
    std::size_t dim = 0;            // expected dimension; 0 = accept first response's
    int max_in_flight = 4;
    int timeout_seconds = 60;
};

/// Remote provider speaking a JSON embeddings protocol:
/// POST {"model": ..., "input": [texts]} ->
/// {"data": [{"embedding": [...]}, ...]}. The API key is read from the
/// environment variable named in the config and sent as a Bearer token.
/// At most max_in_flight requests run concurrently.
std::shared_ptr<EmbeddingProvider> make_http_embedding_provider(const HttpEmbeddingConfig& config);

}  // namespace cqgen
