#include "cqgen/embedding.hpp"

#include <cctype>
#include <cmath>

#include "cqgen/error.hpp"
#include "cqgen/hash.hpp"

namespace cqgen {

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "cosine over dims " + std::to_string(a.dim()) + " and " +
                        std::to_string(b.dim()));
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na == 0.0 || nb == 0.0) {
        throw Error(ErrorCode::zero_vector, "cosine is undefined for a zero vector");
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

bool is_blank(const std::string& text) {
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

std::vector<EmbeddingVector> embed_texts(EmbeddingProvider& provider,
                                         const std::vector<std::string>& texts) {
    if (texts.empty()) {
        throw Error(ErrorCode::invalid_argument, "embed_texts requires at least one text");
    }
    for (const auto& text : texts) {
        if (text.empty() || is_blank(text)) {
            throw Error(ErrorCode::empty_text, "cannot embed an empty text");
        }
    }
    auto vectors = provider.embed(texts);
    if (vectors.size() != texts.size()) {
        throw Error(ErrorCode::provider_unavailable,
                    "provider returned " + std::to_string(vectors.size()) + " vectors for " +
                        std::to_string(texts.size()) + " texts");
    }
    for (const auto& v : vectors) {
        if (v.dim() != provider.dim()) {
            throw Error(ErrorCode::dimension_mismatch,
                        "provider returned vector of dim " + std::to_string(v.dim()) +
                            ", expected " + std::to_string(provider.dim()));
        }
        for (double x : v.values) {
            if (!std::isfinite(x)) {
                throw Error(ErrorCode::provider_unavailable,
                            "provider returned a non-finite embedding component");
            }
        }
    }
    return vectors;
}

MockEmbeddingProvider::MockEmbeddingProvider(std::size_t dim, std::size_t ngram)
    : dim_(dim), ngram_(ngram) {
    if (dim_ == 0 || ngram_ == 0) {
        throw Error(ErrorCode::invalid_argument, "mock embedder needs dim >= 1 and ngram >= 1");
    }
}

std::string MockEmbeddingProvider::provider_id() const {
    return "mock-ngram" + std::to_string(ngram_) + "-d" + std::to_string(dim_);
}

EmbeddingVector MockEmbeddingProvider::embed_one(const std::string& text) const {
    std::string norm;
    norm.reserve(text.size());
    bool in_space = false;
    for (char raw : text) {
        unsigned char c = static_cast<unsigned char>(raw);
        if (std::isspace(c)) {
            in_space = true;
            continue;
        }
        if (in_space && !norm.empty()) norm.push_back(' ');
        in_space = false;
        norm.push_back(static_cast<char>(std::tolower(c)));
    }

    EmbeddingVector v;
    v.values.assign(dim_, 0.0);
    if (norm.size() < ngram_) {
        v.values[fnv1a64(norm) % dim_] += 1.0;
        return v;
    }
    for (std::size_t i = 0; i + ngram_ <= norm.size(); ++i) {
        std::uint64_t h = fnv1a64(std::string_view(norm).substr(i, ngram_));
        v.values[h % dim_] += 1.0;
    }
    return v;
}

std::vector<EmbeddingVector> MockEmbeddingProvider::embed(const std::vector<std::string>& texts) {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& text : texts) out.push_back(embed_one(text));
    return out;
}

MemoizingEmbedder::MemoizingEmbedder(std::shared_ptr<EmbeddingProvider> inner)
    : inner_(std::move(inner)) {
    if (!inner_) {
        throw Error(ErrorCode::invalid_argument, "MemoizingEmbedder needs a provider");
    }
}

std::vector<EmbeddingVector> MemoizingEmbedder::embed(const std::vector<std::string>& texts) {
    std::vector<EmbeddingVector> out(texts.size());
    std::vector<std::string> missing;  // distinct uncached texts, first-seen order
    std::unordered_map<std::string, std::size_t> missing_pos;
    std::vector<std::pair<std::size_t, std::size_t>> fills;  // (out slot, missing slot)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (std::size_t i = 0; i < texts.size(); ++i) {
            auto it = cache_.find(texts[i]);
            if (it != cache_.end()) {
                out[i] = it->second;
                continue;
            }
            auto [pos, inserted] = missing_pos.try_emplace(texts[i], missing.size());
            if (inserted) missing.push_back(texts[i]);
            fills.emplace_back(i, pos->second);
        }
    }
    if (!missing.empty()) {
        auto fresh = inner_->embed(missing);
        std::lock_guard<std::mutex> lock(mutex_);
        misses_ += missing.size();
        for (const auto& [out_slot, missing_slot] : fills) {
            out[out_slot] = fresh[missing_slot];
        }
        for (std::size_t i = 0; i < missing.size(); ++i) {
            cache_.emplace(std::move(missing[i]), std::move(fresh[i]));
        }
    }
    return out;
}

std::size_t MemoizingEmbedder::cache_size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
}

std::size_t MemoizingEmbedder::miss_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return misses_;
}

}  // namespace cqgen
