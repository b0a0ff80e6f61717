#include "cqgen/corpus.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cqgen/error.hpp"
#include "cqgen/hash.hpp"

namespace fs = std::filesystem;

namespace cqgen {

const char* to_string(SourceFormat format) {
    switch (format) {
        case SourceFormat::plain_text: return "plain_text";
        case SourceFormat::markdown: return "markdown";
        case SourceFormat::pdf_extracted: return "pdf_extracted";
    }
    return "plain_text";
}

SourceFormat source_format_from_string(const std::string& name) {
    if (name == "plain_text" || name == "text") return SourceFormat::plain_text;
    if (name == "markdown" || name == "md") return SourceFormat::markdown;
    if (name == "pdf_extracted") return SourceFormat::pdf_extracted;
    throw Error(ErrorCode::unsupported_format, "unknown source format '" + name + "'");
}

const char* to_string(BoundaryMode mode) {
    return mode == BoundaryMode::hard_cut ? "hard_cut" : "sentence_snap";
}

BoundaryMode boundary_mode_from_string(const std::string& name) {
    if (name == "hard_cut") return BoundaryMode::hard_cut;
    if (name == "sentence_snap") return BoundaryMode::sentence_snap;
    throw Error(ErrorCode::invalid_policy, "unknown boundary mode '" + name + "'");
}

namespace {

std::string normalize_text(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(raw[i]);
        if (c == '\r') {
            out.push_back('\n');
            if (i + 1 < raw.size() && raw[i + 1] == '\n') ++i;
        } else if (c == '\n') {
            out.push_back('\n');
        } else if (c < 0x20 || c == 0x7f) {
            // control character, dropped
        } else {
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

bool is_sentence_terminator(char c) {
    return c == '.' || c == '!' || c == '?';
}

}  // namespace

SourceDocument ingest_document(const std::string& raw, SourceFormat format,
                               const std::string& doc_id, int priority_rank,
                               const std::string& title) {
    if (raw.empty()) {
        throw Error(ErrorCode::empty_document, "document '" + doc_id + "' has no content");
    }
    if (doc_id.empty()) {
        throw Error(ErrorCode::invalid_argument, "doc_id must be non-empty");
    }
    if (priority_rank < 1) {
        throw Error(ErrorCode::invalid_argument, "priority_rank must be >= 1");
    }
    SourceDocument doc;
    doc.doc_id = doc_id;
    doc.title = title;
    doc.priority_rank = priority_rank;
    doc.source_format = format;
    doc.text = normalize_text(raw);
    if (doc.text.empty()) {
        throw Error(ErrorCode::empty_document,
                    "document '" + doc_id + "' is empty after normalization");
    }
    doc.char_count = doc.text.size();
    return doc;
}

std::vector<Chunk> chunk_document(const SourceDocument& doc, const ChunkingPolicy& policy) {
    if (policy.target_size == 0 || policy.overlap >= policy.target_size) {
        throw Error(ErrorCode::invalid_policy, "overlap must be smaller than target_size");
    }
    std::vector<Chunk> chunks;
    const std::string& text = doc.text;
    const std::size_t len = text.size();
    if (len == 0) return chunks;

    const std::size_t stride = policy.target_size - policy.overlap;

    if (policy.boundary_mode == BoundaryMode::hard_cut) {
        std::size_t i = 0;
        for (std::size_t start = 0; start < len; start = ++i * stride) {
            Chunk c;
            c.doc_id = doc.doc_id;
            c.chunk_index = i;
            c.span_start = start;
            c.span_end = std::min(start + policy.target_size, len);
            c.text = text.substr(c.span_start, c.span_end - c.span_start);
            chunks.push_back(std::move(c));
        }
        return chunks;
    }

    // sentence_snap: the nominal end moves forward to just past the next
    // sentence terminator, searching at most 20% of target_size ahead.
    const std::size_t slack = policy.target_size / 5;
    std::size_t start = 0;
    std::size_t index = 0;
    while (start < len) {
        std::size_t end = std::min(start + policy.target_size, len);
        if (end < len) {
            std::size_t limit = std::min(end + slack, len);
            for (std::size_t j = end; j < limit; ++j) {
                if (is_sentence_terminator(text[j])) {
                    end = j + 1;
                    break;
                }
            }
        }
        Chunk c;
        c.doc_id = doc.doc_id;
        c.chunk_index = index++;
        c.span_start = start;
        c.span_end = end;
        c.text = text.substr(start, end - start);
        chunks.push_back(std::move(c));
        if (end >= len) break;
        start = end > policy.overlap ? end - policy.overlap : 0;
    }
    return chunks;
}

CorpusSelection select_corpus(const std::vector<SourceDocument>& manifest, int n_paper) {
    if (manifest.empty()) {
        throw Error(ErrorCode::empty_manifest, "corpus manifest has no documents");
    }
    if (n_paper < 1) {
        throw Error(ErrorCode::invalid_argument, "n_paper must be >= 1");
    }
    std::set<int> ranks;
    for (const auto& doc : manifest) {
        if (!ranks.insert(doc.priority_rank).second) {
            throw Error(ErrorCode::invalid_manifest,
                        "duplicate priority_rank " + std::to_string(doc.priority_rank));
        }
    }
    CorpusSelection selection;
    selection.documents = manifest;
    std::sort(selection.documents.begin(), selection.documents.end(),
              [](const SourceDocument& a, const SourceDocument& b) {
                  return a.priority_rank < b.priority_rank;
              });
    if (static_cast<std::size_t>(n_paper) >= selection.documents.size()) {
        selection.truncated = static_cast<std::size_t>(n_paper) > selection.documents.size();
        return selection;
    }
    selection.documents.resize(static_cast<std::size_t>(n_paper));
    return selection;
}

void validate_corpus(const std::vector<SourceDocument>& manifest) {
    std::set<std::string> ids;
    std::set<int> ranks;
    for (const auto& doc : manifest) {
        if (!ids.insert(doc.doc_id).second) {
            throw Error(ErrorCode::invalid_manifest, "duplicate doc_id '" + doc.doc_id + "'");
        }
        if (!ranks.insert(doc.priority_rank).second) {
            throw Error(ErrorCode::invalid_manifest,
                        "duplicate priority_rank " + std::to_string(doc.priority_rank));
        }
        if (doc.char_count != doc.text.size()) {
            throw Error(ErrorCode::invalid_manifest,
                        "char_count mismatch for doc '" + doc.doc_id + "'");
        }
    }
    int expected = 1;
    for (int rank : ranks) {
        if (rank != expected++) {
            throw Error(ErrorCode::invalid_manifest,
                        "priority ranks must form 1..M without gaps");
        }
    }
}

std::string corpus_hash(const std::vector<SourceDocument>& manifest) {
    std::vector<const SourceDocument*> sorted;
    sorted.reserve(manifest.size());
    for (const auto& doc : manifest) sorted.push_back(&doc);
    std::sort(sorted.begin(), sorted.end(),
              [](const SourceDocument* a, const SourceDocument* b) { return a->doc_id < b->doc_id; });
    std::uint64_t h = kFnvOffset;
    for (const auto* doc : sorted) {
        h = fnv1a64(doc->doc_id, h);
        h = fnv1a64_mix(static_cast<std::uint64_t>(doc->priority_rank), h);
        h = fnv1a64_mix(fnv1a64(doc->text), h);
    }
    return to_hex(h);
}

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot read '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string run_extractor(const std::string& command, const fs::path& path) {
    std::string full = command + " '" + path.string() + "'";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) {
        throw Error(ErrorCode::io_error, "failed to launch extractor: " + command);
    }
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    int rc = pclose(pipe);
    if (rc != 0) {
        throw Error(ErrorCode::io_error,
                    "extractor exited with status " + std::to_string(rc) + " for " + path.string());
    }
    return out;
}

}  // namespace

std::vector<SourceDocument> load_corpus_manifest(const std::string& manifest_path,
                                                 const std::string& pdf_extractor_command) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::invalid_manifest,
                    std::string("cannot parse corpus manifest: ") + e.what());
    }
    if (!j.contains("documents") || !j["documents"].is_array()) {
        throw Error(ErrorCode::invalid_manifest, "manifest must contain a 'documents' array");
    }
    const fs::path base = fs::path(manifest_path).parent_path();
    std::vector<SourceDocument> docs;
    for (const auto& rec : j["documents"]) {
        std::string doc_id = rec.value("doc_id", "");
        std::string title = rec.value("title", "");
        int rank = rec.value("priority_rank", 0);
        std::string rel = rec.value("path", "");
        std::string format_name = rec.value("format", "plain_text");
        if (doc_id.empty() || rel.empty() || rank < 1) {
            throw Error(ErrorCode::invalid_manifest,
                        "manifest record needs doc_id, path and priority_rank >= 1");
        }
        fs::path doc_path = fs::path(rel).is_absolute() ? fs::path(rel) : base / rel;
        std::string raw;
        SourceFormat format;
        if (format_name == "pdf") {
            if (pdf_extractor_command.empty()) {
                throw Error(ErrorCode::unsupported_format,
                            "document '" + doc_id +
                                "' is a PDF but no pdf_extractor_command is configured");
            }
            raw = run_extractor(pdf_extractor_command, doc_path);
            format = SourceFormat::pdf_extracted;
        } else {
            format = source_format_from_string(format_name);
            raw = read_file(doc_path);
        }
        docs.push_back(ingest_document(raw, format, doc_id, rank, title));
    }
    if (docs.empty()) {
        throw Error(ErrorCode::empty_manifest, "corpus manifest has no documents");
    }
    validate_corpus(docs);
    return docs;
}

}  // namespace cqgen
