#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cqgen {

enum class SourceFormat { plain_text, markdown, pdf_extracted };

const char* to_string(SourceFormat format);
SourceFormat source_format_from_string(const std::string& name);

/// One corpus paper. `text` is normalized plain text (LF line endings,
/// no control characters other than LF). `priority_rank` 1 is the most
/// important document of its manifest.
struct SourceDocument {
    std::string doc_id;
    std::string title;
    int priority_rank = 1;
    std::string text;
    SourceFormat source_format = SourceFormat::plain_text;
    std::size_t char_count = 0;
};

enum class BoundaryMode { hard_cut, sentence_snap };

const char* to_string(BoundaryMode mode);
BoundaryMode boundary_mode_from_string(const std::string& name);

/// Sizes are in characters (bytes of the UTF-8 text). Requires overlap < target_size.
struct ChunkingPolicy {
    std::size_t target_size = 1000;
    std::size_t overlap = 200;
    BoundaryMode boundary_mode = BoundaryMode::hard_cut;
};

/// A contiguous slice [span_start, span_end) of a document's text.
struct Chunk {
    std::string doc_id;
    std::size_t chunk_index = 0;
    std::size_t span_start = 0;
    std::size_t span_end = 0;
    std::string text;
};

/// Normalizes and wraps raw input into a SourceDocument.
/// Line endings become LF; control characters other than LF are dropped.
/// Throws EmptyDocument if the input is empty (before or after normalization).
SourceDocument ingest_document(const std::string& raw, SourceFormat format,
                               const std::string& doc_id, int priority_rank,
                               const std::string& title = "");

/// Splits a document into overlapping chunks. In hard_cut mode chunk i starts
/// at i * (target_size - overlap) and the final chunk ends at char_count.
/// In sentence_snap mode each boundary moves forward to the next sentence
/// terminator, at most 20% of target_size away. Throws InvalidPolicy when
/// overlap >= target_size.
std::vector<Chunk> chunk_document(const SourceDocument& doc, const ChunkingPolicy& policy);

struct CorpusSelection {
    std::vector<SourceDocument> documents;
    /// Set when n_paper exceeded the manifest size and all documents were returned.
    bool truncated = false;
};

/// Picks the n_paper highest-priority documents (smallest rank first).
/// Throws EmptyManifest on an empty manifest and InvalidManifest on
/// duplicate priority ranks.
CorpusSelection select_corpus(const std::vector<SourceDocument>& manifest, int n_paper);

/// Fails with InvalidManifest unless doc_ids are unique and priority ranks
/// are exactly 1..M.
void validate_corpus(const std::vector<SourceDocument>& manifest);

/// Stable fingerprint over doc ids, ranks and texts; used to bind run
/// manifests to the corpus they were generated from.
std::string corpus_hash(const std::vector<SourceDocument>& manifest);

/// Loads a corpus manifest file (JSON: {"documents": [{doc_id, title,
/// priority_rank, path, format}, ...]}). Paths are resolved relative to the
/// manifest's directory. Records with format "pdf" require
/// `pdf_extractor_command` (a shell command receiving the path as its last
/// argument and printing extracted text to stdout); without one they fail
/// with UnsupportedFormat.
std::vector<SourceDocument> load_corpus_manifest(const std::string& manifest_path,
                                                 const std::string& pdf_extractor_command = "");

}  // namespace cqgen
