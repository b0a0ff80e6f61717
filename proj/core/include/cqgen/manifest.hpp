#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cqgen/evaluation.hpp"
#include "cqgen/grid.hpp"

namespace cqgen {

enum class RunStatus { pending, done, failed };

const char* to_string(RunStatus status);
RunStatus run_status_from_string(const std::string& name);

/// One scheduled run of the grid. `record_path` is relative to the manifest
/// directory; `error` keeps the latest failure message for failed runs.
struct RunEntry {
    std::string run_id;
    RunConfig config;
    RunStatus status = RunStatus::pending;
    std::string record_path;
    std::string error;
};

/// The persisted experiment plan: grid snapshot, environment fingerprints and
/// one entry per scheduled run. manifest_id is a deterministic hash of the
/// grid, prompt variables, corpus and provider identifiers, so re-creating a
/// manifest from unchanged inputs yields the same id.
struct RunManifest {
    std::string manifest_id;
    ExperimentGrid grid;
    std::string corpus_hash;
    std::string template_version;
    std::string retrieval_provider;
    std::string evaluation_provider;
    std::string llm_provider;
    std::string created_at;  // ISO-8601; informational, excluded from manifest_id
    std::vector<RunEntry> runs;
};

/// Expands the grid and assembles a fresh manifest with every run pending.
RunManifest make_manifest(const ExperimentGrid& grid, const ChunkingPolicy& chunking,
                          const PromptVariables& prompt_vars, const std::string& corpus_hash,
                          const std::string& template_version,
                          const std::string& retrieval_provider,
                          const std::string& evaluation_provider, const std::string& llm_provider,
                          const std::string& created_at);

/// Writes atomically (temp file + rename). persist -> load -> persist is
/// byte-identical.
void save_manifest(const RunManifest& manifest, const std::filesystem::path& path);

/// Throws ManifestCorrupt on unparseable or structurally invalid files.
RunManifest load_manifest(const std::filesystem::path& path);

/// All artifacts of one run, reassembled from its record file. Records are
/// line-delimited JSON with typed lines (config, hits, response, parsed,
/// eval, error); on read the last line of each type wins, and a torn final
/// line (crash during append) is ignored.
struct RunRecord {
    std::string run_id;
    std::optional<RunConfig> config;
    std::string prompt_text;
    std::string template_version;
    std::vector<RetrievalHit> hits;
    bool degraded = false;
    std::optional<std::string> raw_response;
    std::int64_t started_at_ms = 0;
    std::int64_t finished_at_ms = 0;
    std::int64_t llm_latency_ms = 0;
    std::vector<std::string> notes;
    std::optional<ParsedCQList> parsed;
    std::optional<EvalReport> eval;
    std::optional<std::string> error;
};

/// Replaces the record file with the artifacts of a fresh run attempt.
void write_run_record(const std::filesystem::path& path, const GenerationRun& run);

/// Appends an evaluation line (e.g. after `evaluate` or a theta sweep).
void append_run_eval(const std::filesystem::path& path, const EvalReport& report);

/// Appends a failure line for a run that threw before completing.
void append_run_error(const std::filesystem::path& path, const std::string& run_id,
                      const std::string& message);

RunRecord load_run_record(const std::filesystem::path& path);

}  // namespace cqgen
