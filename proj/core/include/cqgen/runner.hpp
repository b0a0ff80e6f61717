#pragma once

#include <filesystem>
#include <functional>

#include "cqgen/manifest.hpp"
#include "cqgen/rag.hpp"

namespace cqgen {

struct ExecuteOptions {
    /// resume=false re-executes every run; resume=true skips runs already done
    /// (failed and pending runs are attempted either way).
    bool resume = false;
    /// Worker threads; 1 by default to respect provider rate limits.
    int parallelism = 1;
    /// Called after each run completes, with its status already persisted.
    /// Returning false stops scheduling further runs (used to test
    /// interruption). In-flight runs still finish.
    std::function<bool(const RunEntry&)> after_run;
};

struct ExecuteSummary {
    int executed = 0;
    int succeeded = 0;
    int failed = 0;
    int skipped = 0;
    bool stopped_early = false;
};

/// Executes the manifest's runs with the given providers, persisting the
/// manifest after every status change and each run's artifacts to its record
/// file. Individual run failures are recorded (status failed + error line in
/// the record), never propagated; the grid always runs to completion unless
/// after_run stops it.
ExecuteSummary execute(RunManifest& manifest, const std::filesystem::path& manifest_path,
                       const std::vector<SourceDocument>& corpus, const RunProviders& providers,
                       const ExecuteOptions& options = {},
                       const PromptTemplate& prompt_template = PromptTemplate::builtin());

}  // namespace cqgen
