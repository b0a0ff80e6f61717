#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cqgen/evaluation.hpp"
#include "cqgen/manifest.hpp"

namespace cqgen {

/// The full aggregation artifact, held as file contents so determinism can be
/// asserted byte-for-byte before anything touches the filesystem.
///
/// Files: report.json (all aggregates + per-run evaluations),
/// precision_table.csv (mode × n_paper → mean precision),
/// consistency_table.csv (temperature → std_precision / std_cosine),
/// and plot-ready series CSVs under series/.
struct ReportBundle {
    std::string report_json;
    std::string precision_csv;
    std::string consistency_csv;
    std::vector<std::pair<std::string, std::string>> series;  // filename -> content
};

/// Evaluates every done run in the manifest (embeddings memoized across
/// runs), aggregates precision per (mode, n_paper), consistency per
/// temperature, and runs one-way ANOVA on the n_paper factor (rag runs) and
/// the temperature factor (all runs). Failed runs are excluded from all
/// aggregates and surface as a footnote count. Output contains no wall-clock
/// data: rebuilding from the same records yields identical bytes.
/// Throws NoCompletedRuns when the manifest has no done runs.
ReportBundle build_report(const RunManifest& manifest, const std::filesystem::path& manifest_dir,
                          const GroundTruthSet& ground_truth,
                          std::shared_ptr<EmbeddingProvider> eval_embedder,
                          std::optional<double> theta_override = std::nullopt);

/// Writes report.json, the two tables and series/*.csv under out_dir.
void write_report_bundle(const ReportBundle& bundle, const std::filesystem::path& out_dir);

/// Order-sensitive hash over every file name and content in the bundle.
std::string bundle_fingerprint(const ReportBundle& bundle);

}  // namespace cqgen
