#pragma once

#include <string>
#include <vector>

#include "cqgen/embedding.hpp"

namespace cqgen {

/// Expert-authored competency questions used as the evaluation reference.
struct GroundTruthSet {
    std::string task_id;
    std::vector<std::string> cqs;  // non-empty, no exact duplicates
};

/// Loads ground truth from a plain-text file (one CQ per line, blank lines
/// skipped, task_id = file stem) or, for .json files, from
/// {"task_id": ..., "cqs": [...]}.
GroundTruthSet load_ground_truth(const std::string& path);

/// Best-match outcome for one generated CQ. valid <=> best_cosine >= theta.
struct MatchRecord {
    std::string cq_gen;
    std::string best_cq_gt;
    double best_cosine = -1.0;
    bool valid = false;
};

struct EvalReport {
    std::string run_id;
    std::vector<MatchRecord> records;
    int tp = 0;
    int fp = 0;
    double precision = 0.0;  // tp / (tp + fp)
    double theta = 0.0;
};

/// Matches each generated CQ against its most similar ground-truth CQ by
/// embedding cosine. Embeddings are computed once per distinct string in a
/// single batch; ties in best_cq_gt break toward earlier ground-truth order.
std::vector<MatchRecord> match_cqs(const std::vector<std::string>& gen, const GroundTruthSet& gt,
                                   EmbeddingProvider& embedder, double theta);

/// TP / (TP + FP) over the given records.
double precision(const std::vector<MatchRecord>& records);

/// match_cqs + precision bundled into a report for one run.
EvalReport evaluate_run(const std::string& run_id, const std::vector<std::string>& gen,
                        const GroundTruthSet& gt, EmbeddingProvider& embedder, double theta);

/// Re-derives validity, counts, and precision from the stored cosines under a
/// new threshold; no embedding calls.
EvalReport rethreshold(const EvalReport& report, double theta);

/// Stability of repeated runs at one hyperparameter setting.
struct ConsistencyReport {
    std::string setting_key;
    double std_precision = 0.0;
    double std_cosine = 0.0;  // over pairwise run-text similarities
    int n_runs = 0;
};

/// std_precision = sample std of the reports' precisions; std_cosine = sample
/// std of cosine similarities over all C(n,2) unordered pairs of run texts
/// (0.0 when there is exactly one pair). runs_text[i] is the newline-join of
/// run i's parsed CQs.
ConsistencyReport consistency(const std::vector<EvalReport>& reports,
                              const std::vector<std::string>& runs_text,
                              EmbeddingProvider& embedder, const std::string& setting_key = "");

}  // namespace cqgen
