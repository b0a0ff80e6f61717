#include "cqgen/evaluation.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "cqgen/error.hpp"
#include "cqgen/stats.hpp"

namespace cqgen {

namespace {

void validate_ground_truth(const GroundTruthSet& gt, const std::string& origin) {
    if (gt.cqs.empty()) {
        throw Error(ErrorCode::invalid_argument, "ground truth '" + origin + "' has no CQs");
    }
    std::unordered_set<std::string> seen;
    for (const auto& cq : gt.cqs) {
        if (cq.empty()) {
            throw Error(ErrorCode::invalid_argument,
                        "ground truth '" + origin + "' contains an empty CQ");
        }
        if (!seen.insert(cq).second) {
            throw Error(ErrorCode::invalid_argument,
                        "ground truth '" + origin + "' contains duplicate CQ: " + cq);
        }
    }
}

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

void require_theta(double theta) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw Error(ErrorCode::invalid_threshold,
                    "theta must lie strictly between 0 and 1, got " + std::to_string(theta));
    }
}

}  // namespace

GroundTruthSet load_ground_truth(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot read ground truth file '" + path + "'");
    }
    GroundTruthSet gt;
    if (std::filesystem::path(path).extension() == ".json") {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::io_error,
                        "cannot parse ground truth '" + path + "': " + e.what());
        }
        gt.task_id = j.value("task_id", "");
        for (const auto& cq : j.value("cqs", nlohmann::json::array())) {
            gt.cqs.push_back(cq.get<std::string>());
        }
    } else {
        gt.task_id = std::filesystem::path(path).stem().string();
        std::string line;
        while (std::getline(in, line)) {
            std::string cq = trim(line);
            if (!cq.empty()) gt.cqs.push_back(std::move(cq));
        }
    }
    validate_ground_truth(gt, path);
    return gt;
}

std::vector<MatchRecord> match_cqs(const std::vector<std::string>& gen, const GroundTruthSet& gt,
                                   EmbeddingProvider& embedder, double theta) {
    if (gen.empty()) {
        throw Error(ErrorCode::empty_generation, "no generated CQs to match");
    }
    validate_ground_truth(gt, gt.task_id.empty() ? "<in-memory>" : gt.task_id);
    require_theta(theta);

    // One batch over the distinct strings of both sides.
    std::vector<std::string> distinct;
    std::unordered_map<std::string, std::size_t> pos;
    auto intern = [&](const std::string& s) {
        auto [it, inserted] = pos.emplace(s, distinct.size());
        if (inserted) distinct.push_back(s);
        return it->second;
    };
    for (const auto& s : gen) intern(s);
    for (const auto& s : gt.cqs) intern(s);
    std::vector<EmbeddingVector> vectors = embed_texts(embedder, distinct);

    std::vector<MatchRecord> records;
    records.reserve(gen.size());
    for (const auto& cq_gen : gen) {
        const EmbeddingVector& v_gen = vectors[pos.at(cq_gen)];
        MatchRecord record;
        record.cq_gen = cq_gen;
        double best = -2.0;
        for (const auto& cq_gt : gt.cqs) {
            double c = cosine(v_gen, vectors[pos.at(cq_gt)]);
            if (c > best) {  // strict: ties keep the earliest ground-truth CQ
                best = c;
                record.best_cq_gt = cq_gt;
            }
        }
        record.best_cosine = best;
        record.valid = best >= theta;
        records.push_back(std::move(record));
    }
    return records;
}

double precision(const std::vector<MatchRecord>& records) {
    if (records.empty()) {
        throw Error(ErrorCode::empty_records, "cannot compute precision over zero records");
    }
    std::size_t tp = 0;
    for (const auto& r : records) {
        if (r.valid) ++tp;
    }
    return static_cast<double>(tp) / static_cast<double>(records.size());
}

EvalReport evaluate_run(const std::string& run_id, const std::vector<std::string>& gen,
                        const GroundTruthSet& gt, EmbeddingProvider& embedder, double theta) {
    EvalReport report;
    report.run_id = run_id;
    report.records = match_cqs(gen, gt, embedder, theta);
    report.theta = theta;
    for (const auto& r : report.records) {
        if (r.valid) {
            ++report.tp;
        } else {
            ++report.fp;
        }
    }
    report.precision = precision(report.records);
    return report;
}

EvalReport rethreshold(const EvalReport& report, double theta) {
    require_theta(theta);
    EvalReport out = report;
    out.theta = theta;
    out.tp = 0;
    out.fp = 0;
    for (auto& r : out.records) {
        r.valid = r.best_cosine >= theta;
        if (r.valid) {
            ++out.tp;
        } else {
            ++out.fp;
        }
    }
    out.precision = precision(out.records);
    return out;
}

ConsistencyReport consistency(const std::vector<EvalReport>& reports,
                              const std::vector<std::string>& runs_text,
                              EmbeddingProvider& embedder, const std::string& setting_key) {
    if (reports.size() < 2) {
        throw Error(ErrorCode::insufficient_runs,
                    "consistency needs >= 2 runs, got " + std::to_string(reports.size()));
    }
    if (runs_text.size() != reports.size()) {
        throw Error(ErrorCode::invalid_argument,
                    "runs_text size must match reports size");
    }

    ConsistencyReport out;
    out.setting_key = setting_key;
    out.n_runs = static_cast<int>(reports.size());

    std::vector<double> precisions;
    precisions.reserve(reports.size());
    for (const auto& r : reports) precisions.push_back(r.precision);
    out.std_precision = stats::sample_std(precisions);

    std::vector<EmbeddingVector> vectors = embed_texts(embedder, runs_text);
    std::vector<double> pair_cosines;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            pair_cosines.push_back(cosine(vectors[i], vectors[j]));
        }
    }
    // A single pair has no spread to estimate; defined as 0.0.
    out.std_cosine = pair_cosines.size() < 2 ? 0.0 : stats::sample_std(pair_cosines);
    return out;
}

}  // namespace cqgen
