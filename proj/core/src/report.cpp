#include "cqgen/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <tuple>

#include "cqgen/error.hpp"
#include "cqgen/hash.hpp"
#include "cqgen/stats.hpp"
#include "json_codec.hpp"

namespace cqgen {

using codec::ordered_json;

namespace {

struct EvaluatedRun {
    const RunEntry* entry = nullptr;
    EvalReport eval;
    std::string text;  // newline-join of the run's parsed CQs
};

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out += '\n';
        out += lines[i];
    }
    return out;
}

/// mode + hyperparameters without the repetition suffix, e.g. "rag-n3-t1.0".
std::string setting_key_for(const RunConfig& config) {
    std::string key = to_string(config.mode);
    if (config.mode == RunMode::rag) key += "-n" + std::to_string(config.n_paper);
    key += "-t" + codec::double_str(config.temperature);
    return key;
}

ordered_json anova_json(const std::string& factor,
                        const std::vector<std::pair<std::string, std::vector<double>>>& groups) {
    ordered_json out{{"factor", factor}};
    if (groups.size() < 2) {
        out["skipped"] = "needs completed runs at two or more factor levels";
        return out;
    }
    stats::FactorGroups fg;
    fg.factor_name = factor;
    for (const auto& [level, obs] : groups) fg.groups[level] = obs;
    try {
        stats::AnovaResult r = stats::one_way_anova(fg);
        out["f_statistic"] = r.f_statistic;
        out["p_value"] = r.p_value;
        out["df_between"] = r.df_between;
        out["df_within"] = r.df_within;
        out["grand_mean"] = r.grand_mean;
        out["ss_between"] = r.ss_between;
        out["ss_within"] = r.ss_within;
        ordered_json means;
        for (const auto& [level, obs] : groups) {
            (void)obs;
            means[level] = r.group_means.at(level);
        }
        out["group_means"] = std::move(means);
    } catch (const Error& e) {
        out["skipped"] = std::string(e.what());
    }
    return out;
}

double mean_of(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

}  // namespace

ReportBundle build_report(const RunManifest& manifest, const std::filesystem::path& manifest_dir,
                          const GroundTruthSet& ground_truth,
                          std::shared_ptr<EmbeddingProvider> eval_embedder,
                          std::optional<double> theta_override) {
    if (!eval_embedder) {
        throw Error(ErrorCode::invalid_argument, "build_report needs an evaluation embedder");
    }
    const double theta = theta_override.value_or(manifest.grid.theta);
    MemoizingEmbedder memo(eval_embedder);

    std::vector<EvaluatedRun> evaluated;
    std::vector<std::string> failed_ids;
    int pending = 0;
    for (const auto& entry : manifest.runs) {
        if (entry.status == RunStatus::failed) {
            failed_ids.push_back(entry.run_id);
            continue;
        }
        if (entry.status == RunStatus::pending) {
            ++pending;
            continue;
        }
        RunRecord record = load_run_record(manifest_dir / entry.record_path);
        if (!record.parsed || record.parsed->cqs.empty()) {
            throw Error(ErrorCode::manifest_corrupt,
                        "run '" + entry.run_id + "' is marked done but its record has no parsed CQs");
        }
        EvaluatedRun er;
        er.entry = &entry;
        er.eval = evaluate_run(entry.run_id, record.parsed->cqs, ground_truth, memo, theta);
        er.text = join_lines(record.parsed->cqs);
        evaluated.push_back(std::move(er));
    }
    if (evaluated.empty()) {
        throw Error(ErrorCode::no_completed_runs,
                    "manifest '" + manifest.manifest_id + "' has no completed runs to report on");
    }

    // --- aggregation -------------------------------------------------------
    // Precision cells keyed by (mode, n_paper); rag first, n_paper ascending.
    struct Cell {
        std::vector<double> precisions;
        std::vector<std::string> run_ids;
    };
    std::map<std::tuple<int, int>, Cell> cells;
    for (const auto& er : evaluated) {
        const RunConfig& c = er.entry->config;
        auto& cell = cells[{c.mode == RunMode::rag ? 0 : 1, c.n_paper}];
        cell.precisions.push_back(er.eval.precision);
        cell.run_ids.push_back(er.entry->run_id);
    }

    // Per-setting consistency (needs >= 2 runs at the exact setting).
    std::map<std::tuple<int, int, double>, std::vector<std::size_t>> settings;
    for (std::size_t i = 0; i < evaluated.size(); ++i) {
        const RunConfig& c = evaluated[i].entry->config;
        settings[{c.mode == RunMode::rag ? 0 : 1, c.n_paper, c.temperature}].push_back(i);
    }
    std::vector<ConsistencyReport> setting_reports;
    std::map<double, std::vector<std::size_t>> settings_by_temperature;  // -> setting_reports idx
    for (const auto& [key, indices] : settings) {
        if (indices.size() < 2) continue;
        std::vector<EvalReport> reports;
        std::vector<std::string> texts;
        for (std::size_t i : indices) {
            reports.push_back(evaluated[i].eval);
            texts.push_back(evaluated[i].text);
        }
        ConsistencyReport cr = consistency(reports, texts, memo,
                                           setting_key_for(evaluated[indices[0]].entry->config));
        settings_by_temperature[std::get<2>(key)].push_back(setting_reports.size());
        setting_reports.push_back(std::move(cr));
    }

    // ANOVA observations.
    std::map<int, std::vector<double>> by_n_paper;  // rag runs only
    std::map<double, std::vector<double>> by_temperature;  // all modes pooled
    for (const auto& er : evaluated) {
        const RunConfig& c = er.entry->config;
        if (c.mode == RunMode::rag) by_n_paper[c.n_paper].push_back(er.eval.precision);
        by_temperature[c.temperature].push_back(er.eval.precision);
    }
    std::vector<std::pair<std::string, std::vector<double>>> n_paper_groups;
    for (const auto& [level, obs] : by_n_paper) {
        n_paper_groups.emplace_back(std::to_string(level), obs);
    }
    std::vector<std::pair<std::string, std::vector<double>>> temperature_groups;
    for (const auto& [level, obs] : by_temperature) {
        temperature_groups.emplace_back(codec::double_str(level), obs);
    }

    // --- report.json -------------------------------------------------------
    ordered_json per_run = ordered_json::array();
    for (const auto& er : evaluated) {
        const RunConfig& c = er.entry->config;
        per_run.push_back(ordered_json{
            {"run_id", er.entry->run_id},
            {"mode", to_string(c.mode)},
            {"n_paper", c.mode == RunMode::rag ? ordered_json(c.n_paper) : ordered_json(nullptr)},
            {"temperature", c.temperature},
            {"repetition_index", c.repetition_index},
            {"precision", er.eval.precision},
            {"tp", er.eval.tp},
            {"fp", er.eval.fp}});
    }

    ordered_json precision_cells = ordered_json::array();
    for (const auto& [key, cell] : cells) {
        const bool is_rag = std::get<0>(key) == 0;
        precision_cells.push_back(ordered_json{
            {"mode", is_rag ? "rag" : "zero_shot"},
            {"n_paper", is_rag ? ordered_json(std::get<1>(key)) : ordered_json(nullptr)},
            {"mean_precision", mean_of(cell.precisions)},
            {"n_runs", cell.precisions.size()},
            {"run_ids", cell.run_ids}});
    }

    ordered_json consistency_settings = ordered_json::array();
    for (const auto& cr : setting_reports) {
        consistency_settings.push_back(ordered_json{{"setting_key", cr.setting_key},
                                                    {"std_precision", cr.std_precision},
                                                    {"std_cosine", cr.std_cosine},
                                                    {"n_runs", cr.n_runs}});
    }

    ordered_json consistency_by_temperature = ordered_json::array();
    for (const auto& [temperature, report_indices] : settings_by_temperature) {
        std::vector<double> std_ps, std_cs;
        std::vector<std::string> keys;
        for (std::size_t idx : report_indices) {
            std_ps.push_back(setting_reports[idx].std_precision);
            std_cs.push_back(setting_reports[idx].std_cosine);
            keys.push_back(setting_reports[idx].setting_key);
        }
        consistency_by_temperature.push_back(ordered_json{{"temperature", temperature},
                                                          {"std_precision", mean_of(std_ps)},
                                                          {"std_cosine", mean_of(std_cs)},
                                                          {"n_settings", keys.size()},
                                                          {"setting_keys", keys}});
    }

    ordered_json report{
        {"manifest_id", manifest.manifest_id},
        {"task_id", manifest.grid.task_id},
        {"theta", theta},
        {"ground_truth_task", ground_truth.task_id},
        {"n_ground_truth_cqs", ground_truth.cqs.size()},
        {"runs",
         ordered_json{{"total", manifest.runs.size()},
                      {"done", evaluated.size()},
                      {"failed", failed_ids.size()},
                      {"pending", pending}}},
        {"failed_run_ids", failed_ids},
        {"per_run", std::move(per_run)},
        {"precision_by_mode_n_paper", std::move(precision_cells)},
        {"consistency_by_setting", std::move(consistency_settings)},
        {"consistency_by_temperature", consistency_by_temperature},
        {"anova", ordered_json{{"n_paper", anova_json("n_paper", n_paper_groups)},
                               {"temperature", anova_json("temperature", temperature_groups)}}}};

    ReportBundle bundle;
    bundle.report_json = report.dump(2) + "\n";

    // --- CSV tables --------------------------------------------------------
    std::string precision_csv = "mode,n_paper,mean_precision,n_runs\n";
    for (const auto& [key, cell] : cells) {
        const bool is_rag = std::get<0>(key) == 0;
        precision_csv += std::string(is_rag ? "rag" : "zero_shot") + ",";
        precision_csv += is_rag ? std::to_string(std::get<1>(key)) : std::string("-");
        precision_csv += "," + codec::double_str(mean_of(cell.precisions)) + "," +
                         std::to_string(cell.precisions.size()) + "\n";
    }
    bundle.precision_csv = std::move(precision_csv);

    std::string consistency_csv = "temperature,std_precision,std_cosine,n_settings\n";
    for (const auto& j : consistency_by_temperature) {
        consistency_csv += codec::double_str(j.at("temperature").get<double>()) + "," +
                           codec::double_str(j.at("std_precision").get<double>()) + "," +
                           codec::double_str(j.at("std_cosine").get<double>()) + "," +
                           std::to_string(j.at("n_settings").get<std::size_t>()) + "\n";
    }
    bundle.consistency_csv = std::move(consistency_csv);

    // --- plot series -------------------------------------------------------
    std::string per_run_csv = "run_id,mode,n_paper,temperature,repetition_index,precision\n";
    for (const auto& er : evaluated) {
        const RunConfig& c = er.entry->config;
        per_run_csv += er.entry->run_id;
        per_run_csv += std::string(",") + to_string(c.mode) + ",";
        per_run_csv += c.mode == RunMode::rag ? std::to_string(c.n_paper) : std::string("-");
        per_run_csv += "," + codec::double_str(c.temperature) + "," +
                       std::to_string(c.repetition_index) + "," +
                       codec::double_str(er.eval.precision) + "\n";
    }
    bundle.series.emplace_back("per_run_precision.csv", std::move(per_run_csv));

    std::string by_n_csv = "n_paper,mean_precision,std_precision,n_runs\n";
    for (const auto& [level, obs] : by_n_paper) {
        by_n_csv += std::to_string(level) + "," + codec::double_str(mean_of(obs)) + ",";
        by_n_csv += obs.size() >= 2 ? codec::double_str(stats::sample_std(obs)) : std::string("");
        by_n_csv += "," + std::to_string(obs.size()) + "\n";
    }
    bundle.series.emplace_back("precision_by_n_paper.csv", std::move(by_n_csv));

    std::map<std::tuple<int, double>, std::vector<double>> by_mode_temperature;
    for (const auto& er : evaluated) {
        const RunConfig& c = er.entry->config;
        by_mode_temperature[{c.mode == RunMode::rag ? 0 : 1, c.temperature}].push_back(
            er.eval.precision);
    }
    std::string by_t_csv = "mode,temperature,mean_precision,n_runs\n";
    for (const auto& [key, obs] : by_mode_temperature) {
        by_t_csv += std::string(std::get<0>(key) == 0 ? "rag" : "zero_shot") + "," +
                    codec::double_str(std::get<1>(key)) + "," + codec::double_str(mean_of(obs)) +
                    "," + std::to_string(obs.size()) + "\n";
    }
    bundle.series.emplace_back("precision_by_temperature.csv", std::move(by_t_csv));

    return bundle;
}

void write_report_bundle(const ReportBundle& bundle, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir / "series");
    auto write_file = [](const std::filesystem::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::io_error, "cannot write '" + path.string() + "'");
        }
        out << content;
        out.flush();
        if (!out) {
            throw Error(ErrorCode::io_error, "short write to '" + path.string() + "'");
        }
    };
    write_file(out_dir / "report.json", bundle.report_json);
    write_file(out_dir / "precision_table.csv", bundle.precision_csv);
    write_file(out_dir / "consistency_table.csv", bundle.consistency_csv);
    for (const auto& [name, content] : bundle.series) {
        write_file(out_dir / "series" / name, content);
    }
}

std::string bundle_fingerprint(const ReportBundle& bundle) {
    std::uint64_t h = kFnvOffset;
    auto mix = [&h](const std::string& name, const std::string& content) {
        h = fnv1a64(name, h);
        h = fnv1a64(std::string(1, '\0'), h);
        h = fnv1a64(content, h);
        h = fnv1a64(std::string(1, '\0'), h);
    };
    mix("report.json", bundle.report_json);
    mix("precision_table.csv", bundle.precision_csv);
    mix("consistency_table.csv", bundle.consistency_csv);
    for (const auto& [name, content] : bundle.series) mix("series/" + name, content);
    return to_hex(h);
}

}  // namespace cqgen
