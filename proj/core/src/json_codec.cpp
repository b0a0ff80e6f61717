#include "json_codec.hpp"

#include "cqgen/error.hpp"

namespace cqgen::codec {

namespace {

ParseDiagnostic::Kind diagnostic_kind_from_string(const std::string& name) {
    if (name == "count_mismatch") return ParseDiagnostic::Kind::count_mismatch;
    if (name == "dropped_line") return ParseDiagnostic::Kind::dropped_line;
    if (name == "duplicate_removed") return ParseDiagnostic::Kind::duplicate_removed;
    throw Error(ErrorCode::invalid_argument, "unknown diagnostic kind '" + name + "'");
}

}  // namespace

ordered_json to_json(const ChunkingPolicy& policy) {
    return ordered_json{{"target_size", policy.target_size},
                        {"overlap", policy.overlap},
                        {"boundary_mode", to_string(policy.boundary_mode)}};
}

ChunkingPolicy chunking_policy_from_json(const ordered_json& j) {
    ChunkingPolicy policy;
    policy.target_size = j.value("target_size", policy.target_size);
    policy.overlap = j.value("overlap", policy.overlap);
    policy.boundary_mode =
        boundary_mode_from_string(j.value("boundary_mode", std::string("hard_cut")));
    return policy;
}

ordered_json to_json(const PromptVariables& vars) {
    return ordered_json{{"domain_name", vars.domain_name},
                        {"ontology_purpose", vars.ontology_purpose},
                        {"cq_definition", vars.cq_definition},
                        {"n_cqs", vars.n_cqs},
                        {"artifact_kind", to_string(vars.artifact_kind)}};
}

PromptVariables prompt_variables_from_json(const ordered_json& j) {
    PromptVariables vars;
    vars.domain_name = j.value("domain_name", "");
    vars.ontology_purpose = j.value("ontology_purpose", "");
    vars.cq_definition = j.value("cq_definition", "");
    vars.n_cqs = j.value("n_cqs", 1);
    vars.artifact_kind = artifact_kind_from_string(j.value("artifact_kind", std::string("ontology")));
    return vars;
}

ordered_json to_json(const RunConfig& config) {
    return ordered_json{{"mode", to_string(config.mode)},
                        {"n_paper", config.n_paper},
                        {"temperature", config.temperature},
                        {"model", config.model},
                        {"k", config.k},
                        {"repetition_index", config.repetition_index},
                        {"chunking", to_json(config.chunking)},
                        {"prompt_vars", to_json(config.prompt_vars)}};
}

RunConfig run_config_from_json(const ordered_json& j) {
    RunConfig config;
    config.mode = run_mode_from_string(j.value("mode", std::string("rag")));
    config.n_paper = j.value("n_paper", 1);
    config.temperature = j.value("temperature", 1.0);
    config.model = j.value("model", "");
    config.k = j.value("k", 5);
    config.repetition_index = j.value("repetition_index", 0);
    if (j.contains("chunking")) config.chunking = chunking_policy_from_json(j.at("chunking"));
    if (j.contains("prompt_vars")) {
        config.prompt_vars = prompt_variables_from_json(j.at("prompt_vars"));
    }
    return config;
}

ordered_json to_json(const Chunk& chunk) {
    return ordered_json{{"doc_id", chunk.doc_id},
                        {"chunk_index", chunk.chunk_index},
                        {"span_start", chunk.span_start},
                        {"span_end", chunk.span_end},
                        {"text", chunk.text}};
}

Chunk chunk_from_json(const ordered_json& j) {
    Chunk chunk;
    chunk.doc_id = j.value("doc_id", "");
    chunk.chunk_index = j.value("chunk_index", std::size_t{0});
    chunk.span_start = j.value("span_start", std::size_t{0});
    chunk.span_end = j.value("span_end", std::size_t{0});
    chunk.text = j.value("text", "");
    return chunk;
}

ordered_json to_json(const RetrievalHit& hit) {
    return ordered_json{{"chunk", to_json(hit.chunk)}, {"score", hit.score}};
}

RetrievalHit retrieval_hit_from_json(const ordered_json& j) {
    RetrievalHit hit;
    if (j.contains("chunk")) hit.chunk = chunk_from_json(j.at("chunk"));
    hit.score = j.value("score", 0.0);
    return hit;
}

ordered_json to_json(const ParsedCQList& parsed) {
    ordered_json diagnostics = ordered_json::array();
    for (const auto& d : parsed.diagnostics) {
        diagnostics.push_back(ordered_json{{"kind", to_string(d.kind)}, {"detail", d.detail}});
    }
    return ordered_json{{"cqs", parsed.cqs},
                        {"expected_n", parsed.expected_n},
                        {"diagnostics", std::move(diagnostics)}};
}

ParsedCQList parsed_cq_list_from_json(const ordered_json& j) {
    ParsedCQList parsed;
    for (const auto& cq : j.value("cqs", ordered_json::array())) {
        parsed.cqs.push_back(cq.get<std::string>());
    }
    parsed.expected_n = j.value("expected_n", 0);
    for (const auto& d : j.value("diagnostics", ordered_json::array())) {
        ParseDiagnostic diag;
        diag.kind = diagnostic_kind_from_string(d.value("kind", std::string()));
        diag.detail = d.value("detail", "");
        parsed.diagnostics.push_back(std::move(diag));
    }
    return parsed;
}

ordered_json to_json(const EvalReport& report) {
    ordered_json records = ordered_json::array();
    for (const auto& r : report.records) {
        records.push_back(ordered_json{{"cq_gen", r.cq_gen},
                                       {"best_cq_gt", r.best_cq_gt},
                                       {"best_cosine", r.best_cosine},
                                       {"valid", r.valid}});
    }
    return ordered_json{{"run_id", report.run_id}, {"records", std::move(records)},
                        {"tp", report.tp},        {"fp", report.fp},
                        {"precision", report.precision}, {"theta", report.theta}};
}

EvalReport eval_report_from_json(const ordered_json& j) {
    EvalReport report;
    report.run_id = j.value("run_id", "");
    for (const auto& r : j.value("records", ordered_json::array())) {
        MatchRecord record;
        record.cq_gen = r.value("cq_gen", "");
        record.best_cq_gt = r.value("best_cq_gt", "");
        record.best_cosine = r.value("best_cosine", -1.0);
        record.valid = r.value("valid", false);
        report.records.push_back(std::move(record));
    }
    report.tp = j.value("tp", 0);
    report.fp = j.value("fp", 0);
    report.precision = j.value("precision", 0.0);
    report.theta = j.value("theta", 0.0);
    return report;
}

ordered_json to_json(const ExperimentGrid& grid) {
    ordered_json modes = ordered_json::array();
    for (RunMode mode : grid.modes) modes.push_back(to_string(mode));
    return ordered_json{{"task_id", grid.task_id},
                        {"modes", std::move(modes)},
                        {"n_paper_levels", grid.n_paper_levels},
                        {"temperature_levels", grid.temperature_levels},
                        {"repetitions", grid.repetitions},
                        {"model", grid.model},
                        {"k", grid.k},
                        {"theta", grid.theta}};
}

ExperimentGrid grid_from_json(const ordered_json& j) {
    ExperimentGrid grid;
    grid.task_id = j.value("task_id", "");
    grid.modes.clear();
    for (const auto& mode : j.value("modes", ordered_json::array())) {
        grid.modes.push_back(run_mode_from_string(mode.get<std::string>()));
    }
    if (grid.modes.empty()) grid.modes.push_back(RunMode::rag);
    for (const auto& n : j.value("n_paper_levels", ordered_json::array())) {
        grid.n_paper_levels.push_back(n.get<int>());
    }
    for (const auto& t : j.value("temperature_levels", ordered_json::array())) {
        grid.temperature_levels.push_back(t.get<double>());
    }
    grid.repetitions = j.value("repetitions", 1);
    grid.model = j.value("model", "mock");
    grid.k = j.value("k", 5);
    grid.theta = j.value("theta", 0.6);
    return grid;
}

std::string double_str(double value) { return nlohmann::json(value).dump(); }

}  // namespace cqgen::codec
