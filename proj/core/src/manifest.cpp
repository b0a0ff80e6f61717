#include "cqgen/manifest.hpp"

#include <fstream>
#include <utility>

#include "cqgen/error.hpp"
#include "cqgen/hash.hpp"
#include "json_codec.hpp"

namespace cqgen {

using codec::ordered_json;

const char* to_string(RunStatus status) {
    switch (status) {
        case RunStatus::pending: return "pending";
        case RunStatus::done: return "done";
        case RunStatus::failed: return "failed";
    }
    return "pending";
}

RunStatus run_status_from_string(const std::string& name) {
    if (name == "pending") return RunStatus::pending;
    if (name == "done") return RunStatus::done;
    if (name == "failed") return RunStatus::failed;
    throw Error(ErrorCode::manifest_corrupt, "unknown run status '" + name + "'");
}

namespace {

std::string manifest_fingerprint(const ExperimentGrid& grid, const ChunkingPolicy& chunking,
                                 const PromptVariables& prompt_vars,
                                 const std::string& corpus_hash,
                                 const std::string& template_version,
                                 const std::string& retrieval_provider,
                                 const std::string& evaluation_provider,
                                 const std::string& llm_provider) {
    ordered_json ident{{"grid", codec::to_json(grid)},
                       {"chunking", codec::to_json(chunking)},
                       {"prompt_vars", codec::to_json(prompt_vars)},
                       {"corpus_hash", corpus_hash},
                       {"template_version", template_version},
                       {"retrieval_provider", retrieval_provider},
                       {"evaluation_provider", evaluation_provider},
                       {"llm_provider", llm_provider}};
    return to_hex(fnv1a64(ident.dump()));
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::io_error, "cannot write '" + tmp.string() + "'");
        }
        out << content;
        out.flush();
        if (!out) {
            throw Error(ErrorCode::io_error, "short write to '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw Error(ErrorCode::io_error,
                    "cannot replace '" + path.string() + "': " + ec.message());
    }
}

void append_line(const std::filesystem::path& path, const ordered_json& line) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) {
        throw Error(ErrorCode::io_error, "cannot append to '" + path.string() + "'");
    }
    out << line.dump() << '\n';
    out.flush();
    if (!out) {
        throw Error(ErrorCode::io_error, "short append to '" + path.string() + "'");
    }
}

}  // namespace

RunManifest make_manifest(const ExperimentGrid& grid, const ChunkingPolicy& chunking,
                          const PromptVariables& prompt_vars, const std::string& corpus_hash,
                          const std::string& template_version,
                          const std::string& retrieval_provider,
                          const std::string& evaluation_provider, const std::string& llm_provider,
                          const std::string& created_at) {
    RunManifest manifest;
    manifest.grid = grid;
    manifest.corpus_hash = corpus_hash;
    manifest.template_version = template_version;
    manifest.retrieval_provider = retrieval_provider;
    manifest.evaluation_provider = evaluation_provider;
    manifest.llm_provider = llm_provider;
    manifest.created_at = created_at;
    manifest.manifest_id =
        manifest_fingerprint(grid, chunking, prompt_vars, corpus_hash, template_version,
                             retrieval_provider, evaluation_provider, llm_provider);

    for (RunConfig& config : expand_grid(grid, chunking, prompt_vars)) {
        RunEntry entry;
        entry.run_id = run_id_for(config);
        entry.config = std::move(config);
        entry.status = RunStatus::pending;
        entry.record_path = "runs/" + entry.run_id + ".jsonl";
        manifest.runs.push_back(std::move(entry));
    }
    return manifest;
}

void save_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    ordered_json runs = ordered_json::array();
    for (const auto& entry : manifest.runs) {
        runs.push_back(ordered_json{{"run_id", entry.run_id},
                                    {"config", codec::to_json(entry.config)},
                                    {"status", to_string(entry.status)},
                                    {"record_path", entry.record_path},
                                    {"error", entry.error}});
    }
    ordered_json j{{"format_version", 1},
                   {"manifest_id", manifest.manifest_id},
                   {"grid", codec::to_json(manifest.grid)},
                   {"corpus_hash", manifest.corpus_hash},
                   {"template_version", manifest.template_version},
                   {"retrieval_provider", manifest.retrieval_provider},
                   {"evaluation_provider", manifest.evaluation_provider},
                   {"llm_provider", manifest.llm_provider},
                   {"created_at", manifest.created_at},
                   {"runs", std::move(runs)}};
    atomic_write(path, j.dump(2) + "\n");
}

RunManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot read manifest '" + path.string() + "'");
    }
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::manifest_corrupt,
                    "manifest '" + path.string() + "' is not valid JSON: " + e.what());
    }
    try {
        if (j.value("format_version", 0) != 1) {
            throw Error(ErrorCode::manifest_corrupt, "unsupported manifest format_version");
        }
        RunManifest manifest;
        manifest.manifest_id = j.at("manifest_id").get<std::string>();
        manifest.grid = codec::grid_from_json(j.at("grid"));
        manifest.corpus_hash = j.value("corpus_hash", "");
        manifest.template_version = j.value("template_version", "");
        manifest.retrieval_provider = j.value("retrieval_provider", "");
        manifest.evaluation_provider = j.value("evaluation_provider", "");
        manifest.llm_provider = j.value("llm_provider", "");
        manifest.created_at = j.value("created_at", "");
        for (const auto& rec : j.at("runs")) {
            RunEntry entry;
            entry.run_id = rec.at("run_id").get<std::string>();
            entry.config = codec::run_config_from_json(rec.at("config"));
            entry.status = run_status_from_string(rec.at("status").get<std::string>());
            entry.record_path = rec.value("record_path", "");
            entry.error = rec.value("error", "");
            manifest.runs.push_back(std::move(entry));
        }
        return manifest;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::manifest_corrupt,
                    "manifest '" + path.string() + "' is malformed: " + e.what());
    }
}

void write_run_record(const std::filesystem::path& path, const GenerationRun& run) {
    // A bare filename has an empty parent; create_directories("") throws.
    if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::io_error, "cannot write run record '" + path.string() + "'");
    }
    ordered_json config_line{{"type", "config"},
                             {"run_id", run.run_id},
                             {"config", codec::to_json(run.config)},
                             {"template_version", run.template_version},
                             {"prompt_text", run.prompt_text}};
    out << config_line.dump() << '\n';

    ordered_json hits = ordered_json::array();
    for (const auto& hit : run.retrieved_hits) hits.push_back(codec::to_json(hit));
    ordered_json hits_line{{"type", "hits"},
                           {"run_id", run.run_id},
                           {"degraded", run.degraded},
                           {"hits", std::move(hits)}};
    out << hits_line.dump() << '\n';

    ordered_json response_line{{"type", "response"},
                               {"run_id", run.run_id},
                               {"raw", run.raw_response},
                               {"latency_ms", run.llm_latency_ms},
                               {"started_at_ms", run.started_at_ms},
                               {"finished_at_ms", run.finished_at_ms},
                               {"notes", run.notes}};
    out << response_line.dump() << '\n';

    ordered_json parsed_line{{"type", "parsed"},
                             {"run_id", run.run_id},
                             {"parsed", codec::to_json(run.parsed)}};
    out << parsed_line.dump() << '\n';
    out.flush();
    if (!out) {
        throw Error(ErrorCode::io_error, "short write to run record '" + path.string() + "'");
    }
}

void append_run_eval(const std::filesystem::path& path, const EvalReport& report) {
    append_line(path, ordered_json{{"type", "eval"},
                                   {"run_id", report.run_id},
                                   {"eval", codec::to_json(report)}});
}

void append_run_error(const std::filesystem::path& path, const std::string& run_id,
                      const std::string& message) {
    if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
    append_line(path,
                ordered_json{{"type", "error"}, {"run_id", run_id}, {"message", message}});
}

RunRecord load_run_record(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot read run record '" + path.string() + "'");
    }
    RunRecord record;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) continue;  // torn or foreign line
        const std::string type = j.value("type", "");
        if (record.run_id.empty()) record.run_id = j.value("run_id", "");
        try {
            if (type == "config") {
                record.config = codec::run_config_from_json(j.at("config"));
                record.prompt_text = j.value("prompt_text", "");
                record.template_version = j.value("template_version", "");
                record.error.reset();
            } else if (type == "hits") {
                record.hits.clear();
                for (const auto& hit : j.value("hits", ordered_json::array())) {
                    record.hits.push_back(codec::retrieval_hit_from_json(hit));
                }
                record.degraded = j.value("degraded", false);
            } else if (type == "response") {
                record.raw_response = j.value("raw", "");
                record.llm_latency_ms = j.value("latency_ms", std::int64_t{0});
                record.started_at_ms = j.value("started_at_ms", std::int64_t{0});
                record.finished_at_ms = j.value("finished_at_ms", std::int64_t{0});
                record.notes.clear();
                for (const auto& note : j.value("notes", ordered_json::array())) {
                    record.notes.push_back(note.get<std::string>());
                }
            } else if (type == "parsed") {
                record.parsed = codec::parsed_cq_list_from_json(j.at("parsed"));
            } else if (type == "eval") {
                record.eval = codec::eval_report_from_json(j.at("eval"));
            } else if (type == "error") {
                record.error = j.value("message", "");
            }
        } catch (const std::exception&) {
            continue;  // damaged line; later lines may still supersede it
        }
    }
    return record;
}

}  // namespace cqgen
