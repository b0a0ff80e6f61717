// cqgen — competency-question generation experiments over a RAG pipeline.
//
// Subcommands: index, generate, evaluate, experiment, report. Each takes a
// JSON config file (--config) plus overriding flags. Exit codes: 0 success,
// 1 partial failures (some runs failed), 2 fatal error.

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cqgen/config.hpp"
#include "cqgen/error.hpp"
#include "cqgen/evaluation.hpp"
#include "cqgen/grid.hpp"
#include "cqgen/index.hpp"
#include "cqgen/manifest.hpp"
#include "cqgen/rag.hpp"
#include "cqgen/report.hpp"
#include "cqgen/runner.hpp"

namespace {

using namespace cqgen;

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct CommonArgs {
    std::string config_path;
    bool mock = false;
};

struct LoadedConfig {
    AppConfig config;
    Providers providers;
};

LoadedConfig load(const CommonArgs& common) {
    LoadedConfig loaded;
    loaded.config = load_app_config(common.config_path);
    loaded.providers = build_providers(loaded.config, common.mock);
    return loaded;
}

std::vector<SourceDocument> load_corpus(const AppConfig& config, bool required) {
    if (config.corpus_manifest.empty()) {
        if (required) {
            throw Error(ErrorCode::invalid_argument, "config needs a corpus_manifest");
        }
        return {};
    }
    return load_corpus_manifest(config.resolve(config.corpus_manifest).string(),
                                config.pdf_extractor_command);
}

PromptTemplate load_template(const AppConfig& config) {
    if (!config.prompt_template.empty()) {
        return PromptTemplate::from_file(config.resolve(config.prompt_template).string());
    }
    return PromptTemplate::builtin();
}

PromptVariables load_vars(const AppConfig& config) {
    if (config.prompt_preset.empty()) {
        throw Error(ErrorCode::invalid_argument, "config needs a prompt_preset");
    }
    return load_prompt_preset(config.resolve(config.prompt_preset).string());
}

int cmd_index(const CommonArgs& common, const std::string& out_path, int n_paper) {
    LoadedConfig loaded = load(common);
    std::vector<SourceDocument> corpus = load_corpus(loaded.config, true);
    validate_corpus(corpus);
    CorpusSelection selection =
        select_corpus(corpus, n_paper > 0 ? n_paper : static_cast<int>(corpus.size()));

    std::vector<Chunk> chunks;
    for (const auto& doc : selection.documents) {
        auto doc_chunks = chunk_document(doc, loaded.config.chunking);
        chunks.insert(chunks.end(), doc_chunks.begin(), doc_chunks.end());
    }
    VectorIndex index = build_index(chunks, *loaded.providers.retrieval);
    save_index(index, out_path);
    std::cout << "indexed " << selection.documents.size() << " documents, " << index.entries.size()
              << " chunks (provider " << index.provider_id << ", dim " << index.dim << ") -> "
              << out_path << "\n";
    return 0;
}

int cmd_generate(const CommonArgs& common, const std::string& mode, int n_paper,
                 std::optional<double> temperature, std::optional<int> k, int repetition,
                 const std::string& out_path) {
    LoadedConfig loaded = load(common);
    const AppConfig& config = loaded.config;

    RunConfig run_config;
    run_config.mode = run_mode_from_string(mode);
    run_config.n_paper = run_config.mode == RunMode::rag ? n_paper : 0;
    run_config.temperature = temperature.value_or(
        config.grid.temperature_levels.empty() ? 1.0 : config.grid.temperature_levels.front());
    run_config.model = config.grid.model;
    run_config.k = k.value_or(config.grid.k);
    run_config.repetition_index = repetition;
    run_config.chunking = config.chunking;
    run_config.prompt_vars = load_vars(config);

    std::vector<SourceDocument> corpus = load_corpus(config, run_config.mode == RunMode::rag);

    IndexCache cache;
    RunProviders providers;
    providers.embedder = loaded.providers.retrieval;
    providers.llm = loaded.providers.llm;
    providers.index_cache = &cache;
    providers.gateway = gateway_options(config);

    GenerationRun run = run_generation(run_config, corpus, providers, load_template(config));
    if (!out_path.empty()) {
        write_run_record(out_path, run);
    }

    std::cout << "# " << run.run_id << " (" << run.parsed.cqs.size() << " CQs";
    if (run.degraded) std::cout << ", degraded";
    std::cout << ")\n";
    for (const auto& cq : run.parsed.cqs) std::cout << cq << "\n";
    for (const auto& d : run.parsed.diagnostics) {
        std::cerr << "note: " << to_string(d.kind) << ": " << d.detail << "\n";
    }
    if (!out_path.empty()) std::cerr << "record written to " << out_path << "\n";
    return 0;
}

int cmd_evaluate(const CommonArgs& common, const std::string& record_path,
                 std::optional<double> theta) {
    LoadedConfig loaded = load(common);
    const AppConfig& config = loaded.config;
    if (config.ground_truth.empty()) {
        throw Error(ErrorCode::invalid_argument, "config needs a ground_truth file");
    }
    GroundTruthSet gt = load_ground_truth(config.resolve(config.ground_truth).string());

    RunRecord record = load_run_record(record_path);
    if (!record.parsed || record.parsed->cqs.empty()) {
        throw Error(ErrorCode::invalid_argument,
                    "record '" + record_path + "' has no parsed CQs to evaluate");
    }
    EvalReport report = evaluate_run(record.run_id, record.parsed->cqs, gt,
                                     *loaded.providers.evaluation,
                                     theta.value_or(config.grid.theta));
    append_run_eval(record_path, report);

    std::cout << record.run_id << ": precision " << report.precision << " (tp " << report.tp
              << ", fp " << report.fp << ", theta " << report.theta << ", ground truth "
              << gt.cqs.size() << " CQs)\n";
    return 0;
}

int cmd_experiment(const CommonArgs& common, const std::string& manifest_dir, bool resume,
                   int parallel) {
    LoadedConfig loaded = load(common);
    const AppConfig& config = loaded.config;
    PromptVariables vars = load_vars(config);
    PromptTemplate tmpl = load_template(config);

    const bool wants_rag = std::find(config.grid.modes.begin(), config.grid.modes.end(),
                                     RunMode::rag) != config.grid.modes.end();
    std::vector<SourceDocument> corpus = load_corpus(config, wants_rag);
    if (!corpus.empty()) validate_corpus(corpus);

    std::filesystem::create_directories(manifest_dir);
    const std::filesystem::path manifest_path = std::filesystem::path(manifest_dir) / "manifest.json";

    RunManifest fresh = make_manifest(
        config.grid, config.chunking, vars, corpus.empty() ? "" : corpus_hash(corpus),
        tmpl.version(), loaded.providers.retrieval->provider_id(),
        loaded.providers.evaluation->provider_id(), loaded.providers.llm->provider_id(),
        iso_now());

    RunManifest manifest;
    if (std::filesystem::exists(manifest_path)) {
        manifest = load_manifest(manifest_path);
        if (manifest.manifest_id != fresh.manifest_id) {
            throw Error(ErrorCode::invalid_manifest,
                        "manifest in '" + manifest_dir +
                            "' was created from different inputs; use a fresh directory");
        }
    } else {
        manifest = std::move(fresh);
        save_manifest(manifest, manifest_path);
    }

    IndexCache cache;
    RunProviders providers;
    providers.embedder = loaded.providers.retrieval;
    providers.llm = loaded.providers.llm;
    providers.index_cache = &cache;
    providers.gateway = gateway_options(config);

    ExecuteOptions options;
    options.resume = resume;
    options.parallelism = parallel;
    ExecuteSummary summary = execute(manifest, manifest_path, corpus, providers, options, tmpl);

    std::cout << "manifest " << manifest.manifest_id << ": " << summary.succeeded << " done, "
              << summary.failed << " failed, " << summary.skipped << " skipped"
              << (summary.stopped_early ? " (stopped early)" : "") << "\n";
    return summary.failed > 0 ? 1 : 0;
}

int cmd_report(const CommonArgs& common, const std::string& manifest_dir,
               std::optional<double> theta, std::string out_dir) {
    LoadedConfig loaded = load(common);
    const AppConfig& config = loaded.config;
    if (config.ground_truth.empty()) {
        throw Error(ErrorCode::invalid_argument, "config needs a ground_truth file");
    }
    GroundTruthSet gt = load_ground_truth(config.resolve(config.ground_truth).string());

    const std::filesystem::path dir(manifest_dir);
    RunManifest manifest = load_manifest(dir / "manifest.json");
    ReportBundle bundle = build_report(manifest, dir, gt, loaded.providers.evaluation, theta);

    if (out_dir.empty()) out_dir = (dir / "report").string();
    write_report_bundle(bundle, out_dir);
    std::cout << "report written to " << out_dir << " (fingerprint " << bundle_fingerprint(bundle)
              << ")\n"
              << bundle.precision_csv;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"competency-question generation experiments (RAG pipeline + evaluation)"};
    app.require_subcommand(1);

    CommonArgs common;

    auto add_common = [&common](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "JSON config file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_flag("--mock", common.mock, "force mock providers (offline, deterministic)");
    };

    auto* index_cmd = app.add_subcommand("index", "build and save the corpus vector index");
    std::string index_out = "index.json";
    int index_n_paper = 0;
    add_common(index_cmd);
    index_cmd->add_option("--out", index_out, "output index file");
    index_cmd->add_option("--n-paper", index_n_paper, "index only the top-n ranked documents");

    auto* generate_cmd = app.add_subcommand("generate", "execute a single generation run");
    std::string gen_mode = "rag";
    int gen_n_paper = 1;
    std::optional<double> gen_temperature;
    std::optional<int> gen_k;
    int gen_repetition = 0;
    std::string gen_out;
    add_common(generate_cmd);
    generate_cmd->add_option("--mode", gen_mode, "rag or zero_shot")
        ->check(CLI::IsMember({"rag", "zero_shot"}));
    generate_cmd->add_option("--n-paper", gen_n_paper, "corpus documents to retrieve over");
    generate_cmd->add_option("--temperature", gen_temperature, "sampling temperature [0,2]");
    generate_cmd->add_option("--k", gen_k, "retrieval depth");
    generate_cmd->add_option("--repetition", gen_repetition, "repetition index (mock seed)");
    generate_cmd->add_option("--out", gen_out, "write the run record to this file");

    auto* evaluate_cmd = app.add_subcommand("evaluate", "evaluate a run record against ground truth");
    std::string eval_record;
    std::optional<double> eval_theta;
    add_common(evaluate_cmd);
    evaluate_cmd->add_option("--record", eval_record, "run record (.jsonl)")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--theta", eval_theta, "similarity threshold override (0,1)");

    auto* experiment_cmd = app.add_subcommand("experiment", "execute the full hyperparameter grid");
    std::string exp_manifest_dir;
    bool exp_resume = false;
    int exp_parallel = 1;
    add_common(experiment_cmd);
    experiment_cmd->add_option("--manifest", exp_manifest_dir, "manifest directory")->required();
    experiment_cmd->add_flag("--resume", exp_resume, "skip runs already done");
    experiment_cmd->add_option("--parallel", exp_parallel, "worker threads")
        ->check(CLI::PositiveNumber);

    auto* report_cmd = app.add_subcommand("report", "aggregate a manifest into tables and ANOVA");
    std::string rep_manifest_dir;
    std::optional<double> rep_theta;
    std::string rep_out;
    add_common(report_cmd);
    report_cmd->add_option("--manifest", rep_manifest_dir, "manifest directory")->required();
    report_cmd->add_option("--theta", rep_theta, "similarity threshold override (0,1)");
    report_cmd->add_option("--out", rep_out, "report output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (index_cmd->parsed()) return cmd_index(common, index_out, index_n_paper);
        if (generate_cmd->parsed()) {
            return cmd_generate(common, gen_mode, gen_n_paper, gen_temperature, gen_k,
                                gen_repetition, gen_out);
        }
        if (evaluate_cmd->parsed()) return cmd_evaluate(common, eval_record, eval_theta);
        if (experiment_cmd->parsed()) {
            return cmd_experiment(common, exp_manifest_dir, exp_resume, exp_parallel);
        }
        if (report_cmd->parsed()) return cmd_report(common, rep_manifest_dir, rep_theta, rep_out);
    } catch (const Error& e) {
        // what() repeats the code name; drop it in favour of the bracket tag.
        std::string message = e.what();
        const std::string prefix = std::string(to_string(e.code())) + ": ";
        if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
        std::cerr << "error [" << to_string(e.code()) << "]: " << message << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
