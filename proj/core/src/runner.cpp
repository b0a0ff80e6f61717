#include "cqgen/runner.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

#include "cqgen/error.hpp"

namespace cqgen {

ExecuteSummary execute(RunManifest& manifest, const std::filesystem::path& manifest_path,
                       const std::vector<SourceDocument>& corpus, const RunProviders& providers,
                       const ExecuteOptions& options, const PromptTemplate& prompt_template) {
    if (options.parallelism < 1) {
        throw Error(ErrorCode::invalid_argument, "parallelism must be >= 1");
    }
    const std::filesystem::path dir = manifest_path.parent_path();

    ExecuteSummary summary;
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < manifest.runs.size(); ++i) {
        if (options.resume && manifest.runs[i].status == RunStatus::done) {
            ++summary.skipped;
            continue;
        }
        if (!options.resume) manifest.runs[i].status = RunStatus::pending;
        todo.push_back(i);
    }
    save_manifest(manifest, manifest_path);
    if (todo.empty()) return summary;

    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex manifest_mutex;  // single writer for manifest state + after_run

    auto worker = [&] {
        while (!stop.load()) {
            std::size_t slot = next.fetch_add(1);
            if (slot >= todo.size()) return;
            RunEntry& entry = manifest.runs[todo[slot]];
            const std::filesystem::path record_path = dir / entry.record_path;

            std::string error_message;
            bool ok = false;
            try {
                GenerationRun run = run_generation(entry.config, corpus, providers, prompt_template);
                run.run_id = entry.run_id;  // manifest naming wins over the default
                write_run_record(record_path, run);
                ok = true;
            } catch (const std::exception& e) {
                error_message = e.what();
                try {
                    append_run_error(record_path, entry.run_id, error_message);
                } catch (const std::exception&) {
                    // Record append failed too; the manifest error field still
                    // carries the message.
                }
            }

            std::lock_guard<std::mutex> lock(manifest_mutex);
            entry.status = ok ? RunStatus::done : RunStatus::failed;
            entry.error = error_message;
            ++summary.executed;
            ok ? ++summary.succeeded : ++summary.failed;
            save_manifest(manifest, manifest_path);
            if (options.after_run && !options.after_run(entry)) {
                stop.store(true);
                summary.stopped_early = true;
            }
        }
    };

    if (options.parallelism == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        const int n_threads = std::min<int>(options.parallelism, static_cast<int>(todo.size()));
        threads.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    return summary;
}

}  // namespace cqgen
