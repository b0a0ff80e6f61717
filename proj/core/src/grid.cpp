#include "cqgen/grid.hpp"

#include <algorithm>
#include <set>

#include "cqgen/error.hpp"

namespace cqgen {

namespace {

[[noreturn]] void invalid(const std::string& why) {
    throw Error(ErrorCode::invalid_grid, why);
}

template <typename T>
bool has_duplicates(std::vector<T> values) {
    std::sort(values.begin(), values.end());
    return std::adjacent_find(values.begin(), values.end()) != values.end();
}

}  // namespace

void validate_grid(const ExperimentGrid& grid) {
    if (grid.modes.empty()) invalid("grid declares no modes");
    std::set<RunMode> distinct_modes(grid.modes.begin(), grid.modes.end());
    if (distinct_modes.size() != grid.modes.size()) invalid("grid repeats a mode");
    if (grid.temperature_levels.empty()) invalid("grid declares no temperature levels");
    if (has_duplicates(grid.temperature_levels)) invalid("grid repeats a temperature level");
    for (double t : grid.temperature_levels) {
        if (!(t >= 0.0 && t <= 2.0)) invalid("temperature level outside [0, 2]");
    }
    const bool wants_rag = distinct_modes.count(RunMode::rag) > 0;
    if (wants_rag) {
        if (grid.n_paper_levels.empty()) invalid("rag mode needs n_paper levels");
        if (has_duplicates(grid.n_paper_levels)) invalid("grid repeats an n_paper level");
        for (int n : grid.n_paper_levels) {
            if (n < 1) invalid("n_paper level must be >= 1");
        }
    }
    if (grid.repetitions < 1) invalid("repetitions must be >= 1");
    if (grid.k < 1) invalid("k must be >= 1");
    if (!(grid.theta > 0.0 && grid.theta < 1.0)) invalid("theta must lie in (0, 1)");
    if (grid.model.empty()) invalid("grid needs a model name");
}

std::vector<RunConfig> expand_grid(const ExperimentGrid& grid, const ChunkingPolicy& chunking,
                                   const PromptVariables& prompt_vars) {
    validate_grid(grid);

    std::vector<int> n_levels = grid.n_paper_levels;
    std::sort(n_levels.begin(), n_levels.end());
    std::vector<double> temps = grid.temperature_levels;
    std::sort(temps.begin(), temps.end());

    std::vector<RunConfig> configs;
    for (RunMode mode : {RunMode::rag, RunMode::zero_shot}) {
        if (std::find(grid.modes.begin(), grid.modes.end(), mode) == grid.modes.end()) continue;
        const std::vector<int> mode_levels =
            mode == RunMode::rag ? n_levels : std::vector<int>{0};
        for (int n : mode_levels) {
            for (double t : temps) {
                for (int r = 0; r < grid.repetitions; ++r) {
                    RunConfig config;
                    config.mode = mode;
                    config.n_paper = n;
                    config.temperature = t;
                    config.model = grid.model;
                    config.k = grid.k;
                    config.repetition_index = r;
                    config.chunking = chunking;
                    config.prompt_vars = prompt_vars;
                    configs.push_back(std::move(config));
                }
            }
        }
    }
    return configs;
}

}  // namespace cqgen
