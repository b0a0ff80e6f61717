#pragma once

#include <string>
#include <vector>

#include "cqgen/rag.hpp"

namespace cqgen {

/// Declarative hyperparameter grid for one experiment. n_paper_levels apply
/// to rag mode only; zero_shot sweeps temperatures and repetitions alone.
struct ExperimentGrid {
    std::string task_id;
    std::vector<RunMode> modes{RunMode::rag};
    std::vector<int> n_paper_levels;
    std::vector<double> temperature_levels;
    int repetitions = 1;
    std::string model = "mock";
    int k = 5;
    double theta = 0.6;
};

/// Throws InvalidGrid when any field is out of range (empty level lists,
/// duplicate levels, temperature outside [0, 2], repetitions < 1, ...).
void validate_grid(const ExperimentGrid& grid);

/// Cartesian expansion in canonical order: mode (rag before zero_shot),
/// then n_paper ascending, temperature ascending, repetition. Zero-shot
/// configs carry n_paper = 0. The order is deterministic so run ids and
/// manifests are stable across invocations.
std::vector<RunConfig> expand_grid(const ExperimentGrid& grid, const ChunkingPolicy& chunking,
                                   const PromptVariables& prompt_vars);

}  // namespace cqgen
