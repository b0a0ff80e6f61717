#pragma once

// Internal JSON codecs shared by manifest, report and config code. Not
// installed: public headers stay JSON-library-free. Serialization uses
// ordered_json with a fixed insertion order so equal values always produce
// identical bytes.

#include <nlohmann/json.hpp>

#include "cqgen/corpus.hpp"
#include "cqgen/cq_parser.hpp"
#include "cqgen/evaluation.hpp"
#include "cqgen/grid.hpp"
#include "cqgen/index.hpp"
#include "cqgen/prompt.hpp"
#include "cqgen/rag.hpp"

namespace cqgen::codec {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const ChunkingPolicy& policy);
ChunkingPolicy chunking_policy_from_json(const ordered_json& j);

ordered_json to_json(const PromptVariables& vars);
PromptVariables prompt_variables_from_json(const ordered_json& j);

ordered_json to_json(const RunConfig& config);
RunConfig run_config_from_json(const ordered_json& j);

ordered_json to_json(const Chunk& chunk);
Chunk chunk_from_json(const ordered_json& j);

ordered_json to_json(const RetrievalHit& hit);
RetrievalHit retrieval_hit_from_json(const ordered_json& j);

ordered_json to_json(const ParsedCQList& parsed);
ParsedCQList parsed_cq_list_from_json(const ordered_json& j);

ordered_json to_json(const EvalReport& report);
EvalReport eval_report_from_json(const ordered_json& j);

ordered_json to_json(const ExperimentGrid& grid);
ExperimentGrid grid_from_json(const ordered_json& j);

/// Shortest round-trip decimal form of a double, e.g. 1.0 -> "1.0".
std::string double_str(double value);

}  // namespace cqgen::codec
