#include "cqgen/error.hpp"

namespace cqgen {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::empty_document: return "EmptyDocument";
        case ErrorCode::unsupported_format: return "UnsupportedFormat";
        case ErrorCode::invalid_policy: return "InvalidPolicy";
        case ErrorCode::empty_manifest: return "EmptyManifest";
        case ErrorCode::invalid_manifest: return "InvalidManifest";
        case ErrorCode::provider_unavailable: return "ProviderUnavailable";
        case ErrorCode::empty_text: return "EmptyText";
        case ErrorCode::dimension_mismatch: return "DimensionMismatch";
        case ErrorCode::zero_vector: return "ZeroVector";
        case ErrorCode::empty_index: return "EmptyIndex";
        case ErrorCode::provider_mismatch: return "ProviderMismatch";
        case ErrorCode::missing_variable: return "MissingVariable";
        case ErrorCode::invalid_count: return "InvalidCount";
        case ErrorCode::invalid_template: return "InvalidTemplate";
        case ErrorCode::rate_limited: return "RateLimited";
        case ErrorCode::context_overflow: return "ContextOverflow";
        case ErrorCode::no_questions_found: return "NoQuestionsFound";
        case ErrorCode::empty_generation: return "EmptyGeneration";
        case ErrorCode::empty_records: return "EmptyRecords";
        case ErrorCode::insufficient_runs: return "InsufficientRuns";
        case ErrorCode::invalid_threshold: return "InvalidThreshold";
        case ErrorCode::too_few_groups: return "TooFewGroups";
        case ErrorCode::too_few_values: return "TooFewValues";
        case ErrorCode::degenerate_data: return "DegenerateData";
        case ErrorCode::no_convergence: return "NoConvergence";
        case ErrorCode::invalid_grid: return "InvalidGrid";
        case ErrorCode::no_completed_runs: return "NoCompletedRuns";
        case ErrorCode::manifest_corrupt: return "ManifestCorrupt";
        case ErrorCode::io_error: return "IoError";
        case ErrorCode::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace cqgen
