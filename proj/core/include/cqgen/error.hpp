#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace cqgen {

/// Error categories surfaced by the library. Each maps to one failure mode
/// of a public operation; tests match on the code, not the message text.
enum class ErrorCode {
    // corpus
    empty_document,
    unsupported_format,
    invalid_policy,
    empty_manifest,
    invalid_manifest,
    // embedding / index
    provider_unavailable,
    empty_text,
    dimension_mismatch,
    zero_vector,
    empty_index,
    provider_mismatch,
    // prompt
    missing_variable,
    invalid_count,
    invalid_template,
    // llm gateway
    rate_limited,
    context_overflow,
    no_questions_found,
    // evaluation
    empty_generation,
    empty_records,
    insufficient_runs,
    invalid_threshold,
    // stats
    too_few_groups,
    too_few_values,
    degenerate_data,
    no_convergence,
    // runner
    invalid_grid,
    no_completed_runs,
    manifest_corrupt,
    // generic
    io_error,
    invalid_argument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Error(ErrorCode code, const std::string& message, int retry_after_ms)
        : Error(code, message) {
        retry_after_ms_ = retry_after_ms;
    }

    ErrorCode code() const noexcept { return code_; }

    /// Provider-supplied backoff hint, when one came with the failure.
    std::optional<int> retry_after_ms() const noexcept { return retry_after_ms_; }

private:
    ErrorCode code_;
    std::optional<int> retry_after_ms_;
};

}  // namespace cqgen
