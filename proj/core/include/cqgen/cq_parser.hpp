#pragma once

#include <string>
#include <vector>

namespace cqgen {

/// A warning produced while cleaning up a model response.
struct ParseDiagnostic {
    enum class Kind { count_mismatch, dropped_line, duplicate_removed };
    Kind kind;
    std::string detail;
};

const char* to_string(ParseDiagnostic::Kind kind);

struct ParsedCQList {
    std::vector<std::string> cqs;
    int expected_n = 0;
    std::vector<ParseDiagnostic> diagnostics;
};

/// Extracts one competency question per line from a raw model response.
/// Handles numbered lists ("1.", "1)"), bullets ("-", "*") and bare lines;
/// strips enumeration markers and matching surrounding quotes. A line
/// survives only if it ends with '?' after stripping; everything else
/// (preamble, epilogue) becomes a dropped_line diagnostic. Duplicates are
/// removed case-insensitively, first occurrence kept. A final count
/// different from expected_n is a count_mismatch diagnostic, not an error.
/// Throws NoQuestionsFound when nothing survives.
ParsedCQList parse_cqs(const std::string& raw, int expected_n);

}  // namespace cqgen
