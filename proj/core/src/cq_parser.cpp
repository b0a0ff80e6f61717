#include "cqgen/cq_parser.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "cqgen/error.hpp"

namespace cqgen {

const char* to_string(ParseDiagnostic::Kind kind) {
    switch (kind) {
        case ParseDiagnostic::Kind::count_mismatch: return "count_mismatch";
        case ParseDiagnostic::Kind::dropped_line: return "dropped_line";
        case ParseDiagnostic::Kind::duplicate_removed: return "duplicate_removed";
    }
    return "unknown";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

// "1.", "23)", "-", "*" at the start of a line.
std::string strip_enumeration_marker(const std::string& line) {
    std::size_t i = 0;
    if (i < line.size() && (line[i] == '-' || line[i] == '*')) {
        return trim(line.substr(i + 1));
    }
    std::size_t digits = 0;
    while (i + digits < line.size() && std::isdigit(static_cast<unsigned char>(line[i + digits]))) {
        ++digits;
    }
    if (digits > 0 && i + digits < line.size()) {
        char after = line[i + digits];
        if (after == '.' || after == ')') {
            return trim(line.substr(i + digits + 1));
        }
    }
    return line;
}

std::string strip_surrounding_quotes(const std::string& line) {
    if (line.size() >= 2) {
        char first = line.front();
        char last = line.back();
        if ((first == '"' && last == '"') || (first == '\'' && last == '\'')) {
            return trim(line.substr(1, line.size() - 2));
        }
    }
    return line;
}

std::string to_lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

ParsedCQList parse_cqs(const std::string& raw, int expected_n) {
    ParsedCQList result;
    result.expected_n = expected_n;
    std::unordered_set<std::string> seen;

    std::size_t pos = 0;
    while (pos <= raw.size()) {
        std::size_t nl = raw.find('\n', pos);
        std::string line = raw.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? raw.size() + 1 : nl + 1;

        std::string cleaned = trim(line);
        if (cleaned.empty()) continue;
        cleaned = strip_enumeration_marker(cleaned);
        cleaned = strip_surrounding_quotes(cleaned);
        if (cleaned.empty()) continue;
        if (cleaned.back() != '?') {
            result.diagnostics.push_back(
                {ParseDiagnostic::Kind::dropped_line, "dropped non-question line: " + cleaned});
            continue;
        }
        std::string key = to_lower(cleaned);
        if (!seen.insert(key).second) {
            result.diagnostics.push_back(
                {ParseDiagnostic::Kind::duplicate_removed, "duplicate removed: " + cleaned});
            continue;
        }
        result.cqs.push_back(std::move(cleaned));
    }

    if (result.cqs.empty()) {
        throw Error(ErrorCode::no_questions_found, "no competency questions in response");
    }
    if (static_cast<int>(result.cqs.size()) != expected_n) {
        result.diagnostics.push_back({ParseDiagnostic::Kind::count_mismatch,
                                      "expected " + std::to_string(expected_n) + " questions, got " +
                                          std::to_string(result.cqs.size())});
    }
    return result;
}

}  // namespace cqgen
