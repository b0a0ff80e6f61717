#include "cqgen/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cqgen/error.hpp"
#include "cqgen/hash.hpp"

namespace cqgen {

namespace {

constexpr const char* kBuiltinTemplate =
    "You are an expert in {domain_name}.\n"
    "Your purpose is to {ontology_purpose}.\n"
    "A competency question is {cq_definition}.\n"
    "Derive {n_cqs} competency questions for the above-mentioned {artifact}, "
    "using the provided documents.\n"
    "Return ONLY the competency questions, no other text.";

constexpr const char* kBuiltinVersion = "v1";

const char* kRequiredPlaceholders[] = {"{domain_name}", "{ontology_purpose}", "{cq_definition}",
                                       "{n_cqs}"};

bool is_blank(const std::string& s) {
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

void replace_all(std::string& text, const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
        text.replace(pos, from.size(), to);
        pos += to.size();
    }
}

}  // namespace

const char* to_string(ArtifactKind kind) {
    return kind == ArtifactKind::ontology ? "ontology" : "knowledge_graph";
}

ArtifactKind artifact_kind_from_string(const std::string& name) {
    if (name == "ontology") return ArtifactKind::ontology;
    if (name == "knowledge_graph") return ArtifactKind::knowledge_graph;
    throw Error(ErrorCode::invalid_argument, "unknown artifact kind '" + name + "'");
}

PromptTemplate::PromptTemplate(std::string body, std::string version)
    : body_(std::move(body)), version_(std::move(version)) {}

PromptTemplate PromptTemplate::builtin() {
    return PromptTemplate(kBuiltinTemplate, kBuiltinVersion);
}

PromptTemplate PromptTemplate::from_string(const std::string& body, const std::string& version) {
    for (const char* placeholder : kRequiredPlaceholders) {
        if (body.find(placeholder) == std::string::npos) {
            throw Error(ErrorCode::invalid_template,
                        std::string("template must declare ") + placeholder);
        }
    }
    return PromptTemplate(body, version);
}

PromptTemplate PromptTemplate::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot read template file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string body = buf.str();
    // Trailing newline from the editor is not part of the template.
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
    return from_string(body, "custom-" + to_hex(fnv1a64(body)).substr(0, 8));
}

RenderedPrompt PromptTemplate::render(const PromptVariables& vars) const {
    if (vars.n_cqs < 1) {
        throw Error(ErrorCode::invalid_count, "n_cqs must be >= 1");
    }
    if (is_blank(vars.domain_name)) {
        throw Error(ErrorCode::missing_variable, "domain_name is empty");
    }
    if (is_blank(vars.ontology_purpose)) {
        throw Error(ErrorCode::missing_variable, "ontology_purpose is empty");
    }
    if (is_blank(vars.cq_definition)) {
        throw Error(ErrorCode::missing_variable, "cq_definition is empty");
    }
    std::string text = body_;
    replace_all(text, "{domain_name}", vars.domain_name);
    replace_all(text, "{ontology_purpose}", vars.ontology_purpose);
    replace_all(text, "{cq_definition}", vars.cq_definition);
    replace_all(text, "{n_cqs}", std::to_string(vars.n_cqs));
    replace_all(text, "{artifact}",
                vars.artifact_kind == ArtifactKind::ontology ? "ontology (or knowledge graph)"
                                                             : "knowledge graph");
    // Any surviving {identifier} is a placeholder the substitution missed,
    // including names this template never declared.
    for (std::size_t open = text.find('{'); open != std::string::npos;
         open = text.find('{', open + 1)) {
        const std::size_t close = text.find('}', open + 1);
        if (close == std::string::npos) break;
        const std::string inner = text.substr(open + 1, close - open - 1);
        const bool identifier =
            !inner.empty() && std::all_of(inner.begin(), inner.end(), [](unsigned char c) {
                return std::isalnum(c) != 0 || c == '_';
            });
        if (identifier) {
            throw Error(ErrorCode::invalid_template, "unresolved placeholder {" + inner + "}");
        }
    }
    return RenderedPrompt{std::move(text), vars, version_};
}

RenderedPrompt render_prompt(const PromptVariables& vars) {
    return PromptTemplate::builtin().render(vars);
}

std::string default_cq_definition() {
    return "a natural language question that specifies the requirements of an ontology "
           "and can be answered by that ontology";
}

PromptVariables load_prompt_preset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot read preset file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::io_error, std::string("cannot parse preset: ") + e.what());
    }
    PromptVariables vars;
    vars.domain_name = j.value("domain_name", "");
    vars.ontology_purpose = j.value("ontology_purpose", "");
    vars.cq_definition = j.value("cq_definition", default_cq_definition());
    vars.n_cqs = j.value("n_cqs", 0);
    vars.artifact_kind = artifact_kind_from_string(j.value("artifact_kind", "ontology"));
    if (vars.n_cqs < 1) {
        throw Error(ErrorCode::invalid_count, "preset n_cqs must be >= 1");
    }
    return vars;
}

void save_prompt_preset(const PromptVariables& vars, const std::string& path) {
    nlohmann::ordered_json j;
    j["domain_name"] = vars.domain_name;
    j["ontology_purpose"] = vars.ontology_purpose;
    j["cq_definition"] = vars.cq_definition;
    j["n_cqs"] = vars.n_cqs;
    j["artifact_kind"] = to_string(vars.artifact_kind);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::io_error, "cannot write preset file '" + path + "'");
    }
    out << j.dump(2) << '\n';
}

std::string normalize_whitespace(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool in_space = false;
    for (char raw : text) {
        if (std::isspace(static_cast<unsigned char>(raw))) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out.push_back(' ');
        in_space = false;
        out.push_back(raw);
    }
    return out;
}

}  // namespace cqgen
