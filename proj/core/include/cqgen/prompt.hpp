#pragma once

#include <string>

namespace cqgen {

enum class ArtifactKind { ontology, knowledge_graph };

const char* to_string(ArtifactKind kind);
ArtifactKind artifact_kind_from_string(const std::string& name);

/// The four per-task template variables plus the artifact phrasing switch.
/// With ArtifactKind::ontology the derivation sentence keeps the hedged
/// "ontology (or knowledge graph)" wording; knowledge_graph narrows it.
struct PromptVariables {
    std::string domain_name;
    std::string ontology_purpose;
    std::string cq_definition;
    int n_cqs = 1;
    ArtifactKind artifact_kind = ArtifactKind::ontology;
};

struct RenderedPrompt {
    std::string text;
    PromptVariables variables;
    std::string template_version;
};

/// Placeholder-substitution template. Placeholders use single braces:
/// {domain_name}, {ontology_purpose}, {cq_definition}, {n_cqs} and the
/// optional {artifact}. Custom templates must declare all four variables.
class PromptTemplate {
public:
    /// The built-in five-sentence template, version "v1".
    static PromptTemplate builtin();

    /// Loads a custom template from a file; validates that all four variable
    /// placeholders appear (InvalidTemplate otherwise). The version is
    /// derived from a stable hash of the template body.
    static PromptTemplate from_file(const std::string& path);
    static PromptTemplate from_string(const std::string& body, const std::string& version);

    /// Substitutes variables into the template. Throws MissingVariable for
    /// blank strings, InvalidCount for n_cqs < 1, and InvalidTemplate if an
    /// unresolved placeholder survives substitution.
    RenderedPrompt render(const PromptVariables& vars) const;

    const std::string& version() const { return version_; }
    const std::string& body() const { return body_; }

private:
    PromptTemplate(std::string body, std::string version);

    std::string body_;
    std::string version_;
};

/// Convenience: render with the built-in template.
RenderedPrompt render_prompt(const PromptVariables& vars);

/// The stock one-sentence definition of a competency question used when a
/// preset does not override it.
std::string default_cq_definition();

/// Loads prompt variables from a preset file (JSON with keys domain_name,
/// ontology_purpose, cq_definition, n_cqs, artifact_kind; cq_definition
/// defaults to default_cq_definition()).
PromptVariables load_prompt_preset(const std::string& path);
void save_prompt_preset(const PromptVariables& vars, const std::string& path);

/// Collapses whitespace runs to single spaces and trims the ends; the
/// comparison form used by the prompt-fidelity checks.
std::string normalize_whitespace(const std::string& text);

}  // namespace cqgen
