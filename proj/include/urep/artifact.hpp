#pragma once

// Compiled artifacts: JSON persistence and text/LaTeX rendering.
//
// Big integers are decimal strings; polynomials are canonical text in the
// input grammar. W is stored as its template over g<i>, s<i>, t<i>, f together
// with the triples it is composed with.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "urep/semantics.hpp"

namespace urep {

inline constexpr const char* kToolVersion = "0.1.0";

class ArtifactError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InputSpec {
    std::string set_name;
    int delta = 1;
    std::string expression;
};

enum class FormSelection { one, two, both };

struct CompiledArtifact {
    InputSpec input;
    CompiledSet set;
    FormSelection forms = FormSelection::both;
    std::string tool_version = kToolVersion;

    bool has_form1() const { return forms != FormSelection::two; }
    bool has_form2() const { return forms != FormSelection::one; }
};

InputSpec input_from_json(const nlohmann::json& j);
nlohmann::ordered_json input_json(const InputSpec& input);

CompiledArtifact compile_artifact(const InputSpec& input, FormSelection forms = FormSelection::both,
                                  const FormOneOptions& options = {});

nlohmann::ordered_json artifact_json(const CompiledArtifact& artifact);
std::string artifact_dump(const CompiledArtifact& artifact);

/// Rebuilds an artifact from its JSON; a form that was not stored is compiled
/// from the stored constants. Throws ArtifactError on malformed input.
CompiledArtifact artifact_from_json(const nlohmann::json& j);
CompiledArtifact load_artifact(const std::string& path);

std::string artifact_text(const CompiledArtifact& artifact);
std::string artifact_latex(const CompiledArtifact& artifact);

}  // namespace urep
