#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "condlog/frame.hpp"
#include "condlog/logic.hpp"

namespace condlog {

/// Builds a model from its JSON document and checks the structural
/// invariants (f(P,w) within R(w), orders within R(w) x R(w), tuples and
/// local domains within D). Errors name the offending entry.
Model load_model(const nlohmann::json& doc);
Model load_model_text(std::string_view text);

nlohmann::json model_to_json(const Model& model);

/// Formulas are parsed in the language of the declared logic; premise
/// numbers must cite earlier lines.
ProofScript load_proof(const nlohmann::json& doc);
ProofScript load_proof_text(std::string_view text);

nlohmann::json proof_to_json(const ProofScript& proof);

std::string read_text_file(const std::string& path);

}  // namespace condlog
