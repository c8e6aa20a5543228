#pragma once

#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "condlog/syntax.hpp"

namespace condlog {

enum class Logic { QST, QC2, QC2Eq, QC2vE, QC2vEq, QC2cE, QC2cEq };

std::string_view logic_name(Logic logic);
std::optional<Logic> parse_logic(std::string_view name);
Language logic_language(Logic logic);
const std::vector<std::string>& logic_axioms(Logic logic);
const std::vector<std::string>& logic_rules(Logic logic);

/// Every schema id: "1".."12", "18".."24", "23v", "28".."30", "31c", "32c".
const std::vector<std::string>& all_schema_ids();
/// Every rule id: "13".."17", "25", "26", "27", "27v".
const std::vector<std::string>& all_rule_ids();

struct AxiomOptions {
  /// Axiom 11 replaces occurrences of s by t; the flag selects t by s.
  bool axiom11_reverse = false;
};

/// Throws InputError on an unknown id.
bool is_axiom_instance(std::string_view schema, const Formula& f, const AxiomOptions& options = {});

/// Truth-table check treating maximal non-truth-functional subformulas as atoms.
bool is_tautology(const Formula& f);

bool check_rule(std::string_view rule, std::span<const Formula> premises,
                const Formula& conclusion);

struct Justification {
  bool axiom = true;
  std::string id;
  std::vector<std::size_t> premises;  // 1-based line numbers
};

struct ProofLine {
  Formula formula;
  Justification just;
};

struct ProofScript {
  Logic logic = Logic::QC2;
  std::vector<ProofLine> lines;
};

struct Verdict {
  bool accepted = true;
  std::size_t line = 0;  // 1-based; 0 when accepted
  std::string reason;
};

Verdict verify_proof(const ProofScript& proof, const AxiomOptions& options = {});

/// A random instance of `schema` in the given language; always recognised
/// by is_axiom_instance.
Formula random_axiom_instance(std::string_view schema, std::mt19937_64& rng, Language lang);

}  // namespace condlog
