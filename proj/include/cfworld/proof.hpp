#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cfworld/error.hpp"
#include "cfworld/formula.hpp"
#include "cfworld/signature.hpp"

namespace cfw {

/// Enabled axiom schemas (A0..A7, V1..V3) and rules (MP, RA1, RA2).
/// A0 and MP are always on.
struct AxiomBase {
  std::set<std::string> axioms;
  std::set<std::string> rules;

  static AxiomBase ax();  // A0-A6, MP, RA1, RA2
  bool has_axiom(const std::string& name) const;
  bool has_rule(const std::string& name) const;
};

enum class Rule { Axiom, Taut, MP, RA1, RA2 };
const char* rule_name(Rule r);

struct Justification {
  Rule rule = Rule::Taut;
  std::string schema;                     // Axiom
  std::map<std::string, Formula> subst;   // Axiom; empty means "find it"
  std::vector<std::size_t> from;          // cited lines, 0-based
  bool premise_by_taut = false;           // RA1/RA2 premise discharged as a tautology
};

struct ProofLine {
  Formula formula;
  Justification by;
};

struct ProofScript {
  std::string name;
  AxiomBase base;
  std::optional<Signature> signature;  // ranges for V1
  std::vector<ProofLine> lines;
};

struct Violation {
  Errc code = Errc::RuleMismatch;
  std::string message;
};

std::optional<Violation> check_line(const ProofScript& script, std::size_t i);

struct ProofResult {
  bool verified = false;
  std::optional<Formula> conclusion;
  std::size_t line = 0;  // first failing line, 0-based
  std::optional<Violation> violation;
};

ProofResult check_proof(const ProofScript& script);

/// Propositional skeleton: atoms, true/false and Cf subformulas are the
/// letters. Letters are compared modulo intervention notation.
std::vector<Formula> opaque_letters(const Formula& f);
bool is_tautology(const Formula& f);  // throws BoundsTooLarge past 24 letters

/// JSON proof file; cited line numbers are 1-based in the file.
ProofScript proof_from_json(const std::string& text);
std::string proof_to_json(const ProofScript& script);

}  // namespace cfw
