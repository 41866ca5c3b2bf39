#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfworld/signature.hpp"

namespace cfw {

enum class Op : unsigned char { Atom, True, False, Not, And, Or, Implies, Iff, Cf, Meta };

struct FormulaNode;

/// Immutable formula over atoms `X=x`. `Cf` is the counterfactual
/// conditional; an intervention prefix `[Y1<-y1; ...]body` is a Cf whose
/// antecedent is the left-nested conjunction of its atoms (or `true` when
/// empty) and which carries the intervention flag so it prints back in
/// bracket form. `Meta` nodes only appear in axiom-schema templates.
class Formula {
 public:
  static Formula atom(std::string var, Value value);
  static Formula truth();
  static Formula falsity();
  static Formula meta(std::string name);
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula cf(Formula antecedent, Formula consequent);
  static Formula intervention(const std::vector<std::pair<std::string, Value>>& bindings, Formula body);
  // <Y<-y>body, i.e. !([Y<-y] !body)
  static Formula diamond(const std::vector<std::pair<std::string, Value>>& bindings, Formula body);
  // Left-nested conjunction; `true` when empty.
  static Formula conj_all(const std::vector<Formula>& parts);
  static Formula disj_all(const std::vector<Formula>& parts);

  Op op() const;
  const std::string& name() const;  // variable (Atom) or metavariable (Meta)
  Value value() const;
  const Formula& lhs() const;  // Not operand, binary left, Cf antecedent
  const Formula& rhs() const;  // binary right, Cf consequent
  bool is_intervention() const;
  // Bindings of an intervention prefix, in written order.
  std::vector<std::pair<std::string, Value>> bindings() const;

  bool is_binary() const;
  bool contains_cf() const;
  std::size_t hash() const;
  const FormulaNode* node() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
  friend struct FormulaNode;
};

bool operator==(const Formula& a, const Formula& b);

/// Equality that ignores the intervention flag: `[X<-1]p` and `X=1 ~> p`
/// are the same formula of the conditional language.
bool same_formula(const Formula& a, const Formula& b);
Formula strip_notation(const Formula& f);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

struct ParseOptions {
  bool allow_meta = false;  // bare identifiers become metavariables
};

/// Throws Error(SyntaxError | UnknownOperator) with a byte position.
Formula parse_formula(std::string_view text, ParseOptions opts = {});
std::string to_string(const Formula& f);

enum class LangClass { LPROP = 0, LEX = 1, LC1 = 2, LC = 3 };
const char* lang_class_name(LangClass c);
LangClass classify(const Formula& f);

struct Diagnostic {
  std::string kind;  // UnknownVariable, NotEndogenous, ValueOutOfRange, DuplicateIntervention, Metavariable
  std::string message;
};

/// Empty result means well formed.
std::vector<Diagnostic> well_formed(const Formula& f, const Signature& sig);

/// Distinct atoms in first-occurrence order.
std::vector<std::pair<std::string, Value>> atoms_of(const Formula& f);

/// Replace metavariables by formulas; unbound metavariables stay.
Formula substitute(const Formula& tmpl, const std::map<std::string, Formula>& subst);

/// Match a template against a formula (modulo the intervention flag),
/// extending `bindings`. Returns false on mismatch.
bool match_template(const Formula& tmpl, const Formula& f, std::map<std::string, Formula>& bindings);

}  // namespace cfw
