#pragma once

#include <map>
#include <vector>

#include "cfworld/causal_model.hpp"
#include "cfworld/formula.hpp"

namespace cfw {

/// Evaluates LEX formulas of one model at one context. A basic formula
/// [Y<-y]body holds iff body holds in every solution of T_{Y<-y}; a maximal
/// Cf-free subformula outside any intervention is the k=0 basic formula
/// []body. Solution sets are cached per intervention.
class CausalEvaluator {
 public:
  CausalEvaluator(const CausalModel& model, Context context);

  /// Throws LanguageTooRich or IllFormed.
  bool eval(const Formula& f);
  /// Skips the language and well-formedness checks.
  bool eval_unchecked(const Formula& f);

  const std::vector<EndoAssignment>& solutions_under(const Intervention& iv);

 private:
  bool basic(const Intervention& iv, const Formula& body);
  bool holds(const Formula& body, const EndoAssignment& v) const;
  Intervention to_intervention(const Formula& cf) const;

  const CausalModel& model_;
  Context context_;
  std::map<Intervention, std::vector<EndoAssignment>> cache_;
};

bool eval_causal(const CausalModel& model, const Context& u, const Formula& f);

/// Rewrites a LEX formula into LPROP by distributing each intervention over
/// the Boolean structure of its body. Equivalence holds over models with
/// unique solutions only. Throws LanguageTooRich.
Formula to_lprop(const Formula& f);

}  // namespace cfw
