#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfworld/causal_model.hpp"
#include "cfworld/formula.hpp"
#include "cfworld/structure.hpp"

namespace cfw {

struct WorldNaming {
  std::vector<Context> contexts;
  std::vector<std::size_t> context_world;  // w_u, parallel to contexts
  // w_{u, X<-x} keyed by context index and sorted intervention.
  std::map<std::pair<std::size_t, Intervention>, std::size_t> intervened;

  std::size_t world_for(std::size_t context_index, Intervention iv) const;
};

struct ModelTranslation {
  CounterfactualStructure structure;
  WorldNaming naming;
};

/// One world per assignment to all variables; W_w holds the worlds of w's
/// context. Orders rank worlds by the variables whose equation they break,
/// read along the model's variable order, then by assignment. Throws
/// NotRecursive, TooManyWorlds.
ModelTranslation causal_to_structure(const CausalModel& t);

struct StructureToModelOptions {
  // Exogenous variables of the result; defaults to a single U with range {0}.
  std::optional<std::vector<Variable>> exogenous;
  // Give each world its own context: one exogenous variable named
  // `per_world_variable` whose value i selects world i.
  bool per_world = false;
  std::string per_world_variable = "W";
};

/// T_{M,w}, built along w's variable order. Per-world mode needs one order
/// that works at every world. Throws NotRecursiveStructure, UnknownWorld.
CausalModel structure_to_causal(const CounterfactualStructure& m, std::size_t w,
                                const StructureToModelOptions& opts = {});

struct Disagreement {
  Formula formula;
  Context context;
  std::size_t world = 0;
  bool causal = false;
  bool structure = false;
};

struct EquivalenceReport {
  bool ok = true;
  std::size_t checked = 0;
  std::optional<Disagreement> first;
};

/// Compares eval_causal(T, u, f) with eval_cf(M, w, f) for every pair
/// (u, w) in `pairing` and every corpus formula; stops at the first
/// disagreement.
EquivalenceReport certify_equivalence(const CausalModel& t, const CounterfactualStructure& m,
                                      const std::vector<std::pair<Context, std::size_t>>& pairing,
                                      const std::vector<Formula>& corpus);

/// LPROP formulas over the endogenous variables of `sig`. Depth 0: every
/// [Y<-y](X=x) (including the empty intervention). Depth 1 adds negations
/// and pairwise conjunctions and disjunctions. Throws BoundsTooLarge above
/// `cap` formulas.
std::vector<Formula> lprop_corpus(const Signature& sig, int depth, std::size_t cap = 200000);

}  // namespace cfw
