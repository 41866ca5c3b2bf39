#pragma once

#include <bitset>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cfworld/formula.hpp"
#include "cfworld/signature.hpp"

namespace cfw {

inline constexpr std::size_t kMaxWorlds = 256;
using WorldSet = std::bitset<kMaxWorlds>;

/// The relation <=_w of one world: leq[u] holds every v with u <=_w v.
struct WorldOrder {
  std::vector<WorldSet> leq;
};

/// Builds the order in which worlds are ranked strictly in the given
/// sequence (first = closest); worlds absent from `ranking` lie outside W_w.
WorldOrder order_from_ranking(std::size_t world_count, const std::vector<std::size_t>& ranking);
/// Same with ties: ranks[v] = level of v, or nullopt when v is not in W_w.
WorldOrder order_from_levels(const std::vector<std::optional<int>>& levels);

/// Finite counterfactual structure over the atoms X=x of a vocabulary
/// (a signature with endogenous variables only). Immutable once built.
class CounterfactualStructure {
 public:
  /// Acceptable structure: each world carries one value index per variable.
  /// Throws NotReflexive, NotTransitive, SelfNotMinimal, SelfNotInWw,
  /// TooManyWorlds, InvalidInput.
  static CounterfactualStructure acceptable(Signature vocab, std::vector<std::string> ids,
                                            std::vector<EndoAssignment> assignments, std::vector<WorldOrder> orders);
  /// Generic structure: truth[w][a] for every atom index a (see atom_index).
  static CounterfactualStructure generic(Signature vocab, std::vector<std::string> ids,
                                         std::vector<std::vector<bool>> truth, std::vector<WorldOrder> orders);

  const Signature& vocabulary() const { return vocab_; }
  std::size_t world_count() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t w) const { return ids_[w]; }
  std::optional<std::size_t> find_world(const std::string& id) const;
  std::size_t require_world(const std::string& id) const;  // throws UnknownWorld

  std::size_t atom_count() const { return atom_worlds_.size(); }
  std::optional<std::size_t> atom_index(const std::string& var, Value value) const;
  const WorldSet& atom_worlds(std::size_t atom) const { return atom_worlds_[atom]; }
  bool atom_true(std::size_t w, std::size_t atom) const { return atom_worlds_[atom][w]; }

  /// Value indices of world w when every variable has exactly one true atom.
  const std::optional<EndoAssignment>& assignment(std::size_t w) const { return assignments_[w]; }
  bool is_acceptable() const { return acceptable_; }

  const WorldSet& within(std::size_t w) const { return within_[w]; }                  // W_w
  bool leq(std::size_t w, std::size_t u, std::size_t v) const { return orders_[w].leq[u][v]; }
  const WorldSet& strictly_below(std::size_t w, std::size_t v) const { return below_[w][v]; }
  const WorldOrder& order(std::size_t w) const { return orders_[w]; }
  const std::vector<WorldOrder>& orders() const { return orders_; }

  WorldSet all_worlds() const;

  /// Same valuation, different orders; validated.
  // Same worlds and valuation, new orders. Enumerators that build orders
  // known to be valid may skip the check.
  CounterfactualStructure with_orders(std::vector<WorldOrder> orders, bool validate = true) const;

 private:
  CounterfactualStructure() = default;
  void finish_orders();
  void finish();

  Signature vocab_;
  std::vector<std::string> ids_;
  std::vector<std::size_t> atom_offset_;
  std::vector<WorldSet> atom_worlds_;
  std::vector<std::optional<EndoAssignment>> assignments_;
  bool acceptable_ = false;
  std::vector<WorldOrder> orders_;
  std::vector<WorldSet> within_;
  std::vector<std::vector<WorldSet>> below_;
};

struct StructureClass {
  bool acceptable = false;
  bool full = false;
  bool total = false;
  // Every world admits its own variable order (literal per-world reading).
  bool recursive = false;
  // One variable order works at every world.
  bool recursive_global = false;
  std::vector<std::optional<std::vector<VarId>>> world_orders;  // per-world witness
  std::optional<std::vector<VarId>> global_order;
};

StructureClass classify_structure(const CounterfactualStructure& m);
bool is_total(const CounterfactualStructure& m);
bool is_full(const CounterfactualStructure& m);

/// Evaluates L^C formulas over every world at once.
class StructureEvaluator {
 public:
  explicit StructureEvaluator(const CounterfactualStructure& m) : m_(m) {}

  /// Set of worlds satisfying f. Throws UnknownAtom.
  WorldSet sat(const Formula& f);
  WorldSet closest(std::size_t w, const WorldSet& s) const;
  void clear_cache() { cache_.clear(); }

 private:
  const CounterfactualStructure& m_;
  std::unordered_map<const FormulaNode*, std::pair<Formula, WorldSet>> cache_;
};

WorldSet closest(const CounterfactualStructure& m, std::size_t w, const Formula& f);
bool eval_cf(const CounterfactualStructure& m, std::size_t w, const Formula& f);

/// The unique closest world to w where every binding holds; requires a full,
/// total structure (nullopt if none exists).
std::optional<std::size_t> closest_where(const CounterfactualStructure& m, std::size_t w,
                                         const std::vector<std::pair<std::size_t, int>>& endo_bindings);

}  // namespace cfw
