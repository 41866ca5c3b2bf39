#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfworld/signature.hpp"

namespace cfw {

/// Extensional description of one structural equation: the output for every
/// combination of values of `inputs`. Variables left out of `inputs` are
/// ones the equation does not depend on.
struct TableSpec {
  std::vector<std::string> inputs;
  std::vector<std::pair<std::vector<Value>, Value>> rows;
};

class CausalModel {
 public:
  /// Validates the tables; throws MissingTable, NonTotalTable,
  /// ValueOutOfRange, UnknownVariable or InvalidInput.
  static CausalModel make(Signature sig, const std::map<std::string, TableSpec>& tables);

  /// Raw construction from full tables (value indices), one per endogenous
  /// variable, each indexed by row_index(). Used by enumerators.
  static CausalModel from_full_tables(Signature sig, std::vector<std::vector<int>> tables);

  const Signature& signature() const { return sig_; }

  /// F_X evaluated at a full assignment (value indices over all variables,
  /// exogenous first). The entry for X itself is ignored.
  int equation(std::size_t endo, std::span<const int> full) const {
    return tables_[endo][row_index(endo, full)];
  }
  std::size_t row_index(std::size_t endo, std::span<const int> full) const {
    std::size_t r = 0;
    const auto& s = strides_[endo];
    for (std::size_t i = 0; i < s.size(); ++i) r += s[i] * static_cast<std::size_t>(full[i]);
    return r;
  }
  const std::vector<int>& table(std::size_t endo) const { return tables_[endo]; }
  const std::vector<std::vector<int>>& tables() const { return tables_; }
  std::size_t row_count(std::size_t endo) const { return tables_[endo].size(); }

  bool is_pinned(std::size_t endo) const { return pinned_[endo].has_value(); }
  const std::vector<std::optional<int>>& pinned() const { return pinned_; }

  /// T_{X<-x}: each bound variable's equation becomes the constant. Throws
  /// NotEndogenous, ValueOutOfRange, DuplicateVariable.
  CausalModel intervene(const Intervention& iv) const;

  /// Every endogenous assignment satisfying all equations in context u,
  /// found by exhaustive enumeration. Throws PartialContext.
  std::vector<EndoAssignment> solutions(const Context& u) const;

  /// Whether endogenous variable `x` semantically depends on variable `y`.
  bool depends_on(std::size_t endo_x, VarId y) const;

  bool operator==(const CausalModel& o) const { return sig_ == o.sig_ && tables_ == o.tables_ && pinned_ == o.pinned_; }

 private:
  CausalModel(Signature sig, std::vector<std::vector<int>> tables);

  Signature sig_;
  std::vector<std::vector<int>> tables_;
  std::vector<std::vector<std::size_t>> strides_;
  std::vector<std::optional<int>> pinned_;
};

struct RecursionInfo {
  bool recursive = false;
  std::vector<VarId> order;  // topological witness when recursive
  std::vector<VarId> cycle;  // v0 -> v1 -> ... -> v0 (closing vertex repeated) otherwise
};

/// Exact dependence graph (edge Y -> X iff F_X depends on Y) tested for
/// acyclicity. Ties are broken by declaration order.
RecursionInfo is_recursive(const CausalModel& t);

struct TunWitness {
  Intervention intervention;
  Context context;
  std::size_t solution_count = 0;
};

struct TunInfo {
  bool unique = false;
  std::optional<TunWitness> witness;
};

TunInfo in_tun(const CausalModel& t);

enum class ModelClass { Trec, TunOnly, TOnly };

ModelClass class_of(const CausalModel& t);
const char* model_class_name(ModelClass c);

}  // namespace cfw
