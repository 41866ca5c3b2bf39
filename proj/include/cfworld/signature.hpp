#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cfw {

using Value = int;
using VarId = std::size_t;

struct Variable {
  std::string name;
  std::vector<Value> range;

  bool operator==(const Variable&) const = default;
};

/// Variable vocabulary with finite ranges. Exogenous variables occupy the
/// first ids, endogenous ones follow; both keep their declaration order.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<Variable> exogenous, std::vector<Variable> endogenous);

  std::size_t size() const { return vars_.size(); }
  std::size_t exogenous_count() const { return n_exo_; }
  std::size_t endogenous_count() const { return vars_.size() - n_exo_; }

  const Variable& var(VarId id) const { return vars_.at(id); }
  const std::vector<Variable>& variables() const { return vars_; }
  std::size_t range_size(VarId id) const { return vars_[id].range.size(); }

  bool is_exogenous(VarId id) const { return id < n_exo_; }
  bool is_endogenous(VarId id) const { return id >= n_exo_ && id < vars_.size(); }
  VarId endogenous_id(std::size_t k) const { return n_exo_ + k; }
  std::size_t endogenous_index(VarId id) const { return id - n_exo_; }

  std::optional<VarId> find(std::string_view name) const;
  VarId require(std::string_view name) const;  // throws UnknownVariable

  std::optional<int> value_index(VarId id, Value v) const;
  int require_value(VarId id, Value v) const;  // throws ValueOutOfRange

  // Signature containing only the endogenous variables (the atom vocabulary
  // seen by counterfactual structures).
  Signature endogenous_only() const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Variable> vars_;
  std::size_t n_exo_ = 0;
};

/// One variable bound to a value, stored as an index into the variable's range.
struct Binding {
  VarId var;
  int index;

  bool operator==(const Binding&) const = default;
  auto operator<=>(const Binding&) const = default;
};

/// Interventions bind distinct endogenous variables.
using Intervention = std::vector<Binding>;

/// Value indices of every exogenous variable, in declaration order.
using Context = std::vector<int>;

/// Value indices of every endogenous variable, in declaration order.
using EndoAssignment = std::vector<int>;

// Calls fn(indices) for every element of the product of the given radices,
// least significant digit last. Stops early when fn returns false.
template <class Fn>
void for_each_tuple(const std::vector<std::size_t>& radices, Fn&& fn) {
  std::vector<int> digits(radices.size(), 0);
  for (std::size_t r : radices)
    if (r == 0) return;
  while (true) {
    if (!fn(static_cast<const std::vector<int>&>(digits))) return;
    std::size_t i = digits.size();
    while (i > 0) {
      --i;
      if (static_cast<std::size_t>(++digits[i]) < radices[i]) break;
      digits[i] = 0;
      if (i == 0) return;
    }
    if (digits.empty()) return;
  }
}

std::vector<Context> all_contexts(const Signature& sig);

// Every intervention over distinct endogenous variables (variables in
// declaration order), including the empty one. Deterministic order: by
// variable subset bitmask, then by values.
std::vector<Intervention> all_interventions(const Signature& sig);

// Throws NotEndogenous, ValueOutOfRange or DuplicateVariable.
void validate_intervention(const Signature& sig, const Intervention& iv);

std::string format_values(const Signature& sig, const EndoAssignment& a);  // "(0,1,1)"

}  // namespace cfw
