#include "cfworld/signature.hpp"

#include <set>

#include "cfworld/error.hpp"

namespace cfw {

Signature::Signature(std::vector<Variable> exogenous, std::vector<Variable> endogenous) {
  n_exo_ = exogenous.size();
  vars_ = std::move(exogenous);
  vars_.insert(vars_.end(), std::make_move_iterator(endogenous.begin()),
               std::make_move_iterator(endogenous.end()));
  std::set<std::string> names;
  for (const auto& v : vars_) {
    if (v.name.empty()) throw Error(Errc::InvalidSignature, "empty variable name");
    if (!names.insert(v.name).second)
      throw Error(Errc::DuplicateVariable, "variable '" + v.name + "' declared twice");
    if (v.range.empty()) throw Error(Errc::InvalidSignature, "variable '" + v.name + "' has an empty range");
    std::set<Value> seen(v.range.begin(), v.range.end());
    if (seen.size() != v.range.size())
      throw Error(Errc::InvalidSignature, "variable '" + v.name + "' repeats a range value");
  }
}

std::optional<VarId> Signature::find(std::string_view name) const {
  for (VarId i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

VarId Signature::require(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error(Errc::UnknownVariable, "unknown variable '" + std::string(name) + "'");
}

std::optional<int> Signature::value_index(VarId id, Value v) const {
  const auto& r = vars_.at(id).range;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] == v) return static_cast<int>(i);
  return std::nullopt;
}

int Signature::require_value(VarId id, Value v) const {
  if (auto i = value_index(id, v)) return *i;
  throw Error(Errc::ValueOutOfRange,
              "value " + std::to_string(v) + " not in range of '" + vars_.at(id).name + "'");
}

Signature Signature::endogenous_only() const {
  return Signature({}, std::vector<Variable>(vars_.begin() + static_cast<std::ptrdiff_t>(n_exo_), vars_.end()));
}

std::vector<Context> all_contexts(const Signature& sig) {
  std::vector<std::size_t> radices;
  for (VarId i = 0; i < sig.exogenous_count(); ++i) radices.push_back(sig.range_size(i));
  std::vector<Context> out;
  for_each_tuple(radices, [&](const std::vector<int>& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

std::vector<Intervention> all_interventions(const Signature& sig) {
  const std::size_t n = sig.endogenous_count();
  std::vector<Intervention> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<VarId> vars;
    std::vector<std::size_t> radices;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::size_t{1} << k)) {
        vars.push_back(sig.endogenous_id(k));
        radices.push_back(sig.range_size(sig.endogenous_id(k)));
      }
    }
    for_each_tuple(radices, [&](const std::vector<int>& d) {
      Intervention iv;
      for (std::size_t i = 0; i < vars.size(); ++i) iv.push_back({vars[i], d[i]});
      out.push_back(std::move(iv));
      return true;
    });
  }
  return out;
}

void validate_intervention(const Signature& sig, const Intervention& iv) {
  std::set<VarId> seen;
  for (const auto& b : iv) {
    if (b.var >= sig.size()) throw Error(Errc::UnknownVariable, "unknown variable id");
    if (!sig.is_endogenous(b.var))
      throw Error(Errc::NotEndogenous, "cannot intervene on exogenous variable '" + sig.var(b.var).name + "'");
    if (b.index < 0 || static_cast<std::size_t>(b.index) >= sig.range_size(b.var))
      throw Error(Errc::ValueOutOfRange, "intervention value out of range for '" + sig.var(b.var).name + "'");
    if (!seen.insert(b.var).second)
      throw Error(Errc::DuplicateVariable, "variable '" + sig.var(b.var).name + "' bound twice in intervention");
  }
}

std::string format_values(const Signature& sig, const EndoAssignment& a) {
  std::string s = "(";
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(sig.var(sig.endogenous_id(k)).range[static_cast<std::size_t>(a[k])]);
  }
  return s + ")";
}

}  // namespace cfw
