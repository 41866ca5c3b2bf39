#include "cfworld/causal_model.hpp"

#include <algorithm>
#include <set>

#include "cfworld/error.hpp"

namespace cfw {

namespace {

std::vector<std::vector<std::size_t>> make_strides(const Signature& sig) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 0; k < sig.endogenous_count(); ++k) {
    const VarId x = sig.endogenous_id(k);
    std::vector<std::size_t> s(sig.size(), 0);
    std::size_t mult = 1;
    for (VarId i = sig.size(); i-- > 0;) {
      if (i == x) continue;
      s[i] = mult;
      mult *= sig.range_size(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::size_t full_row_count(const Signature& sig, VarId x) {
  std::size_t n = 1;
  for (VarId i = 0; i < sig.size(); ++i)
    if (i != x) n *= sig.range_size(i);
  return n;
}

}  // namespace

CausalModel::CausalModel(Signature sig, std::vector<std::vector<int>> tables)
    : sig_(std::move(sig)), tables_(std::move(tables)) {
  strides_ = make_strides(sig_);
  pinned_.assign(sig_.endogenous_count(), std::nullopt);
}

CausalModel CausalModel::from_full_tables(Signature sig, std::vector<std::vector<int>> tables) {
  if (tables.size() != sig.endogenous_count())
    throw Error(Errc::MissingTable, "expected one table per endogenous variable");
  for (std::size_t k = 0; k < tables.size(); ++k) {
    const VarId x = sig.endogenous_id(k);
    if (tables[k].size() != full_row_count(sig, x))
      throw Error(Errc::NonTotalTable, "table for '" + sig.var(x).name + "' has the wrong number of rows");
    for (int v : tables[k])
      if (v < 0 || static_cast<std::size_t>(v) >= sig.range_size(x))
        throw Error(Errc::ValueOutOfRange, "table for '" + sig.var(x).name + "' emits a value outside its range");
  }
  return CausalModel(std::move(sig), std::move(tables));
}

CausalModel CausalModel::make(Signature sig, const std::map<std::string, TableSpec>& specs) {
  for (const auto& [name, spec] : specs) {
    const VarId id = sig.require(name);
    if (!sig.is_endogenous(id))
      throw Error(Errc::InvalidInput, "equation given for exogenous variable '" + name + "'");
  }
  std::vector<std::vector<int>> tables;
  for (std::size_t k = 0; k < sig.endogenous_count(); ++k) {
    const VarId x = sig.endogenous_id(k);
    const auto& xname = sig.var(x).name;
    auto it = specs.find(xname);
    if (it == specs.end()) throw Error(Errc::MissingTable, "no equation for '" + xname + "'");
    const TableSpec& spec = it->second;

    std::vector<VarId> inputs;
    for (const auto& in : spec.inputs) {
      const VarId id = sig.require(in);
      if (id == x) throw Error(Errc::InvalidInput, "equation for '" + xname + "' lists itself as an input");
      if (std::find(inputs.begin(), inputs.end(), id) != inputs.end())
        throw Error(Errc::DuplicateVariable, "equation for '" + xname + "' repeats input '" + in + "'");
      inputs.push_back(id);
    }

    std::map<std::vector<int>, int> rows;
    for (const auto& [key, out] : spec.rows) {
      if (key.size() != inputs.size())
        throw Error(Errc::InvalidInput, "row of '" + xname + "' has the wrong arity");
      std::vector<int> idx;
      for (std::size_t i = 0; i < key.size(); ++i) idx.push_back(sig.require_value(inputs[i], key[i]));
      const int o = sig.require_value(x, out);
      auto [pos, fresh] = rows.emplace(idx, o);
      if (!fresh && pos->second != o)
        throw Error(Errc::InvalidInput, "conflicting rows in the table of '" + xname + "'");
    }
    std::size_t expected = 1;
    for (VarId id : inputs) expected *= sig.range_size(id);
    if (rows.size() != expected)
      throw Error(Errc::NonTotalTable, "table of '" + xname + "' covers " + std::to_string(rows.size()) + " of " +
                                           std::to_string(expected) + " input rows");

    // Expand to a table over every other variable.
    std::vector<std::size_t> radices;
    std::vector<VarId> others;
    for (VarId i = 0; i < sig.size(); ++i) {
      if (i == x) continue;
      others.push_back(i);
      radices.push_back(sig.range_size(i));
    }
    std::vector<int> full;
    full.reserve(full_row_count(sig, x));
    for_each_tuple(radices, [&](const std::vector<int>& d) {
      std::vector<int> key;
      for (VarId in : inputs) {
        const auto pos = static_cast<std::size_t>(std::find(others.begin(), others.end(), in) - others.begin());
        key.push_back(d[pos]);
      }
      full.push_back(rows.at(key));
      return true;
    });
    tables.push_back(std::move(full));
  }
  return CausalModel(std::move(sig), std::move(tables));
}

CausalModel CausalModel::intervene(const Intervention& iv) const {
  validate_intervention(sig_, iv);
  CausalModel out = *this;
  for (const auto& b : iv) {
    const std::size_t k = sig_.endogenous_index(b.var);
    std::fill(out.tables_[k].begin(), out.tables_[k].end(), b.index);
    out.pinned_[k] = b.index;
  }
  return out;
}

std::vector<EndoAssignment> CausalModel::solutions(const Context& u) const {
  const std::size_t ne = sig_.exogenous_count();
  if (u.size() != ne) throw Error(Errc::PartialContext, "context must bind every exogenous variable");
  for (std::size_t i = 0; i < ne; ++i)
    if (u[i] < 0 || static_cast<std::size_t>(u[i]) >= sig_.range_size(i))
      throw Error(Errc::ValueOutOfRange, "context value out of range for '" + sig_.var(i).name + "'");

  const std::size_t n = sig_.endogenous_count();
  std::vector<std::size_t> radices;
  for (std::size_t k = 0; k < n; ++k) radices.push_back(sig_.range_size(sig_.endogenous_id(k)));
  std::vector<int> full(u);
  full.resize(ne + n, 0);
  std::vector<EndoAssignment> out;
  for_each_tuple(radices, [&](const std::vector<int>& d) {
    std::copy(d.begin(), d.end(), full.begin() + static_cast<std::ptrdiff_t>(ne));
    for (std::size_t k = 0; k < n; ++k)
      if (equation(k, full) != d[k]) return true;
    out.push_back(d);
    return true;
  });
  return out;
}

bool CausalModel::depends_on(std::size_t endo_x, VarId y) const {
  const VarId x = sig_.endogenous_id(endo_x);
  if (y == x || pinned_[endo_x]) return false;
  const std::size_t stride = strides_[endo_x][y];
  const std::size_t range = sig_.range_size(y);
  const auto& t = tables_[endo_x];
  for (std::size_t r = 0; r < t.size(); ++r) {
    if ((r / stride) % range != 0) continue;
    for (std::size_t k = 1; k < range; ++k)
      if (t[r + k * stride] != t[r]) return true;
  }
  return false;
}

RecursionInfo is_recursive(const CausalModel& t) {
  const Signature& sig = t.signature();
  const std::size_t n = sig.endogenous_count();
  // pred[x] = endogenous variables x depends on
  std::vector<std::vector<std::size_t>> pred(n);
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && t.depends_on(x, sig.endogenous_id(y))) {
        pred[x].push_back(y);
        ++indeg[x];
      }

  RecursionInfo info;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t x = 0; x < n; ++x)
      if (!done[x] && indeg[x] == 0) {
        pick = x;
        break;
      }
    if (pick == n) break;
    done[pick] = true;
    info.order.push_back(sig.endogenous_id(pick));
    for (std::size_t x = 0; x < n; ++x)
      if (!done[x] && std::find(pred[x].begin(), pred[x].end(), pick) != pred[x].end()) --indeg[x];
  }
  if (info.order.size() == n) {
    info.recursive = true;
    return info;
  }
  info.order.clear();

  // Every remaining vertex has a remaining predecessor; walk backwards until a repeat.
  std::size_t v = 0;
  while (done[v]) ++v;
  std::vector<std::size_t> walk;
  std::vector<int> seen_at(n, -1);
  while (seen_at[v] < 0) {
    seen_at[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    for (std::size_t p : pred[v])
      if (!done[p]) {
        v = p;
        break;
      }
  }
  std::vector<std::size_t> loop(walk.begin() + seen_at[v], walk.end());
  std::reverse(loop.begin(), loop.end());
  // Rotate so the cycle starts at its smallest vertex.
  std::rotate(loop.begin(), std::min_element(loop.begin(), loop.end()), loop.end());
  for (std::size_t k : loop) info.cycle.push_back(sig.endogenous_id(k));
  info.cycle.push_back(info.cycle.front());
  return info;
}

TunInfo in_tun(const CausalModel& t) {
  const auto contexts = all_contexts(t.signature());
  for (const auto& iv : all_interventions(t.signature())) {
    const CausalModel ti = t.intervene(iv);
    for (const auto& u : contexts) {
      const std::size_t count = ti.solutions(u).size();
      if (count != 1) return {false, TunWitness{iv, u, count}};
    }
  }
  return {true, std::nullopt};
}

ModelClass class_of(const CausalModel& t) {
  if (is_recursive(t).recursive) return ModelClass::Trec;
  if (in_tun(t).unique) return ModelClass::TunOnly;
  return ModelClass::TOnly;
}

const char* model_class_name(ModelClass c) {
  switch (c) {
    case ModelClass::Trec: return "Trec";
    case ModelClass::TunOnly: return "Tun-only";
    case ModelClass::TOnly: return "T-only";
  }
  return "?";
}

}  // namespace cfw
