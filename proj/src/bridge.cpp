#include "cfworld/bridge.hpp"

#include <algorithm>
#include <functional>

#include "cfworld/causal_eval.hpp"
#include "cfworld/error.hpp"

namespace cfw {

std::size_t WorldNaming::world_for(std::size_t context_index, Intervention iv) const {
  std::sort(iv.begin(), iv.end());
  auto it = intervened.find({context_index, std::move(iv)});
  if (it == intervened.end()) throw Error(Errc::InvalidInput, "no world recorded for this intervention");
  return it->second;
}

namespace {

std::string world_name(const Signature& sig, const std::vector<int>& full) {
  std::string s;
  for (VarId i = 0; i < sig.size(); ++i) {
    if (i) s += ",";
    s += sig.var(i).name + "=" + std::to_string(sig.var(i).range[full[i]]);
  }
  return s;
}

// Key ordering worlds of one context: indicators of broken equations in
// `topo` order, then the endogenous assignment.
std::vector<int> miracle_key(const std::vector<int>& full, const std::vector<VarId>& topo, const Signature& sig,
                             const std::function<int(std::size_t, const std::vector<int>&)>& expected) {
  std::vector<int> key;
  for (VarId x : topo) {
    const std::size_t k = sig.endogenous_index(x);
    key.push_back(full[x] != expected(k, full) ? 1 : 0);
  }
  key.insert(key.end(), full.begin() + static_cast<std::ptrdiff_t>(sig.exogenous_count()), full.end());
  return key;
}

}  // namespace

ModelTranslation causal_to_structure(const CausalModel& t) {
  const auto rec = is_recursive(t);
  if (!rec.recursive) throw Error(Errc::NotRecursive, "causal_to_structure needs a recursive model");
  const Signature& sig = t.signature();
  const std::size_t ne = sig.exogenous_count();

  std::vector<std::size_t> radices;
  for (VarId i = 0; i < sig.size(); ++i) radices.push_back(sig.range_size(i));
  std::size_t n = 1;
  for (std::size_t r : radices) {
    n *= r;
    if (n > kMaxWorlds) throw Error(Errc::TooManyWorlds, "the model has more than 256 assignments");
  }
  std::vector<std::vector<int>> full;
  for_each_tuple(radices, [&](const std::vector<int>& d) {
    full.push_back(d);
    return true;
  });
  auto index_of = [&](const std::vector<int>& d) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d.size(); ++i) idx = idx * radices[i] + static_cast<std::size_t>(d[i]);
    return idx;
  };

  std::vector<std::string> ids;
  std::vector<EndoAssignment> vals;
  for (const auto& d : full) {
    ids.push_back(world_name(sig, d));
    vals.emplace_back(d.begin() + static_cast<std::ptrdiff_t>(ne), d.end());
  }

  WorldNaming naming;
  naming.contexts = all_contexts(sig);
  const auto ivs = all_interventions(sig);
  for (std::size_t ci = 0; ci < naming.contexts.size(); ++ci) {
    const Context& u = naming.contexts[ci];
    for (const auto& iv : ivs) {
      const auto sols = t.intervene(iv).solutions(u);
      if (sols.size() != 1) throw Error(Errc::Internal, "recursive model without a unique solution");
      std::vector<int> d(u);
      d.insert(d.end(), sols[0].begin(), sols[0].end());
      auto key = iv;
      std::sort(key.begin(), key.end());
      naming.intervened[{ci, key}] = index_of(d);
      if (iv.empty()) naming.context_world.push_back(index_of(d));
    }
  }

  std::vector<WorldOrder> orders(n);
  for (std::size_t w = 0; w < n; ++w) {
    const Context u(full[w].begin(), full[w].begin() + static_cast<std::ptrdiff_t>(ne));
    const std::size_t ci = index_of(u);
    const bool actual = naming.context_world[ci] == w;
    std::function<int(std::size_t, const std::vector<int>&)> expected;
    if (actual) {
      expected = [&](std::size_t k, const std::vector<int>& d) { return t.equation(k, d); };
    } else {
      expected = [&, w](std::size_t k, const std::vector<int>&) { return full[w][ne + k]; };
    }
    std::vector<std::pair<std::vector<int>, std::size_t>> ranked;
    for (std::size_t v = 0; v < n; ++v)
      if (std::equal(u.begin(), u.end(), full[v].begin())) ranked.emplace_back(miracle_key(full[v], rec.order, sig, expected), v);
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::size_t> ranking;
    for (const auto& r : ranked) ranking.push_back(r.second);
    orders[w] = order_from_ranking(n, ranking);
  }

  ModelTranslation out{CounterfactualStructure::acceptable(sig.endogenous_only(), ids, vals, orders), naming};

  // Constraint (1): the closest world where X=x is the one T_{X<-x} produces.
  for (const auto& [key, target] : out.naming.intervened) {
    const std::size_t wu = out.naming.context_world[key.first];
    std::vector<std::pair<std::size_t, int>> bs;
    for (const auto& b : key.second) bs.emplace_back(sig.endogenous_index(b.var), b.index);
    if (closest_where(out.structure, wu, bs) != target)
      throw Error(Errc::Internal, "order completion broke the closest-world constraint");
  }
  if (!classify_structure(out.structure).recursive_global)
    throw Error(Errc::Internal, "order completion is not recursive");
  return out;
}

CausalModel structure_to_causal(const CounterfactualStructure& m, std::size_t w, const StructureToModelOptions& opts) {
  if (w >= m.world_count()) throw Error(Errc::UnknownWorld, "world index out of range");
  const auto cls = classify_structure(m);
  if (!cls.recursive) throw Error(Errc::NotRecursiveStructure, "structure is not recursive");
  // One model for all worlds needs one variable order; T_{M,w} only uses w's.
  if (opts.per_world && !cls.recursive_global)
    throw Error(Errc::NotRecursiveStructure,
                "structure is recursive only world by world; per-world contexts need a single variable order");
  const std::vector<VarId>& order = opts.per_world ? *cls.global_order : *cls.world_orders[w];
  const Signature& voc = m.vocabulary();
  const std::size_t nv = voc.size();

  std::vector<Variable> exo;
  if (opts.per_world) {
    Variable x{opts.per_world_variable, {}};
    for (std::size_t i = 0; i < m.world_count(); ++i) x.range.push_back(static_cast<Value>(i));
    exo.push_back(std::move(x));
  } else {
    exo = opts.exogenous.value_or(std::vector<Variable>{{"U", {0}}});
  }
  Signature sig(exo, voc.variables());
  const std::size_t ne = sig.exogenous_count();

  // value_at[world][k][pattern of earlier values] via closest worlds.
  std::vector<std::size_t> pos(nv);
  for (std::size_t i = 0; i < nv; ++i) pos[order[i]] = i;

  std::vector<std::vector<int>> tables(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    std::vector<std::size_t> radices;
    for (VarId i = 0; i < sig.size(); ++i)
      if (i != ne + k) radices.push_back(sig.range_size(i));
    for_each_tuple(radices, [&](const std::vector<int>& d) {
      // d covers every variable except X_k, in signature order.
      auto at = [&](VarId i) { return d[i < ne + k ? i : i - 1]; };
      const std::size_t world = opts.per_world ? static_cast<std::size_t>(at(0)) : w;
      std::vector<std::pair<std::size_t, int>> bs;
      for (std::size_t j = 0; j < pos[k]; ++j) bs.emplace_back(order[j], at(ne + order[j]));
      const auto c = closest_where(m, world, bs);
      if (!c) throw Error(Errc::Internal, "full structure has no closest world");
      tables[k].push_back((*m.assignment(*c))[k]);
      return true;
    });
  }
  return CausalModel::from_full_tables(sig, std::move(tables));
}

EquivalenceReport certify_equivalence(const CausalModel& t, const CounterfactualStructure& m,
                                      const std::vector<std::pair<Context, std::size_t>>& pairing,
                                      const std::vector<Formula>& corpus) {
  EquivalenceReport rep;
  StructureEvaluator sev(m);
  for (const auto& [u, w] : pairing) {
    CausalEvaluator cev(t, u);
    for (const auto& f : corpus) {
      const bool a = cev.eval(f);
      const bool b = sev.sat(f)[w];
      ++rep.checked;
      if (a != b) {
        rep.ok = false;
        rep.first = Disagreement{f, u, w, a, b};
        return rep;
      }
    }
  }
  return rep;
}

std::vector<Formula> lprop_corpus(const Signature& sig, int depth, std::size_t cap) {
  std::vector<Formula> base;
  for (const auto& iv : all_interventions(sig)) {
    std::vector<std::pair<std::string, Value>> bs;
    for (const auto& b : iv) bs.emplace_back(sig.var(b.var).name, sig.var(b.var).range[b.index]);
    for (std::size_t k = 0; k < sig.endogenous_count(); ++k) {
      const Variable& x = sig.var(sig.endogenous_id(k));
      for (Value v : x.range) base.push_back(Formula::intervention(bs, Formula::atom(x.name, v)));
    }
  }
  if (depth <= 0) {
    if (base.size() > cap) throw Error(Errc::BoundsTooLarge, "corpus exceeds the cap");
    return base;
  }
  const std::size_t b = base.size();
  const std::size_t total = 2 * b + b * (b - 1);
  if (total > cap)
    throw Error(Errc::BoundsTooLarge, "depth-1 corpus has " + std::to_string(total) + " formulas, cap is " +
                                          std::to_string(cap));
  std::vector<Formula> out = base;
  out.reserve(total);
  for (const auto& f : base) out.push_back(Formula::negation(f));
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = i + 1; j < b; ++j) {
      out.push_back(Formula::conj(base[i], base[j]));
      out.push_back(Formula::disj(base[i], base[j]));
    }
  return out;
}

}  // namespace cfw
