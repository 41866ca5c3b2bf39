#include "cfworld/structure.hpp"

#include <algorithm>
#include <numeric>

#include "cfworld/error.hpp"

namespace cfw {

WorldOrder order_from_ranking(std::size_t world_count, const std::vector<std::size_t>& ranking) {
  std::vector<std::optional<int>> levels(world_count);
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (ranking[i] >= world_count) throw Error(Errc::UnknownWorld, "ranking names a world out of range");
    levels[ranking[i]] = static_cast<int>(i);
  }
  return order_from_levels(levels);
}

WorldOrder order_from_levels(const std::vector<std::optional<int>>& levels) {
  if (levels.size() > kMaxWorlds) throw Error(Errc::TooManyWorlds, "at most 256 worlds are supported");
  WorldOrder o;
  o.leq.resize(levels.size());
  for (std::size_t u = 0; u < levels.size(); ++u) {
    if (!levels[u]) continue;
    for (std::size_t v = 0; v < levels.size(); ++v)
      if (levels[v] && *levels[u] <= *levels[v]) o.leq[u].set(v);
  }
  return o;
}

namespace {

std::string world_label(const std::vector<std::string>& ids, std::size_t w) { return "'" + ids[w] + "'"; }

void check_orders(const std::vector<std::string>& ids, const std::vector<WorldOrder>& orders) {
  const std::size_t n = ids.size();
  if (orders.size() != n) throw Error(Errc::InvalidInput, "need exactly one order per world");
  for (std::size_t w = 0; w < n; ++w) {
    const auto& leq = orders[w].leq;
    if (leq.size() != n) throw Error(Errc::InvalidInput, "order of world " + world_label(ids, w) + " has wrong size");
    WorldSet field;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = n; v < kMaxWorlds; ++v)
        if (leq[u][v]) throw Error(Errc::UnknownWorld, "order relates a world out of range");
      if (leq[u].any()) {
        field.set(u);
        field |= leq[u];
      }
    }
    for (std::size_t u = 0; u < n; ++u)
      if (field[u] && !leq[u][u])
        throw Error(Errc::NotReflexive, "order of world " + world_label(ids, w) + " lacks " + ids[u] + " <= " + ids[u]);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (leq[u][v] && (leq[v] & ~leq[u]).any())
          throw Error(Errc::NotTransitive, "order of world " + world_label(ids, w) + " is not transitive at " + ids[u] +
                                               " <= " + ids[v]);
    if (!field[w]) throw Error(Errc::SelfNotInWw, "world " + world_label(ids, w) + " is not in its own W_w");
    for (std::size_t u = 0; u < n; ++u)
      if (u != w && field[u] && (!leq[w][u] || leq[u][w]))
        throw Error(Errc::SelfNotMinimal,
                    "world " + world_label(ids, w) + " is not strictly closer to itself than " + ids[u]);
  }
}

}  // namespace

CounterfactualStructure CounterfactualStructure::acceptable(Signature vocab, std::vector<std::string> ids,
                                                            std::vector<EndoAssignment> assignments,
                                                            std::vector<WorldOrder> orders) {
  if (assignments.size() != ids.size()) throw Error(Errc::InvalidInput, "need one assignment per world");
  const std::size_t nv = vocab.size();
  std::vector<std::vector<bool>> truth;
  truth.reserve(ids.size());
  std::size_t atoms = 0;
  for (std::size_t v = 0; v < nv; ++v) atoms += vocab.range_size(v);
  for (const auto& a : assignments) {
    if (a.size() != nv) throw Error(Errc::InvalidInput, "assignment size does not match the vocabulary");
    std::vector<bool> t(atoms, false);
    std::size_t off = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      if (a[v] < 0 || static_cast<std::size_t>(a[v]) >= vocab.range_size(v))
        throw Error(Errc::ValueOutOfRange, "world value out of range for '" + vocab.var(v).name + "'");
      t[off + a[v]] = true;
      off += vocab.range_size(v);
    }
    truth.push_back(std::move(t));
  }
  return generic(std::move(vocab), std::move(ids), std::move(truth), std::move(orders));
}

CounterfactualStructure CounterfactualStructure::generic(Signature vocab, std::vector<std::string> ids,
                                                         std::vector<std::vector<bool>> truth,
                                                         std::vector<WorldOrder> orders) {
  if (vocab.exogenous_count() != 0) vocab = vocab.endogenous_only();
  if (ids.size() > kMaxWorlds) throw Error(Errc::TooManyWorlds, "at most 256 worlds are supported");
  if (ids.empty()) throw Error(Errc::InvalidInput, "a structure needs at least one world");
  if (truth.size() != ids.size()) throw Error(Errc::InvalidInput, "need one valuation per world");
  {
    std::vector<std::string> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(Errc::InvalidInput, "duplicate world id");
  }
  check_orders(ids, orders);

  CounterfactualStructure m;
  m.vocab_ = std::move(vocab);
  m.ids_ = std::move(ids);
  std::size_t atoms = 0;
  for (std::size_t v = 0; v < m.vocab_.size(); ++v) {
    m.atom_offset_.push_back(atoms);
    atoms += m.vocab_.range_size(v);
  }
  m.atom_worlds_.assign(atoms, WorldSet{});
  for (std::size_t w = 0; w < m.ids_.size(); ++w) {
    if (truth[w].size() != atoms) throw Error(Errc::InvalidInput, "valuation size does not match the atom count");
    for (std::size_t a = 0; a < atoms; ++a)
      if (truth[w][a]) m.atom_worlds_[a].set(w);
  }
  m.orders_ = std::move(orders);
  m.finish();
  return m;
}

void CounterfactualStructure::finish() {
  const std::size_t n = ids_.size();
  const std::size_t nv = vocab_.size();
  assignments_.assign(n, std::nullopt);
  acceptable_ = true;
  for (std::size_t w = 0; w < n; ++w) {
    EndoAssignment a(nv, -1);
    bool ok = true;
    for (std::size_t v = 0; v < nv && ok; ++v) {
      for (std::size_t i = 0; i < vocab_.range_size(v); ++i) {
        if (!atom_worlds_[atom_offset_[v] + i][w]) continue;
        if (a[v] >= 0) ok = false;
        a[v] = static_cast<int>(i);
      }
      if (a[v] < 0) ok = false;
    }
    if (ok) assignments_[w] = std::move(a);
    else acceptable_ = false;
  }
  finish_orders();
}

void CounterfactualStructure::finish_orders() {
  const std::size_t n = ids_.size();
  within_.assign(n, WorldSet{});
  below_.assign(n, std::vector<WorldSet>(n));
  for (std::size_t w = 0; w < n; ++w) {
    const auto& leq = orders_[w].leq;
    for (std::size_t u = 0; u < n; ++u)
      if (leq[u][u]) within_[w].set(u);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t u = 0; u < n; ++u)
        if (leq[u][v] && !leq[v][u]) below_[w][v].set(u);
  }
}

std::optional<std::size_t> CounterfactualStructure::find_world(const std::string& id) const {
  for (std::size_t w = 0; w < ids_.size(); ++w)
    if (ids_[w] == id) return w;
  return std::nullopt;
}

std::size_t CounterfactualStructure::require_world(const std::string& id) const {
  if (auto w = find_world(id)) return *w;
  throw Error(Errc::UnknownWorld, "unknown world '" + id + "'");
}

std::optional<std::size_t> CounterfactualStructure::atom_index(const std::string& var, Value value) const {
  auto id = vocab_.find(var);
  if (!id) return std::nullopt;
  auto idx = vocab_.value_index(*id, value);
  if (!idx) return std::nullopt;
  return atom_offset_[*id] + static_cast<std::size_t>(*idx);
}

WorldSet CounterfactualStructure::all_worlds() const {
  WorldSet s;
  for (std::size_t w = 0; w < ids_.size(); ++w) s.set(w);
  return s;
}

CounterfactualStructure CounterfactualStructure::with_orders(std::vector<WorldOrder> orders, bool validate) const {
  if (validate) check_orders(ids_, orders);
  CounterfactualStructure m = *this;
  m.orders_ = std::move(orders);
  m.finish_orders();
  return m;
}

bool is_total(const CounterfactualStructure& m) {
  const std::size_t n = m.world_count();
  for (std::size_t w = 0; w < n; ++w) {
    const WorldSet& in = m.within(w);
    for (std::size_t u = 0; u < n; ++u) {
      if (!in[u]) continue;
      for (std::size_t v = u + 1; v < n; ++v) {
        if (!in[v]) continue;
        if (m.leq(w, u, v) == m.leq(w, v, u)) return false;
      }
    }
  }
  return true;
}

bool is_full(const CounterfactualStructure& m) {
  if (!m.is_acceptable()) return false;
  const Signature& voc = m.vocabulary();
  std::vector<std::size_t> radices;
  for (std::size_t v = 0; v < voc.size(); ++v) radices.push_back(voc.range_size(v));
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    bool all = true;
    for_each_tuple(radices, [&](const std::vector<int>& a) {
      for (std::size_t u = 0; u < m.world_count(); ++u)
        if (m.within(w)[u] && *m.assignment(u) == a) return true;
      all = false;
      return false;
    });
    if (!all) return false;
  }
  return true;
}

namespace {

// Worlds of W_w from closest to furthest; only meaningful for total orders.
std::vector<std::size_t> ranking_of(const CounterfactualStructure& m, std::size_t w) {
  std::vector<std::size_t> r;
  for (std::size_t u = 0; u < m.world_count(); ++u)
    if (m.within(w)[u]) r.push_back(u);
  std::sort(r.begin(), r.end(),
            [&](std::size_t a, std::size_t b) { return m.strictly_below(w, a).count() < m.strictly_below(w, b).count(); });
  return r;
}

// must[a][b]: variable a has to precede b at this world.
std::vector<std::vector<bool>> precedence_constraints(const CounterfactualStructure& m, std::size_t w) {
  const Signature& voc = m.vocabulary();
  const std::size_t nv = voc.size();
  const auto rank = ranking_of(m, w);

  // Partial assignments as mixed-radix patterns; digit 0 means "unset".
  std::vector<std::size_t> radices(nv), stride(nv);
  std::size_t total = 1;
  for (std::size_t v = nv; v-- > 0;) {
    radices[v] = voc.range_size(v) + 1;
    stride[v] = total;
    total *= radices[v];
  }
  std::vector<std::size_t> closest(total);
  for_each_tuple(radices, [&](const std::vector<int>& p) {
    std::size_t code = 0;
    for (std::size_t v = 0; v < nv; ++v) code += stride[v] * static_cast<std::size_t>(p[v]);
    for (std::size_t u : rank) {
      const auto& a = *m.assignment(u);
      bool match = true;
      for (std::size_t v = 0; v < nv && match; ++v) match = p[v] == 0 || a[v] + 1 == p[v];
      if (match) {
        closest[code] = u;
        return true;
      }
    }
    throw Error(Errc::Internal, "full structure lacks a world for a partial assignment");
  });

  std::vector<std::vector<bool>> must(nv, std::vector<bool>(nv, false));
  for (std::size_t wv = 0; wv < nv; ++wv) {
    for (std::size_t y = 0; y < nv; ++y) {
      if (y == wv) continue;
      bool ok = true;
      for_each_tuple(radices, [&](const std::vector<int>& p) {
        if (p[wv] != 0 || p[y] != 0) return true;
        std::size_t code = 0;
        for (std::size_t v = 0; v < nv; ++v) code += stride[v] * static_cast<std::size_t>(p[v]);
        const int base = (*m.assignment(closest[code]))[wv];
        for (std::size_t yi = 1; yi < radices[y]; ++yi)
          if ((*m.assignment(closest[code + stride[y] * yi]))[wv] != base) {
            ok = false;
            return false;
          }
        return true;
      });
      // Setting y can move wv, so wv may not precede y.
      if (!ok) must[y][wv] = true;
    }
  }
  return must;
}

std::optional<std::vector<VarId>> topological(const std::vector<std::vector<bool>>& must) {
  const std::size_t n = must.size();
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (must[a][b]) ++indeg[b];
  std::vector<VarId> order;
  std::vector<bool> done(n, false);
  while (order.size() < n) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && indeg[v] == 0) {
        pick = v;
        break;
      }
    if (pick == n) return std::nullopt;
    done[pick] = true;
    order.push_back(pick);
    for (std::size_t b = 0; b < n; ++b)
      if (must[pick][b]) --indeg[b];
  }
  return order;
}

}  // namespace

StructureClass classify_structure(const CounterfactualStructure& m) {
  StructureClass c;
  c.acceptable = m.is_acceptable();
  c.full = is_full(m);
  c.total = is_total(m);
  c.world_orders.assign(m.world_count(), std::nullopt);
  if (!(c.acceptable && c.full && c.total)) return c;
  const std::size_t nv = m.vocabulary().size();
  std::vector<std::vector<bool>> global(nv, std::vector<bool>(nv, false));
  c.recursive = true;
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    auto must = precedence_constraints(m, w);
    c.world_orders[w] = topological(must);
    if (!c.world_orders[w]) c.recursive = false;
    for (std::size_t a = 0; a < nv; ++a)
      for (std::size_t b = 0; b < nv; ++b)
        if (must[a][b]) global[a][b] = true;
  }
  c.global_order = topological(global);
  c.recursive_global = c.global_order.has_value();
  return c;
}

WorldSet StructureEvaluator::closest(std::size_t w, const WorldSet& s) const {
  WorldSet cand = m_.within(w) & s;
  WorldSet out;
  for (std::size_t v = 0; v < m_.world_count(); ++v)
    if (cand[v] && (m_.strictly_below(w, v) & s).none()) out.set(v);
  return out;
}

WorldSet StructureEvaluator::sat(const Formula& f) {
  auto it = cache_.find(f.node());
  if (it != cache_.end()) return it->second.second;
  WorldSet r;
  switch (f.op()) {
    case Op::Atom: {
      auto a = m_.atom_index(f.name(), f.value());
      if (!a) throw Error(Errc::UnknownAtom, "atom " + f.name() + "=" + std::to_string(f.value()) + " is not in the vocabulary");
      r = m_.atom_worlds(*a);
      break;
    }
    case Op::True: r = m_.all_worlds(); break;
    case Op::False: break;
    case Op::Not: r = m_.all_worlds() & ~sat(f.lhs()); break;
    case Op::And: r = sat(f.lhs()) & sat(f.rhs()); break;
    case Op::Or: r = sat(f.lhs()) | sat(f.rhs()); break;
    case Op::Implies: r = (m_.all_worlds() & ~sat(f.lhs())) | sat(f.rhs()); break;
    case Op::Iff: r = m_.all_worlds() & ~(sat(f.lhs()) ^ sat(f.rhs())); break;
    case Op::Cf: {
      const WorldSet ant = sat(f.lhs());
      const WorldSet con = sat(f.rhs());
      for (std::size_t w = 0; w < m_.world_count(); ++w)
        if ((closest(w, ant) & ~con).none()) r.set(w);
      break;
    }
    case Op::Meta: throw Error(Errc::IllFormed, "cannot evaluate metavariable " + f.name());
  }
  cache_.emplace(f.node(), std::make_pair(f, r));
  return r;
}

WorldSet closest(const CounterfactualStructure& m, std::size_t w, const Formula& f) {
  StructureEvaluator ev(m);
  return ev.closest(w, ev.sat(f));
}

bool eval_cf(const CounterfactualStructure& m, std::size_t w, const Formula& f) {
  StructureEvaluator ev(m);
  return ev.sat(f)[w];
}

std::optional<std::size_t> closest_where(const CounterfactualStructure& m, std::size_t w,
                                         const std::vector<std::pair<std::size_t, int>>& endo_bindings) {
  WorldSet s = m.all_worlds();
  const Signature& voc = m.vocabulary();
  for (const auto& [v, i] : endo_bindings) {
    if (v >= voc.size() || i < 0 || static_cast<std::size_t>(i) >= voc.range_size(v))
      throw Error(Errc::ValueOutOfRange, "binding out of range");
    s &= m.atom_worlds(*m.atom_index(voc.var(v).name, voc.var(v).range[i]));
  }
  StructureEvaluator ev(m);
  const WorldSet c = ev.closest(w, s);
  if (c.count() != 1) return std::nullopt;
  for (std::size_t u = 0; u < m.world_count(); ++u)
    if (c[u]) return u;
  return std::nullopt;
}

}  // namespace cfw
