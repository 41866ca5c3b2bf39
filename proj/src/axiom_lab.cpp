#include "cfworld/axiom_lab.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "cfworld/bridge.hpp"
#include "cfworld/causal_eval.hpp"
#include "cfworld/error.hpp"

namespace cfw {

// ------------------------------------------------------------ descriptors

namespace {

const std::vector<std::pair<std::string, std::pair<Side, int>>>& class_names() {
  static const std::vector<std::pair<std::string, std::pair<Side, int>>> names = {
      {"Trec", {Side::Causal, static_cast<int>(CausalClass::Trec)}},
      {"Tun", {Side::Causal, static_cast<int>(CausalClass::Tun)}},
      {"T", {Side::Causal, static_cast<int>(CausalClass::T)}},
      {"M", {Side::Structure, static_cast<int>(StructClass::M)}},
      {"M+", {Side::Structure, static_cast<int>(StructClass::MPlus)}},
      {"Ma", {Side::Structure, static_cast<int>(StructClass::Ma)}},
      {"Ma+", {Side::Structure, static_cast<int>(StructClass::MaPlus)}},
      {"Mf", {Side::Structure, static_cast<int>(StructClass::Mf)}},
      {"Mf+", {Side::Structure, static_cast<int>(StructClass::MfPlus)}},
      {"Mrec", {Side::Structure, static_cast<int>(StructClass::Mrec)}},
  };
  return names;
}

std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

std::size_t sat_add(std::size_t a, std::size_t b) {
  return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max() : a + b;
}

std::size_t sat_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

std::size_t factorial(std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 2; i <= n; ++i) r = sat_mul(r, i);
  return r;
}

}  // namespace

ClassDescriptor ClassDescriptor::named(const std::string& name, Signature sig, Bounds bounds) {
  for (const auto& [n, cls] : class_names()) {
    if (n != name) continue;
    ClassDescriptor cd;
    cd.side = cls.first;
    if (cd.side == Side::Causal) cd.causal = static_cast<CausalClass>(cls.second);
    else cd.structure = static_cast<StructClass>(cls.second);
    cd.sig = std::move(sig);
    cd.bounds = bounds;
    return cd;
  }
  throw Error(Errc::InvalidInput, "unknown class '" + name + "'");
}

std::string ClassDescriptor::name() const {
  for (const auto& [n, cls] : class_names())
    if (cls.first == side &&
        cls.second == (side == Side::Causal ? static_cast<int>(causal) : static_cast<int>(structure)))
      return n;
  return "?";
}

Signature binary_signature(std::size_t n, std::size_t exo_values) {
  std::vector<Variable> endo;
  for (std::size_t i = 1; i <= n; ++i) endo.push_back({"X" + std::to_string(i), {0, 1}});
  std::vector<Variable> exo;
  if (exo_values > 0) {
    Variable u{"U", {}};
    for (std::size_t i = 0; i < exo_values; ++i) u.range.push_back(static_cast<Value>(i));
    exo.push_back(std::move(u));
  }
  return Signature(std::move(exo), std::move(endo));
}

// ------------------------------------------------------------------ schemas

namespace {

Formula meta_template(const char* text) { return parse_formula(text, {.allow_meta = true}); }

const std::map<std::string, Formula>& a_templates() {
  static const std::map<std::string, Formula> t = {
      {"A1", meta_template("phi ~> phi")},
      {"A2", meta_template("(phi ~> psi1) & (phi ~> psi2) -> (phi ~> psi1 & psi2)")},
      {"A3", meta_template("(phi1 ~> phi2) & (phi1 ~> psi) -> (phi1 & phi2 ~> psi)")},
      {"A4", meta_template("(phi1 ~> psi) & (phi2 ~> psi) -> (phi1 | phi2 ~> psi)")},
      {"A5", meta_template("!(true ~> false)")},
      {"A6", meta_template("phi -> (psi <-> (phi ~> psi))")},
      {"A7", meta_template("(phi ~> psi1 | psi2) -> (phi ~> psi1) | (phi ~> psi2)")},
      {"GP", meta_template("(phi1 | phi2 ~> phi1) | (phi1 | phi2 ~> phi2) | ((phi1 | phi2 ~> psi) <-> (phi1 ~> psi) | "
                           "(phi2 ~> psi))")},
  };
  return t;
}

const std::vector<Formula>& tautology_templates() {
  static const std::vector<Formula> t = {
      meta_template("p | !p"),
      meta_template("p -> p"),
      meta_template("!(p & !p)"),
      meta_template("p & q -> p"),
      meta_template("p -> (q -> p)"),
      meta_template("(p -> q) -> (!q -> !p)"),
      meta_template("(p -> q) & (q -> r) -> (p -> r)"),
  };
  return t;
}

std::vector<std::string> metas_of(const Formula& f) {
  std::vector<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.op()) {
      case Op::Meta:
        if (std::find(out.begin(), out.end(), g.name()) == out.end()) out.push_back(g.name());
        break;
      case Op::Atom:
      case Op::True:
      case Op::False: break;
      case Op::Not: walk(g.lhs()); break;
      default:
        walk(g.lhs());
        walk(g.rhs());
    }
  };
  walk(f);
  return out;
}

void substitute_all(const Formula& tmpl, const std::vector<Formula>& pool, std::size_t cap, std::vector<Formula>& out) {
  const auto metas = metas_of(tmpl);
  const std::size_t count = sat_pow(pool.size(), metas.size());
  if (sat_add(out.size(), count) > cap)
    throw Error(Errc::BoundsTooLarge, "schema has " + std::to_string(count) + " instances at these bounds");
  std::vector<std::size_t> radices(metas.size(), pool.size());
  for_each_tuple(radices, [&](const std::vector<int>& d) {
    std::map<std::string, Formula> sub;
    for (std::size_t i = 0; i < metas.size(); ++i) sub.emplace(metas[i], pool[d[i]]);
    out.push_back(substitute(tmpl, sub));
    return true;
  });
}

using Bind = std::pair<std::string, Value>;

std::vector<Bind> named(const Signature& sig, const Intervention& iv) {
  std::vector<Bind> out;
  for (const auto& b : iv) out.emplace_back(sig.var(b.var).name, sig.var(b.var).range[b.index]);
  return out;
}

// Interventions over endogenous variables not in `excluded`, in the order of
// all_interventions.
std::vector<Intervention> interventions_avoiding(const Signature& sig, const std::vector<VarId>& excluded) {
  std::vector<Intervention> out;
  for (auto& iv : all_interventions(sig)) {
    bool ok = true;
    for (const auto& b : iv)
      if (std::find(excluded.begin(), excluded.end(), b.var) != excluded.end()) ok = false;
    if (ok) out.push_back(std::move(iv));
  }
  return out;
}

Formula atom_of(const Signature& sig, VarId v, int idx) { return Formula::atom(sig.var(v).name, sig.var(v).range[idx]); }

std::vector<Formula> lprop_basics(const Signature& sig, std::size_t max_size) {
  std::vector<Formula> out;
  for (const auto& iv : all_interventions(sig)) {
    if (iv.size() > max_size) continue;
    for (std::size_t k = 0; k < sig.endogenous_count(); ++k) {
      const VarId x = sig.endogenous_id(k);
      for (std::size_t i = 0; i < sig.range_size(x); ++i)
        out.push_back(Formula::intervention(named(sig, iv), atom_of(sig, x, static_cast<int>(i))));
    }
  }
  return out;
}

std::vector<Formula> pool_atoms(const Signature& sig, std::size_t k) {
  std::vector<Formula> out;
  std::size_t max_range = 0;
  for (std::size_t e = 0; e < sig.endogenous_count(); ++e)
    max_range = std::max(max_range, sig.range_size(sig.endogenous_id(e)));
  // First value of every variable, then the second values, and so on.
  for (std::size_t i = 0; i < max_range && out.size() < k; ++i)
    for (std::size_t e = 0; e < sig.endogenous_count() && out.size() < k; ++e) {
      const VarId v = sig.endogenous_id(e);
      if (i < sig.range_size(v)) out.push_back(atom_of(sig, v, static_cast<int>(i)));
    }
  return out;
}

std::vector<Formula> c_schema(const std::string& name, const Signature& sig) {
  std::vector<Formula> out;
  const std::size_t n = sig.endogenous_count();
  auto endo = [&](std::size_t k) { return sig.endogenous_id(k); };
  auto box = [&](const Intervention& iv, Formula body) { return Formula::intervention(named(sig, iv), body); };

  if (name == "C1") {
    for (const auto& iv : all_interventions(sig))
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t x = 0; x < sig.range_size(endo(k)); ++x)
          for (std::size_t x2 = 0; x2 < sig.range_size(endo(k)); ++x2)
            if (x != x2)
              out.push_back(Formula::implies(box(iv, atom_of(sig, endo(k), static_cast<int>(x))),
                                             Formula::negation(box(iv, atom_of(sig, endo(k), static_cast<int>(x2))))));
  } else if (name == "C2") {
    for (const auto& iv : all_interventions(sig))
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<Formula> parts;
        for (std::size_t x = 0; x < sig.range_size(endo(k)); ++x)
          parts.push_back(box(iv, atom_of(sig, endo(k), static_cast<int>(x))));
        out.push_back(Formula::disj_all(parts));
      }
  } else if (name == "C3") {
    for (std::size_t wk = 0; wk < n; ++wk)
      for (const auto& iv : interventions_avoiding(sig, {endo(wk)}))
        for (std::size_t w = 0; w < sig.range_size(endo(wk)); ++w)
          for (std::size_t yk = 0; yk < n; ++yk)
            for (std::size_t y = 0; y < sig.range_size(endo(yk)); ++y) {
              Intervention ext = iv;
              ext.push_back({endo(wk), static_cast<int>(w)});
              const Formula ww = atom_of(sig, endo(wk), static_cast<int>(w));
              const Formula yy = atom_of(sig, endo(yk), static_cast<int>(y));
              out.push_back(Formula::implies(Formula::conj(box(iv, ww), box(iv, yy)), box(ext, yy)));
            }
  } else if (name == "C4") {
    for (std::size_t xk = 0; xk < n; ++xk)
      for (std::size_t x = 0; x < sig.range_size(endo(xk)); ++x)
        for (const auto& rest : interventions_avoiding(sig, {endo(xk)})) {
          Intervention iv{{endo(xk), static_cast<int>(x)}};
          iv.insert(iv.end(), rest.begin(), rest.end());
          out.push_back(box(iv, atom_of(sig, endo(xk), static_cast<int>(x))));
        }
  } else if (name == "C5") {
    for (std::size_t wk = 0; wk < n; ++wk)
      for (std::size_t yk = 0; yk < n; ++yk) {
        if (wk == yk) continue;
        for (const auto& iv : interventions_avoiding(sig, {endo(wk), endo(yk)}))
          for (std::size_t w = 0; w < sig.range_size(endo(wk)); ++w)
            for (std::size_t y = 0; y < sig.range_size(endo(yk)); ++y) {
              Intervention with_w = iv, with_y = iv;
              with_w.push_back({endo(wk), static_cast<int>(w)});
              with_y.push_back({endo(yk), static_cast<int>(y)});
              const Formula ww = atom_of(sig, endo(wk), static_cast<int>(w));
              const Formula yy = atom_of(sig, endo(yk), static_cast<int>(y));
              out.push_back(Formula::implies(Formula::conj(box(with_w, yy), box(with_y, ww)), box(iv, yy)));
            }
      }
  } else if (name == "GR") {
    for (std::size_t wk = 0; wk < n; ++wk)
      for (std::size_t yk = 0; yk < n; ++yk) {
        if (wk == yk) continue;
        for (const auto& iv : interventions_avoiding(sig, {endo(wk), endo(yk)})) {
          std::vector<VarId> zs;
          for (std::size_t k = 0; k < n; ++k) {
            const VarId v = endo(k);
            if (k == wk || k == yk) continue;
            if (std::any_of(iv.begin(), iv.end(), [&](const Binding& b) { return b.var == v; })) continue;
            zs.push_back(v);
          }
          std::vector<std::size_t> zr;
          for (VarId z : zs) zr.push_back(sig.range_size(z));
          for (std::size_t w = 0; w < sig.range_size(endo(wk)); ++w)
            for (std::size_t y = 0; y < sig.range_size(endo(yk)); ++y)
              for_each_tuple(zr, [&](const std::vector<int>& zv) {
                std::vector<Formula> zatoms;
                for (std::size_t i = 0; i < zs.size(); ++i) zatoms.push_back(atom_of(sig, zs[i], zv[i]));
                const Formula ww = atom_of(sig, endo(wk), static_cast<int>(w));
                const Formula yy = atom_of(sig, endo(yk), static_cast<int>(y));
                auto with = [&](Formula first) {
                  std::vector<Formula> parts{first};
                  parts.insert(parts.end(), zatoms.begin(), zatoms.end());
                  return Formula::conj_all(parts);
                };
                std::vector<Bind> bw = named(sig, iv), by = named(sig, iv);
                by.emplace_back(sig.var(endo(yk)).name, sig.var(endo(yk)).range[y]);
                bw.emplace_back(sig.var(endo(wk)).name, sig.var(endo(wk)).range[w]);
                std::vector<Formula> all{ww, yy};
                all.insert(all.end(), zatoms.begin(), zatoms.end());
                out.push_back(Formula::implies(
                    Formula::conj(Formula::diamond(by, with(ww)), Formula::diamond(bw, with(yy))),
                    Formula::diamond(named(sig, iv), Formula::conj_all(all))));
                return true;
              });
        }
      }
  } else if (name == "V1") {
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Formula> parts;
      for (std::size_t x = 0; x < sig.range_size(endo(k)); ++x) parts.push_back(atom_of(sig, endo(k), static_cast<int>(x)));
      out.push_back(Formula::disj_all(parts));
    }
  } else if (name == "V2") {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t x = 0; x < sig.range_size(endo(k)); ++x)
        for (std::size_t x2 = 0; x2 < sig.range_size(endo(k)); ++x2)
          if (x != x2)
            out.push_back(Formula::implies(atom_of(sig, endo(k), static_cast<int>(x)),
                                           Formula::negation(atom_of(sig, endo(k), static_cast<int>(x2)))));
  } else if (name == "V3") {
    for (const auto& iv : all_interventions(sig)) out.push_back(Formula::negation(box(iv, Formula::falsity())));
  }
  return out;
}

}  // namespace

const std::vector<SchemaInfo>& schema_library() {
  static const std::vector<SchemaInfo> lib = [] {
    std::vector<SchemaInfo> l = {
        {"C0", "p | !p; p -> p; !(p & !p); p & q -> p; p -> (q -> p); (p -> q) -> (!q -> !p); "
               "(p -> q) & (q -> r) -> (p -> r)  over LPROP letters",
         Side::Causal},
        {"C1", "[Y<-y](X=x) -> ![Y<-y](X=x')  if x != x'", Side::Causal},
        {"C2", "[Y<-y](X=x1) | ... | [Y<-y](X=xn)", Side::Causal},
        {"C3", "[X<-x](W=w) & [X<-x](Y=y) -> [X<-x; W<-w](Y=y)", Side::Causal},
        {"C4", "[X<-x; W<-w](X=x)", Side::Causal},
        {"C5", "[X<-x; W<-w](Y=y) & [X<-x; Y<-y](W=w) -> [X<-x](Y=y)  if Y != W", Side::Causal},
        {"GR", "<X<-x; Y<-y>(W=w & Z=z) & <X<-x; W<-w>(Y=y & Z=z) -> <X<-x>(W=w & Y=y & Z=z)  Z = the rest",
         Side::Causal},
        {"A0", "the C0 templates over LC letters", Side::Structure},
    };
    for (const char* a : {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "GP"})
      l.push_back({a, to_string(a_templates().at(a)), Side::Structure});
    l.push_back({"V1", "X=x1 | ... | X=xn", Side::Structure});
    l.push_back({"V2", "X=x -> !X=x'  if x != x'", Side::Structure});
    l.push_back({"V3", "![X<-x]false", Side::Structure});
    return l;
  }();
  return lib;
}

const SchemaInfo& schema_info(const std::string& name) {
  for (const auto& s : schema_library())
    if (s.name == name) return s;
  throw Error(Errc::UnknownSchema, "unknown schema '" + name + "'");
}

std::optional<Formula> schema_template(const std::string& name) {
  if (auto it = a_templates().find(name); it != a_templates().end()) return it->second;
  return std::nullopt;
}

std::vector<Formula> formula_pool(const Signature& sig, const Bounds& b) {
  const auto atoms = pool_atoms(sig, b.formula_atoms);
  std::vector<Formula> pool = atoms;
  pool.push_back(Formula::truth());
  pool.push_back(Formula::falsity());
  if (b.formula_depth <= 0) return pool;
  for (const auto& a : atoms) pool.push_back(Formula::negation(a));
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      pool.push_back(Formula::conj(atoms[i], atoms[j]));
      pool.push_back(Formula::disj(atoms[i], atoms[j]));
    }
  for (int d = 2; d <= b.formula_depth; ++d) {
    const std::vector<Formula> prev = pool;
    for (const auto& f : prev) pool.push_back(Formula::negation(f));
    for (std::size_t i = 0; i < prev.size(); ++i)
      for (std::size_t j = i + 1; j < prev.size(); ++j) {
        pool.push_back(Formula::conj(prev[i], prev[j]));
        pool.push_back(Formula::disj(prev[i], prev[j]));
      }
    if (pool.size() > b.cap) throw Error(Errc::BoundsTooLarge, "formula pool exceeds the cap");
  }
  return pool;
}

std::vector<Formula> instantiate(const std::string& schema, const Signature& sig, const Bounds& b) {
  schema_info(schema);
  std::vector<Formula> out;
  if (schema == "C0" || schema == "A0") {
    std::vector<Formula> pool;
    if (schema == "C0") {
      pool = lprop_basics(sig, 1);
      if (pool.size() > 6) pool.erase(pool.begin() + 6, pool.end());
    } else {
      pool = formula_pool(sig, b);
      const auto atoms = pool_atoms(sig, std::max<std::size_t>(b.formula_atoms, 1));
      if (!atoms.empty()) {
        const Formula& a = atoms[0];
        const Formula& c = atoms.size() > 1 ? atoms[1] : atoms[0];
        pool.push_back(Formula::cf(a, c));
        pool.push_back(Formula::cf(Formula::disj(a, c), Formula::negation(a)));
      }
    }
    for (const auto& t : tautology_templates()) substitute_all(t, pool, b.cap, out);
    return out;
  }
  if (auto it = a_templates().find(schema); it != a_templates().end()) {
    substitute_all(it->second, formula_pool(sig, b), b.cap, out);
    return out;
  }
  out = c_schema(schema, sig);
  if (out.size() > b.cap) throw Error(Errc::BoundsTooLarge, "schema instances exceed the cap");
  return out;
}

// --------------------------------------------------------------- enumeration

namespace {

// All preorders on k elements as leq matrices.
std::vector<std::vector<std::vector<bool>>> preorders(std::size_t k) {
  if (k > 4) throw Error(Errc::BoundsTooLarge, "preorder enumeration is limited to 5 worlds");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (a != b) pairs.emplace_back(a, b);
  std::vector<std::vector<std::vector<bool>>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
    std::vector<std::vector<bool>> r(k, std::vector<bool>(k, false));
    for (std::size_t a = 0; a < k; ++a) r[a][a] = true;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) r[pairs[i].first][pairs[i].second] = true;
    bool trans = true;
    for (std::size_t a = 0; a < k && trans; ++a)
      for (std::size_t b = 0; b < k && trans; ++b)
        for (std::size_t c = 0; c < k && trans; ++c)
          if (r[a][b] && r[b][c] && !r[a][c]) trans = false;
    if (trans) out.push_back(std::move(r));
  }
  return out;
}

WorldOrder order_on(std::size_t n, std::size_t w, const std::vector<std::size_t>& others,
                    const std::vector<std::vector<bool>>& rel) {
  WorldOrder o;
  o.leq.assign(n, WorldSet{});
  o.leq[w].set(w);
  for (std::size_t a = 0; a < others.size(); ++a) {
    o.leq[w].set(others[a]);
    for (std::size_t b = 0; b < others.size(); ++b)
      if (rel[a][b]) o.leq[others[a]].set(others[b]);
  }
  return o;
}

// Options for the order of world w when W_w ranges over subsets (or is
// everything) and the rest is a preorder or a strict total order.
std::vector<WorldOrder> order_options(std::size_t n, std::size_t w, bool all_within, bool total) {
  std::vector<std::size_t> rest;
  for (std::size_t u = 0; u < n; ++u)
    if (u != w) rest.push_back(u);
  std::vector<WorldOrder> out;
  const std::size_t subsets = all_within ? 1 : (std::size_t{1} << rest.size());
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (all_within || (mask >> i & 1)) others.push_back(rest[i]);
    if (total) {
      std::vector<std::size_t> perm = others;
      do {
        std::vector<std::size_t> ranking{w};
        ranking.insert(ranking.end(), perm.begin(), perm.end());
        out.push_back(order_from_ranking(n, ranking));
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      for (const auto& rel : preorders(others.size())) out.push_back(order_on(n, w, others, rel));
    }
  }
  return out;
}

std::size_t order_option_count(std::size_t n, bool all_within, bool total) {
  static const std::size_t kPreorders[] = {1, 1, 4, 29, 355, 6942, 209527, 9535241};
  const std::size_t k = n - 1;
  auto per = [&](std::size_t m) {
    if (total) return factorial(m);
    return m < 8 ? kPreorders[m] : std::numeric_limits<std::size_t>::max();
  };
  if (all_within) return per(k);
  std::size_t sum = 0, binom = 1;
  for (std::size_t m = 0; m <= k; ++m) {
    sum = sat_add(sum, sat_mul(binom, per(m)));
    binom = binom * (k - m) / (m + 1);
  }
  return sum;
}

std::size_t multiset_count(std::size_t kinds, std::size_t n) {
  // C(kinds + n - 1, n)
  std::size_t r = 1;
  for (std::size_t i = 1; i <= n; ++i) r = sat_mul(r, kinds + i - 1) / i;
  return r;
}

bool is_plus(StructClass c) {
  return c == StructClass::MPlus || c == StructClass::MaPlus || c == StructClass::MfPlus || c == StructClass::Mrec;
}
bool is_full_class(StructClass c) {
  return c == StructClass::Mf || c == StructClass::MfPlus || c == StructClass::Mrec;
}
bool is_acceptable_class(StructClass c) { return c != StructClass::M && c != StructClass::MPlus; }

std::vector<EndoAssignment> all_assignments(const Signature& voc) {
  std::vector<std::size_t> radices;
  for (VarId v = 0; v < voc.size(); ++v) radices.push_back(voc.range_size(v));
  std::vector<EndoAssignment> out;
  for_each_tuple(radices, [&](const std::vector<int>& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

std::string assignment_id(const Signature& voc, const EndoAssignment& a) {
  bool digits = true;
  for (VarId v = 0; v < voc.size(); ++v) {
    const Value x = voc.var(v).range[a[v]];
    if (x < 0 || x > 9) digits = false;
  }
  std::string s;
  for (VarId v = 0; v < voc.size(); ++v) {
    if (!digits && v) s += ",";
    s += std::to_string(voc.var(v).range[a[v]]);
  }
  return s;
}

std::size_t atom_total(const Signature& voc) {
  std::size_t n = 0;
  for (VarId v = 0; v < voc.size(); ++v) n += voc.range_size(v);
  return n;
}

std::vector<std::vector<bool>> valuations(const Signature& voc, StructClass c,
                                          const std::vector<std::pair<std::string, Value>>& atoms) {
  std::vector<std::vector<bool>> out;
  const std::size_t na = atom_total(voc);
  if (is_acceptable_class(c)) {
    for (const auto& a : all_assignments(voc)) {
      std::vector<bool> t(na, false);
      std::size_t off = 0;
      for (VarId v = 0; v < voc.size(); ++v) {
        t[off + a[v]] = true;
        off += voc.range_size(v);
      }
      out.push_back(std::move(t));
    }
    return out;
  }
  std::vector<std::size_t> idx;
  for (const auto& [name, value] : atoms) {
    const VarId v = voc.require(name);
    std::size_t off = 0;
    for (VarId u = 0; u < v; ++u) off += voc.range_size(u);
    idx.push_back(off + voc.require_value(v, value));
  }
  if (idx.size() > 16) throw Error(Errc::BoundsTooLarge, "too many atoms for generic valuations");
  for (std::size_t mask = 0; mask < (std::size_t{1} << idx.size()); ++mask) {
    std::vector<bool> t(na, false);
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (mask >> i & 1) t[idx[i]] = true;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::string> world_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("w" + std::to_string(i));
  return ids;
}

// Every model over sig with the given per-variable input restriction
// (inputs[k] lists the variables F_k may read; nullopt = all).
template <class Fn>
bool for_each_restricted(const Signature& sig, const std::vector<std::vector<VarId>>& inputs, Fn&& fn) {
  const std::size_t n = sig.endogenous_count();
  std::vector<std::size_t> options(n), rows(n);
  for (std::size_t k = 0; k < n; ++k) {
    rows[k] = 1;
    for (VarId v : inputs[k]) rows[k] = sat_mul(rows[k], sig.range_size(v));
    options[k] = sat_pow(sig.range_size(sig.endogenous_id(k)), rows[k]);
  }
  // Expansion from restricted rows to full rows.
  std::vector<std::vector<std::size_t>> row_of(n);
  for (std::size_t k = 0; k < n; ++k) {
    const VarId x = sig.endogenous_id(k);
    std::vector<std::size_t> radices;
    std::vector<VarId> others;
    for (VarId v = 0; v < sig.size(); ++v)
      if (v != x) {
        radices.push_back(sig.range_size(v));
        others.push_back(v);
      }
    for_each_tuple(radices, [&](const std::vector<int>& d) {
      std::size_t r = 0;
      for (VarId in : inputs[k]) {
        const auto pos = static_cast<std::size_t>(std::find(others.begin(), others.end(), in) - others.begin());
        r = r * sig.range_size(in) + static_cast<std::size_t>(d[pos]);
      }
      row_of[k].push_back(r);
      return true;
    });
  }
  bool go = true;
  for_each_tuple(options, [&](const std::vector<int>& choice) {
    std::vector<std::vector<int>> tables(n);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t radix = sig.range_size(sig.endogenous_id(k));
      std::vector<int> restricted(rows[k]);
      std::size_t c = static_cast<std::size_t>(choice[k]);
      for (std::size_t r = rows[k]; r-- > 0;) {
        restricted[r] = static_cast<int>(c % radix);
        c /= radix;
      }
      for (std::size_t r : row_of[k]) tables[k].push_back(restricted[r]);
    }
    go = fn(CausalModel::from_full_tables(sig, std::move(tables)));
    return go;
  });
  return go;
}

std::size_t trec_count(const Signature& sig) {
  const std::size_t n = sig.endogenous_count();
  std::size_t exo_rows = 1;
  for (VarId v = 0; v < sig.exogenous_count(); ++v) exo_rows = sat_mul(exo_rows, sig.range_size(v));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t total = 0;
  do {
    std::size_t rows = exo_rows, per = 1;
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t r = sig.range_size(sig.endogenous_id(perm[p]));
      per = sat_mul(per, sat_pow(r, rows));
      rows = sat_mul(rows, r);
    }
    total = sat_add(total, per);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::size_t t_count(const Signature& sig) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < sig.endogenous_count(); ++k) {
    const VarId x = sig.endogenous_id(k);
    std::size_t rows = 1;
    for (VarId v = 0; v < sig.size(); ++v)
      if (v != x) rows = sat_mul(rows, sig.range_size(v));
    total = sat_mul(total, sat_pow(sig.range_size(x), rows));
  }
  return total;
}

Signature single_context(const Signature& sig) {
  std::vector<Variable> endo;
  for (std::size_t k = 0; k < sig.endogenous_count(); ++k) endo.push_back(sig.var(sig.endogenous_id(k)));
  return Signature({{"U", {0}}}, endo);
}

}  // namespace

std::size_t exhaustive_count(const ClassDescriptor& cd, std::size_t atom_count) {
  if (cd.side == Side::Causal) return cd.causal == CausalClass::Trec ? trec_count(cd.sig) : t_count(cd.sig);
  const Signature voc = cd.sig.endogenous_only();
  const bool plus = is_plus(cd.structure);
  if (is_full_class(cd.structure)) {
    std::size_t n = 1;
    for (VarId v = 0; v < voc.size(); ++v) n = sat_mul(n, voc.range_size(v));
    return sat_pow(order_option_count(n, true, plus), n);
  }
  std::size_t kinds = 1;
  if (is_acceptable_class(cd.structure)) {
    for (VarId v = 0; v < voc.size(); ++v) kinds = sat_mul(kinds, voc.range_size(v));
  } else {
    kinds = sat_pow(2, atom_count);
  }
  std::size_t total = 0;
  for (std::size_t n = 1; n <= cd.bounds.max_worlds; ++n)
    total = sat_add(total, sat_mul(multiset_count(kinds, n), sat_pow(order_option_count(n, false, plus), n)));
  return total;
}

std::size_t for_each_model(const ClassDescriptor& cd, EnumMode mode, const std::function<bool(const CausalModel&)>& fn) {
  if (cd.side != Side::Causal) throw Error(Errc::InvalidInput, "not a causal-model class");
  const Signature& sig = cd.sig;
  const std::size_t est = exhaustive_count(cd, 0);
  if (est > cd.bounds.cap)
    throw Error(Errc::BoundsTooLarge, cd.name() + " has " + (est == std::numeric_limits<std::size_t>::max()
                                                                  ? std::string("too many")
                                                                  : std::to_string(est)) +
                                          " candidates, cap is " + std::to_string(cd.bounds.cap));
  (void)mode;
  std::size_t visited = 0;
  const std::size_t n = sig.endogenous_count();
  if (cd.causal == CausalClass::Trec) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::vector<VarId>> inputs(n);
      std::vector<VarId> order;
      for (std::size_t p = 0; p < n; ++p) {
        const std::size_t k = perm[p];
        for (VarId u = 0; u < sig.exogenous_count(); ++u) inputs[k].push_back(u);
        for (std::size_t q = 0; q < p; ++q) inputs[k].push_back(sig.endogenous_id(perm[q]));
        std::sort(inputs[k].begin(), inputs[k].end());
        order.push_back(sig.endogenous_id(k));
      }
      // Keep a model only under its canonical order, so each appears once.
      const bool go = for_each_restricted(sig, inputs, [&](const CausalModel& t) {
        if (is_recursive(t).order != order) return true;
        ++visited;
        return fn(t);
      });
      if (!go) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return visited;
  }
  std::vector<std::vector<VarId>> inputs(n);
  for (std::size_t k = 0; k < n; ++k)
    for (VarId v = 0; v < sig.size(); ++v)
      if (v != sig.endogenous_id(k)) inputs[k].push_back(v);
  for_each_restricted(sig, inputs, [&](const CausalModel& t) {
    if (cd.causal == CausalClass::Tun && !in_tun(t).unique) return true;
    ++visited;
    return fn(t);
  });
  return visited;
}

std::size_t for_each_structure(const ClassDescriptor& cd, EnumMode mode,
                               const std::vector<std::pair<std::string, Value>>& atoms,
                               const std::function<bool(const CounterfactualStructure&)>& fn) {
  if (cd.side != Side::Structure) throw Error(Errc::InvalidInput, "not a structure class");
  const Signature voc = cd.sig.endogenous_only();
  const StructClass c = cd.structure;
  const bool plus = is_plus(c);
  std::size_t visited = 0;
  auto emit = [&](const CounterfactualStructure& m) {
    if (c == StructClass::Mrec && !classify_structure(m).recursive) return true;
    ++visited;
    return fn(m);
  };

  if (is_full_class(c)) {
    const auto assigns = all_assignments(voc);
    const std::size_t n = assigns.size();
    if (n > kMaxWorlds) throw Error(Errc::TooManyWorlds, "vocabulary has more than 256 assignments");
    std::vector<std::string> ids;
    for (const auto& a : assigns) ids.push_back(assignment_id(voc, a));

    if (mode == EnumMode::Targeted) {
      if (c == StructClass::Mrec) {
        ClassDescriptor trec = cd;
        trec.side = Side::Causal;
        trec.causal = CausalClass::Trec;
        trec.sig = single_context(cd.sig);
        for_each_model(trec, EnumMode::Exhaustive, [&](const CausalModel& t) {
          return emit(causal_to_structure(t).structure);
        });
        return visited;
      }
      // Self first then lexicographic, except one world whose first two
      // successors vary.
      auto lex = [&](const std::vector<std::size_t>& head) {
        std::vector<std::size_t> r = head;
        for (std::size_t u = 0; u < n; ++u)
          if (std::find(head.begin(), head.end(), u) == head.end()) r.push_back(u);
        return order_from_ranking(n, r);
      };
      std::vector<WorldOrder> base;
      for (std::size_t w = 0; w < n; ++w) base.push_back(lex({w}));
      const auto first = CounterfactualStructure::acceptable(voc, ids, assigns, base);
      if (!emit(first)) return visited;
      for (std::size_t d = 0; d < n; ++d)
        for (std::size_t s1 = 0; s1 < n; ++s1) {
          if (s1 == d) continue;
          for (std::size_t s2 = 0; s2 < n; ++s2) {
            if (s2 == d || s2 == s1) continue;
            auto orders = base;
            orders[d] = lex({d, s1, s2});
            if (!emit(first.with_orders(std::move(orders), false))) return visited;
          }
        }
      return visited;
    }

    const std::size_t est = exhaustive_count(cd, 0);
    if (est > cd.bounds.cap)
      throw Error(Errc::BoundsTooLarge, cd.name() + " over " + std::to_string(n) + " worlds exceeds the cap of " +
                                            std::to_string(cd.bounds.cap) + " candidates");
    std::vector<std::vector<WorldOrder>> opts;
    for (std::size_t w = 0; w < n; ++w) opts.push_back(order_options(n, w, true, plus));
    std::vector<std::size_t> radices;
    for (const auto& o : opts) radices.push_back(o.size());
    std::vector<WorldOrder> init;
    for (std::size_t w = 0; w < n; ++w) init.push_back(opts[w][0]);
    const auto proto = CounterfactualStructure::acceptable(voc, ids, assigns, init);
    for_each_tuple(radices, [&](const std::vector<int>& d) {
      std::vector<WorldOrder> orders;
      for (std::size_t w = 0; w < n; ++w) orders.push_back(opts[w][d[w]]);
      return emit(proto.with_orders(std::move(orders), false));
    });
    return visited;
  }

  const std::size_t est = exhaustive_count(cd, atoms.size());
  if (est > cd.bounds.cap)
    throw Error(Errc::BoundsTooLarge, cd.name() + " up to " + std::to_string(cd.bounds.max_worlds) +
                                          " worlds exceeds the cap of " + std::to_string(cd.bounds.cap) + " candidates");
  const auto vals = valuations(voc, c, atoms);
  for (std::size_t n = 1; n <= cd.bounds.max_worlds; ++n) {
    if (n > kMaxWorlds) break;
    std::vector<std::vector<WorldOrder>> opts;
    for (std::size_t w = 0; w < n; ++w) opts.push_back(order_options(n, w, false, plus));
    std::vector<std::size_t> radices;
    for (const auto& o : opts) radices.push_back(o.size());
    const auto ids = world_ids(n);
    // Valuations as nondecreasing sequences: every structure is isomorphic
    // to one of these.
    std::vector<std::size_t> pick(n, 0);
    bool go = true;
    while (go) {
      std::vector<std::vector<bool>> truth;
      for (std::size_t i : pick) truth.push_back(vals[i]);
      std::vector<WorldOrder> init;
      for (std::size_t w = 0; w < n; ++w) init.push_back(opts[w][0]);
      const auto proto = CounterfactualStructure::generic(voc, ids, truth, init);
      for_each_tuple(radices, [&](const std::vector<int>& d) {
        std::vector<WorldOrder> orders;
        for (std::size_t w = 0; w < n; ++w) orders.push_back(opts[w][d[w]]);
        go = emit(proto.with_orders(std::move(orders), false));
        return go;
      });
      if (!go) return visited;
      std::size_t i = n;
      while (i > 0 && pick[i - 1] + 1 == vals.size()) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < n; ++j) pick[j] = pick[i - 1];
    }
  }
  return visited;
}

// ------------------------------------------------------------------ sampling

Sampler::Sampler(ClassDescriptor cd, std::uint64_t seed, std::vector<std::pair<std::string, Value>> atoms)
    : cd_(std::move(cd)), rng_(seed), atoms_(std::move(atoms)) {}

namespace {

int uniform(std::mt19937_64& rng, std::size_t n) {
  return static_cast<int>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
}

CausalModel random_recursive(const Signature& sig, std::mt19937_64& rng) {
  const std::size_t n = sig.endogenous_count();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::size_t> pos(n);
  for (std::size_t p = 0; p < n; ++p) pos[perm[p]] = p;
  std::vector<std::vector<int>> tables(n);
  // Random function of exogenous variables and earlier endogenous ones.
  for (std::size_t k = 0; k < n; ++k) {
    const VarId x = sig.endogenous_id(k);
    std::vector<std::size_t> radices;
    std::vector<VarId> others;
    for (VarId v = 0; v < sig.size(); ++v)
      if (v != x) {
        radices.push_back(sig.range_size(v));
        others.push_back(v);
      }
    std::map<std::vector<int>, int> f;
    for_each_tuple(radices, [&](const std::vector<int>& d) {
      std::vector<int> key;
      for (std::size_t i = 0; i < others.size(); ++i) {
        const VarId v = others[i];
        if (sig.is_exogenous(v) || pos[sig.endogenous_index(v)] < pos[k]) key.push_back(d[i]);
      }
      auto it = f.find(key);
      if (it == f.end()) it = f.emplace(key, uniform(rng, sig.range_size(x))).first;
      tables[k].push_back(it->second);
      return true;
    });
  }
  return CausalModel::from_full_tables(sig, std::move(tables));
}

CausalModel random_any(const Signature& sig, std::mt19937_64& rng) {
  std::vector<std::vector<int>> tables;
  for (std::size_t k = 0; k < sig.endogenous_count(); ++k) {
    const VarId x = sig.endogenous_id(k);
    std::size_t rows = 1;
    for (VarId v = 0; v < sig.size(); ++v)
      if (v != x) rows *= sig.range_size(v);
    std::vector<int> t(rows);
    for (int& o : t) o = uniform(rng, sig.range_size(x));
    tables.push_back(std::move(t));
  }
  return CausalModel::from_full_tables(sig, std::move(tables));
}

// A preorder on `others` (w strictly first): intersection of one or two
// random rankings with ties.
WorldOrder random_preorder(std::size_t n, std::size_t w, const std::vector<std::size_t>& others,
                           std::mt19937_64& rng) {
  const std::size_t k = others.size();
  std::vector<std::vector<bool>> rel(k, std::vector<bool>(k, true));
  const int rounds = 1 + uniform(rng, 2);
  for (int r = 0; r < rounds; ++r) {
    std::vector<int> level(k);
    for (auto& l : level) l = uniform(rng, std::max<std::size_t>(k, 1));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (level[a] > level[b]) rel[a][b] = false;
  }
  return order_on(n, w, others, rel);
}

WorldOrder random_total(std::size_t n, std::size_t w, std::vector<std::size_t> others, std::mt19937_64& rng) {
  std::shuffle(others.begin(), others.end(), rng);
  std::vector<std::size_t> ranking{w};
  ranking.insert(ranking.end(), others.begin(), others.end());
  return order_from_ranking(n, ranking);
}

// Order at world w induced by a random recursive model whose unique
// solution is w's assignment: worlds ranked by the equations they break.
WorldOrder random_recursive_order(const Signature& voc, const std::vector<EndoAssignment>& assigns, std::size_t w,
                                  std::mt19937_64& rng) {
  const std::size_t nv = voc.size();
  std::vector<std::size_t> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  // f[p][values of perm[0..p-1]] = value of perm[p]
  std::vector<std::map<std::vector<int>, int>> f(nv);
  auto eq = [&](std::size_t p, const EndoAssignment& a) {
    std::vector<int> key;
    for (std::size_t q = 0; q < p; ++q) key.push_back(a[perm[q]]);
    auto it = f[p].find(key);
    if (it == f[p].end()) it = f[p].emplace(key, uniform(rng, voc.range_size(perm[p]))).first;
    return it->second;
  };
  for (std::size_t p = 0; p < nv; ++p) {
    std::vector<int> key;
    for (std::size_t q = 0; q < p; ++q) key.push_back(assigns[w][perm[q]]);
    f[p][key] = assigns[w][perm[p]];
  }
  std::vector<std::pair<std::vector<int>, std::size_t>> keyed;
  for (std::size_t v = 0; v < assigns.size(); ++v) {
    std::vector<int> key;
    for (std::size_t p = 0; p < nv; ++p) key.push_back(assigns[v][perm[p]] != eq(p, assigns[v]) ? 1 : 0);
    key.insert(key.end(), assigns[v].begin(), assigns[v].end());
    keyed.emplace_back(std::move(key), v);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::size_t> ranking;
  for (const auto& kv : keyed) ranking.push_back(kv.second);
  return order_from_ranking(assigns.size(), ranking);
}

}  // namespace

CausalModel Sampler::model() {
  if (cd_.side != Side::Causal) throw Error(Errc::InvalidInput, "not a causal-model class");
  switch (cd_.causal) {
    case CausalClass::Trec: return random_recursive(cd_.sig, rng_);
    case CausalClass::T: return random_any(cd_.sig, rng_);
    case CausalClass::Tun:
      for (int tries = 0; tries < 1000; ++tries) {
        CausalModel t = uniform(rng_, 2) == 0 ? random_recursive(cd_.sig, rng_) : random_any(cd_.sig, rng_);
        if (in_tun(t).unique) return t;
      }
      return random_recursive(cd_.sig, rng_);
  }
  throw Error(Errc::Internal, "unreachable");
}

CounterfactualStructure Sampler::structure() {
  if (cd_.side != Side::Structure) throw Error(Errc::InvalidInput, "not a structure class");
  const Signature voc = cd_.sig.endogenous_only();
  const StructClass c = cd_.structure;
  const bool plus = is_plus(c);
  if (is_full_class(c)) {
    const auto assigns = all_assignments(voc);
    const std::size_t n = assigns.size();
    if (n > kMaxWorlds) throw Error(Errc::TooManyWorlds, "vocabulary has more than 256 assignments");
    std::vector<std::string> ids;
    for (const auto& a : assigns) ids.push_back(assignment_id(voc, a));
    std::vector<WorldOrder> orders;
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<std::size_t> others;
      for (std::size_t u = 0; u < n; ++u)
        if (u != w) others.push_back(u);
      if (c == StructClass::Mrec) orders.push_back(random_recursive_order(voc, assigns, w, rng_));
      else if (plus) orders.push_back(random_total(n, w, others, rng_));
      else orders.push_back(random_preorder(n, w, others, rng_));
    }
    return CounterfactualStructure::acceptable(voc, ids, assigns, orders);
  }
  const std::size_t n = 1 + static_cast<std::size_t>(uniform(rng_, std::min(cd_.bounds.max_worlds, kMaxWorlds)));
  const auto vals = valuations(voc, c, atoms_);
  std::vector<std::vector<bool>> truth;
  for (std::size_t w = 0; w < n; ++w) truth.push_back(vals[uniform(rng_, vals.size())]);
  std::vector<WorldOrder> orders;
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<std::size_t> others;
    for (std::size_t u = 0; u < n; ++u)
      if (u != w && uniform(rng_, 4) != 0) others.push_back(u);
    orders.push_back(plus ? random_total(n, w, others, rng_) : random_preorder(n, w, others, rng_));
  }
  return CounterfactualStructure::generic(voc, world_ids(n), truth, orders);
}

// ------------------------------------------------------------------ checking

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ValidAtBound: return "Valid-at-bound";
    case Verdict::Countermodel: return "Countermodel";
    case Verdict::NotFound: return "NotFound";
  }
  return "?";
}

std::optional<std::pair<Context, Formula>> falsify_in_model(const CausalModel& t, const std::vector<Formula>& fs) {
  for (const auto& u : all_contexts(t.signature())) {
    CausalEvaluator ev(t, u);
    for (const auto& f : fs)
      if (!ev.eval_unchecked(f)) return std::make_pair(u, f);
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, Formula>> falsify_in_structure(const CounterfactualStructure& m,
                                                                    const std::vector<Formula>& fs) {
  StructureEvaluator ev(m);
  const WorldSet all = m.all_worlds();
  for (const auto& f : fs) {
    const WorldSet s = ev.sat(f);
    if (s != all)
      for (std::size_t w = 0; w < m.world_count(); ++w)
        if (!s[w]) return std::make_pair(w, f);
  }
  return std::nullopt;
}

namespace {

void precheck(const std::vector<Formula>& fs, const ClassDescriptor& cd) {
  for (const auto& f : fs) {
    if (cd.side == Side::Causal) {
      const LangClass lc = classify(f);
      if (lc != LangClass::LPROP && lc != LangClass::LEX)
        throw Error(Errc::LanguageTooRich, to_string(f) + " is not in LEX");
      const auto d = well_formed(f, cd.sig);
      if (!d.empty()) throw Error(Errc::IllFormed, to_string(f) + ": " + d.front().message);
    } else {
      const Signature voc = cd.sig.endogenous_only();
      for (const auto& [name, value] : atoms_of(f)) {
        const auto v = voc.find(name);
        if (!v || !voc.value_index(*v, value))
          throw Error(Errc::UnknownAtom, "atom " + name + "=" + std::to_string(value) + " is not in the vocabulary");
      }
      for (const auto& d : well_formed(f, voc))
        if (d.kind == "Metavariable") throw Error(Errc::IllFormed, d.message);
    }
  }
}

std::vector<std::pair<std::string, Value>> union_atoms(const std::vector<Formula>& fs) {
  std::vector<std::pair<std::string, Value>> out;
  for (const auto& f : fs)
    for (auto& a : atoms_of(f))
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
  return out;
}

}  // namespace

CheckResult check_validity(const std::vector<Formula>& formulas, const ClassDescriptor& cd, EnumMode mode) {
  precheck(formulas, cd);
  CheckResult res;
  res.instances = formulas.size();
  if (cd.side == Side::Causal) {
    res.candidates = for_each_model(cd, mode, [&](const CausalModel& t) {
      if (auto bad = falsify_in_model(t, formulas)) {
        res.verdict = Verdict::Countermodel;
        res.countermodel = Countermodel{bad->second, res.candidates, t, bad->first, std::nullopt, 0};
        return false;
      }
      ++res.candidates;
      return true;
    });
    if (res.countermodel) res.candidates = res.countermodel->candidate + 1;
    return res;
  }
  std::size_t index = 0;
  for_each_structure(cd, mode, union_atoms(formulas), [&](const CounterfactualStructure& m) {
    if (auto bad = falsify_in_structure(m, formulas)) {
      res.verdict = Verdict::Countermodel;
      res.countermodel = Countermodel{bad->second, index, std::nullopt, {}, m, bad->first};
      return false;
    }
    ++index;
    return true;
  });
  res.candidates = res.countermodel ? index + 1 : index;
  return res;
}

CheckResult find_countermodel(const std::vector<Formula>& formulas, const ClassDescriptor& cd, std::size_t budget,
                              std::uint64_t seed) {
  precheck(formulas, cd);
  CheckResult res;
  res.verdict = Verdict::NotFound;
  res.instances = formulas.size();
  Sampler sampler(cd, seed, union_atoms(formulas));
  for (std::size_t i = 0; i < budget; ++i) {
    res.candidates = i + 1;
    if (cd.side == Side::Causal) {
      CausalModel t = sampler.model();
      if (auto bad = falsify_in_model(t, formulas)) {
        res.verdict = Verdict::Countermodel;
        res.countermodel = Countermodel{bad->second, i, std::move(t), bad->first, std::nullopt, 0};
        return res;
      }
    } else {
      CounterfactualStructure m = sampler.structure();
      if (auto bad = falsify_in_structure(m, formulas)) {
        res.verdict = Verdict::Countermodel;
        res.countermodel = Countermodel{bad->second, i, std::nullopt, {}, std::move(m), bad->first};
        return res;
      }
    }
  }
  return res;
}

}  // namespace cfw
