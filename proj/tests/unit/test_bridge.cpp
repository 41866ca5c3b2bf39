#include "cfworld/axiom_lab.hpp"
#include "cfworld/bridge.hpp"
#include "cfworld/causal_eval.hpp"
#include "cfworld/error.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cfw;

namespace {

Formula P(const char* s) { return parse_formula(s); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

std::vector<std::pair<Context, std::size_t>> pairing_of(const WorldNaming& n) {
  std::vector<std::pair<Context, std::size_t>> out;
  for (std::size_t i = 0; i < n.contexts.size(); ++i) out.emplace_back(n.contexts[i], n.context_world[i]);
  return out;
}

// Every model over binary X, Y with one binary exogenous U.
std::vector<CausalModel> small_models() {
  const Signature s({{"U", {0, 1}}}, {{"X", {0, 1}}, {"Y", {0, 1}}});
  std::vector<CausalModel> out;
  for (int m = 0; m < 256; ++m) {
    std::vector<std::vector<int>> tables(2, std::vector<int>(4));
    for (int k = 0; k < 2; ++k)
      for (int r = 0; r < 4; ++r) tables[k][r] = (m >> (4 * k + r)) & 1;
    out.push_back(CausalModel::from_full_tables(s, tables));
  }
  return out;
}

std::vector<std::size_t> ranking_at(const CounterfactualStructure& m, std::size_t w) {
  std::vector<std::size_t> r;
  for (std::size_t u = 0; u < m.world_count(); ++u)
    if (m.within(w)[u]) r.push_back(u);
  std::sort(r.begin(), r.end(), [&](auto a, auto b) { return m.strictly_below(w, a).count() < m.strictly_below(w, b).count(); });
  return r;
}

}  // namespace

TEST_CASE("forest fire translation agrees on the depth-1 corpus") {
  const CausalModel t = load_model("forestfire.json");
  const auto tr = causal_to_structure(t);
  CHECK(tr.structure.world_count() == 2 * 2 * 2 * 4);
  const auto cls = classify_structure(tr.structure);
  CHECK(cls.recursive);
  CHECK(cls.recursive_global);
  const auto corpus = lprop_corpus(t.signature(), 1);
  const auto rep = certify_equivalence(t, tr.structure, pairing_of(tr.naming), corpus);
  CHECK(rep.ok);
  CHECK(rep.checked == corpus.size() * 4);
  for (std::size_t ci = 0; ci < 4; ++ci) {
    const bool causal = eval_causal(t, tr.naming.contexts[ci], P("[L<-1](F=1)"));
    CHECK(causal);
    CHECK(eval_cf(tr.structure, tr.naming.context_world[ci], P("[L<-1](F=1)")) == causal);
  }
}

TEST_CASE("single constant variable") {
  const Signature s({{"U", {0}}}, {{"X", {0, 1}}});
  const auto t = CausalModel::make(s, {{"X", {{}, {{{}, 0}}}}});
  const auto tr = causal_to_structure(t);
  REQUIRE(tr.structure.world_count() == 2);
  const std::size_t wu = tr.naming.context_world[0];
  CHECK(tr.structure.id(wu) == "U=0,X=0");
  CHECK(tr.structure.strictly_below(wu, 1 - wu).test(wu));
}

TEST_CASE("non-recursive input is rejected") {
  CHECK(code_of([] { causal_to_structure(load_model("tstar.json")); }) == Errc::NotRecursive);
}

TEST_CASE("the plain size-then-lexicographic ranking would fail here") {
  // X = 1 and Y = X: the closest Y=0 world must be (1,0), not (0,0).
  const Signature s({{"U", {0}}}, {{"X", {0, 1}}, {"Y", {0, 1}}});
  const auto t = CausalModel::make(s, {{"X", {{}, {{{}, 1}}}}, {"Y", {{"X"}, {{{0}, 0}, {{1}, 1}}}}});
  const auto tr = causal_to_structure(t);
  const std::size_t wu = tr.naming.context_world[0];
  const auto c = closest_where(tr.structure, wu, {{1, 0}});
  REQUIRE(c);
  CHECK(tr.structure.id(*c) == "U=0,X=1,Y=0");
}

TEST_CASE("both translations over every small recursive model") {
  int recursive = 0;
  for (const auto& t : small_models()) {
    if (!is_recursive(t).recursive) continue;
    ++recursive;
    const auto tr = causal_to_structure(t);
    const auto& m = tr.structure;
    const auto corpus = lprop_corpus(t.signature(), 1);
    CHECK(classify_structure(m).recursive_global);
    CHECK(certify_equivalence(t, m, pairing_of(tr.naming), corpus).ok);

    for (std::size_t w = 0; w < m.world_count(); ++w) {
      const auto back = structure_to_causal(m, w, {.exogenous = std::vector<Variable>{{"U", {0, 1}}}});
      CHECK(is_recursive(back).recursive);
      std::vector<std::pair<Context, std::size_t>> pairing{{{0}, w}, {{1}, w}};
      const auto rep = certify_equivalence(back, m, pairing, corpus);
      CHECK_MESSAGE(rep.ok, m.id(w));
    }
    // Per-world mode: world i is context i.
    const auto pw = structure_to_causal(m, 0, {.per_world = true});
    std::vector<std::pair<Context, std::size_t>> pairing;
    for (std::size_t w = 0; w < m.world_count(); ++w) pairing.push_back({{static_cast<int>(w)}, w});
    CHECK(certify_equivalence(pw, m, pairing, corpus).ok);
  }
  CHECK(recursive > 100);
}

TEST_CASE("T_{M,w} agrees with M at w for every recursive full total structure") {
  const Signature sig = binary_signature(2);
  const auto corpus = lprop_corpus(sig, 1);
  const std::vector<Variable> exo{{"U", {0, 1}}};
  std::size_t structures = 0, world_only = 0;
  for_each_structure(ClassDescriptor::named("Mrec", sig), EnumMode::Exhaustive, {},
                     [&](const CounterfactualStructure& m) {
                       ++structures;
                       if (!classify_structure(m).recursive_global) ++world_only;
                       for (std::size_t w = 0; w < m.world_count(); ++w) {
                         const auto t = structure_to_causal(m, w, {.exogenous = exo});
                         REQUIRE(is_recursive(t).recursive);
                         const auto rep = certify_equivalence(t, m, {{{0}, w}, {{1}, w}}, corpus);
                         REQUIRE_MESSAGE(rep.ok, m.id(w));
                       }
                       return true;
                     });
  CHECK(structures > 0);
  // Some structures need a different variable order at different worlds.
  CHECK(world_only > 0);

  Sampler sampler(ClassDescriptor::named("Mrec", binary_signature(3)), 17);
  const auto corpus3 = lprop_corpus(binary_signature(3), 0);
  for (int i = 0; i < 20; ++i) {
    const auto m = sampler.structure();
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      const auto t = structure_to_causal(m, w);
      CHECK(certify_equivalence(t, m, {{{0}, w}}, corpus3).ok);
    }
  }
}

TEST_CASE("model from the Example structure is refused") {
  const auto m = load_structure("example-c5.json");
  CHECK(code_of([&] { structure_to_causal(m, 0); }) == Errc::NotRecursiveStructure);
}

TEST_CASE("one-variable structure gives a constant model") {
  const Signature s({}, {{"X", {0, 1}}});
  const auto m = CounterfactualStructure::acceptable(s, {"a", "b"}, {{0}, {1}},
                                                     {order_from_ranking(2, {0, 1}), order_from_ranking(2, {1, 0})});
  const auto t = structure_to_causal(m, 0);
  CHECK(t.table(0) == std::vector<int>{0});
  CHECK(structure_to_causal(m, 1).table(0) == std::vector<int>{1});
}

TEST_CASE("corrupted order is caught by certification") {
  const CausalModel t = load_model("forestfire.json");
  const auto tr = causal_to_structure(t);
  const auto& m = tr.structure;
  const Signature& sig = t.signature();
  // Under L<-0 at E=3 the fire still burns; promote a world with L=0, F=0.
  const std::size_t ci = 3;
  const std::size_t wu = tr.naming.context_world[ci];
  const std::size_t target = tr.naming.world_for(ci, {{sig.require("L"), 0}});
  auto rank = ranking_at(m, wu);
  std::size_t impostor = m.world_count();
  for (std::size_t v : rank) {
    const auto& a = *m.assignment(v);
    if (a[0] == 0 && a[2] == 0 && v != target) impostor = v;
  }
  REQUIRE(impostor < m.world_count());
  rank.erase(std::find(rank.begin(), rank.end(), impostor));
  rank.insert(std::find(rank.begin(), rank.end(), target), impostor);
  auto orders = m.orders();
  orders[wu] = order_from_ranking(m.world_count(), rank);
  const auto bad = m.with_orders(orders);
  const auto rep = certify_equivalence(t, bad, pairing_of(tr.naming), lprop_corpus(sig, 0));
  REQUIRE_FALSE(rep.ok);
  CHECK(rep.first->context == Context{3});
  CHECK(certify_equivalence(t, bad, pairing_of(tr.naming), {}).ok);
}

TEST_CASE("Lprop validity transfers between Trec and Mrec at the bound") {
  const Signature s({{"U", {0, 1}}}, {{"X", {0, 1}}, {"Y", {0, 1}}});
  const auto corpus = lprop_corpus(s, 1);
  std::vector<bool> valid_causal(corpus.size(), true), valid_structure(corpus.size(), true);
  for (const auto& t : small_models()) {
    if (!is_recursive(t).recursive) continue;
    for (const auto& u : all_contexts(s)) {
      CausalEvaluator ev(t, u);
      for (std::size_t i = 0; i < corpus.size(); ++i)
        if (!ev.eval(corpus[i])) valid_causal[i] = false;
    }
    const auto m = causal_to_structure(t).structure;
    StructureEvaluator sev(m);
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if ((sev.sat(corpus[i]) ^ m.all_worlds()).any()) valid_structure[i] = false;
  }
  CHECK(valid_causal == valid_structure);
  CHECK(std::count(valid_causal.begin(), valid_causal.end(), true) > 0);
}
