#include <random>

#include "cfworld/error.hpp"
#include "cfworld/structure.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "support/random_formula.hpp"

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

const Signature kOne({}, {{"X", {0, 1}}});

WorldOrder relation(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
  WorldOrder o;
  o.leq.assign(n, WorldSet{});
  for (auto [a, b] : pairs) o.leq[a].set(b);
  return o;
}

CounterfactualStructure two_worlds(WorldOrder o0, WorldOrder o1) {
  return CounterfactualStructure::acceptable(kOne, {"a", "b"}, {{0}, {1}}, {std::move(o0), std::move(o1)});
}

std::size_t only(const WorldSet& s) {
  REQUIRE(s.count() == 1);
  for (std::size_t i = 0;; ++i)
    if (s[i]) return i;
}

}  // namespace

TEST_CASE("single world structure") {
  const auto m = CounterfactualStructure::acceptable(kOne, {"w"}, {{1}}, {relation(1, {{0, 0}})});
  CHECK(m.within(0).count() == 1);
  CHECK(eval_cf(m, 0, P("X=1")));
  CHECK(eval_cf(m, 0, P("X=0 ~> false")));
  const auto c = classify_structure(m);
  CHECK(c.acceptable);
  CHECK(c.total);
  CHECK_FALSE(c.full);
  CHECK_FALSE(c.recursive);
}

TEST_CASE("order validation") {
  const auto ok = relation(2, {{0, 0}, {1, 1}, {0, 1}});
  const auto ok1 = relation(2, {{0, 0}, {1, 1}, {1, 0}});
  CHECK_NOTHROW(two_worlds(ok, ok1));
  CHECK(code_of([&] { two_worlds(relation(2, {{0, 1}, {1, 1}}), ok1); }) == Errc::NotReflexive);
  CHECK(code_of([&] { two_worlds(relation(2, {{1, 1}}), ok1); }) == Errc::SelfNotInWw);
  CHECK(code_of([&] { two_worlds(relation(2, {{0, 0}, {1, 1}, {0, 1}, {1, 0}}), ok1); }) == Errc::SelfNotMinimal);
  CHECK(code_of([&] { two_worlds(relation(2, {{0, 0}, {1, 1}, {1, 0}}), ok1); }) == Errc::SelfNotMinimal);
  const std::vector<std::string> ids{"a", "b", "c"};
  const Signature s({}, {{"X", {0, 1, 2}}});
  auto lin = [](std::vector<std::size_t> r) { return order_from_ranking(3, r); };
  CHECK(code_of([&] {
          CounterfactualStructure::acceptable(s, ids, {{0}, {1}, {2}},
                                              {relation(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}}), lin({1, 0, 2}),
                                               lin({2, 0, 1})});
        }) == Errc::NotTransitive);
  CHECK(code_of([&] { order_from_ranking(2, {0, 5}); }) == Errc::UnknownWorld);
}

TEST_CASE("worlds may lie outside W_w") {
  const auto m = two_worlds(relation(2, {{0, 0}}), relation(2, {{1, 1}}));
  CHECK(eval_cf(m, 0, P("X=1 ~> false")));
  CHECK(closest(m, 0, P("X=1")).none());
  CHECK(classify_structure(m).total);
  CHECK_FALSE(classify_structure(m).full);
}

TEST_CASE("Example structure reproduces the reversibility failure") {
  const auto m = load_structure("example-c5.json");
  const std::size_t w = m.require_world("000");
  CHECK(eval_cf(m, w, P("[X1<-1; X2<-1](X3=1) & [X1<-1; X3<-1](X2=1) & [X1<-1](X2=0)")));
  CHECK_FALSE(eval_cf(m, w, P("[X1<-1](X2=1)")));
  CHECK(only(closest(m, w, P("X1=1 & X2=1"))) == m.require_world("111"));
  CHECK(only(closest(m, w, P("X1=1"))) == m.require_world("100"));
  CHECK(only(closest(m, w, P("X2=0"))) == w);
  CHECK(closest(m, w, P("false")).none());
  const auto c = classify_structure(m);
  CHECK(c.acceptable);
  CHECK(c.full);
  CHECK(c.total);
  CHECK_FALSE(c.recursive);
  CHECK_FALSE(c.recursive_global);
  CHECK_FALSE(c.world_orders[w].has_value());
  // Self first, then lexicographic: from 111, setting X2=0 lands on 100 and
  // moves X3, and setting X3=0 moves X2 the same way.
  CHECK_FALSE(c.world_orders[m.require_world("111")].has_value());
  CHECK(c.world_orders[m.require_world("001")].has_value());
}

TEST_CASE("missing assignment breaks fullness") {
  const Signature s({}, {{"X", {0, 1}}, {"Y", {0, 1}}});
  const std::vector<std::string> ids{"a", "b", "c", "d"};
  auto lin = [](std::vector<std::size_t> r) { return order_from_ranking(4, r); };
  // Worlds c and d share (1,1); (1,0) never occurs.
  const auto m = CounterfactualStructure::acceptable(s, ids, {{0, 0}, {0, 1}, {1, 1}, {1, 1}},
                                                     {lin({0, 1, 2, 3}), lin({1, 0, 2, 3}), lin({2, 0, 1, 3}),
                                                      lin({3, 0, 1, 2})});
  CHECK(m.is_acceptable());
  CHECK_FALSE(is_full(m));
}

TEST_CASE("generic valuations") {
  const Signature s({}, {{"X", {0, 1}}});
  // World a makes both atoms true, b neither.
  const auto m = CounterfactualStructure::generic(s, {"a", "b"}, {{true, true}, {false, false}},
                                                  {order_from_ranking(2, {0, 1}), order_from_ranking(2, {1, 0})});
  CHECK_FALSE(m.is_acceptable());
  CHECK(eval_cf(m, 0, P("X=0 & X=1")));
  CHECK(eval_cf(m, 1, P("!X=0 & !X=1")));
  CHECK_FALSE(classify_structure(m).acceptable);
  CHECK(code_of([&] { eval_cf(m, 0, P("Y=0")); }) == Errc::UnknownAtom);
  CHECK(code_of([&] { eval_cf(m, 0, P("X=2")); }) == Errc::UnknownAtom);
}

TEST_CASE("closest-world properties on random structures") {
  testing::FormulaGen gen(5, {"X1", "X2"}, {0, 1});
  std::mt19937_64& rng = gen.rng();
  const Signature s({}, {{"X1", {0, 1}}, {"X2", {0, 1}}});
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<std::string> ids;
    std::vector<EndoAssignment> vals;
    std::vector<WorldOrder> orders;
    for (std::size_t w = 0; w < n; ++w) {
      ids.push_back("w" + std::to_string(w));
      vals.push_back({static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)});
    }
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<std::optional<int>> lv(n);
      lv[w] = 0;
      for (std::size_t u = 0; u < n; ++u)
        if (u != w && rng() % 4 != 0) lv[u] = 1 + static_cast<int>(rng() % 3);
      orders.push_back(order_from_levels(lv));
    }
    const auto m = CounterfactualStructure::acceptable(s, ids, vals, orders);
    StructureEvaluator ev(m);
    for (int k = 0; k < 20; ++k) {
      const Formula f = gen.next(3);
      const WorldSet sat = ev.sat(f);
      for (std::size_t w = 0; w < n; ++w) {
        const WorldSet c = ev.closest(w, sat);
        CHECK((c & ~sat).none());
        if (sat[w]) CHECK(c == WorldSet().set(w));
        CHECK(ev.sat(Formula::cf(f, f))[w]);
        // A6 specialised to a true antecedent.
        const Formula a = Formula::atom("X1", 1);
        CHECK(ev.sat(Formula::cf(Formula::truth(), a))[w] == ev.sat(a)[w]);
      }
    }
  }
}

TEST_CASE("structure json round trip") {
  const auto m = load_structure("example-c5.json");
  const auto again = structure_from_json(structure_to_json(m));
  REQUIRE(again.world_count() == m.world_count());
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    CHECK(again.id(w) == m.id(w));
    CHECK(again.assignment(w) == m.assignment(w));
    CHECK(again.order(w).leq == m.order(w).leq);
  }
}

TEST_CASE("structure json errors") {
  CHECK(code_of([] {
          structure_from_json(R"({"variables": {"X": [0, 1]}, "worlds": {"a": {"X": 0}}, "order": {"a": [["a", "b"]]}})");
        }) == Errc::UnknownWorld);
  CHECK(code_of([] { structure_from_json(R"({"variables": {"X": [0, 1]}, "worlds": {"a": {"X": 0}}})"); }) ==
        Errc::SelfNotInWw);
  CHECK(code_of([] { structure_from_json(R"({"variables": {"X": [0, 1]}, "worlds": {"a": {"X": 3}}})"); }) ==
        Errc::ValueOutOfRange);
  CHECK(code_of([] { structure_from_json("{"); }) == Errc::InvalidInput);
}
