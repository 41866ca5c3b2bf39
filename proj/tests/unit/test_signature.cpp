#include <set>

#include "cfworld/causal_model.hpp"
#include "cfworld/error.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cfw;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

Signature binary3() { return Signature({{"U", {0}}}, {{"X1", {0, 1}}, {"X2", {0, 1}}, {"X3", {0, 1}}}); }

EndoAssignment solve_single(const CausalModel& t, const Intervention& iv) {
  auto sols = t.intervene(iv).solutions({0});
  REQUIRE(sols.size() == 1);
  return sols[0];
}

}  // namespace

TEST_CASE("signature rejects bad declarations") {
  CHECK(code_of([] { Signature({{"X", {0}}}, {{"X", {0, 1}}}); }) == Errc::DuplicateVariable);
  CHECK(code_of([] { Signature({}, {{"X", {}}}); }) == Errc::InvalidSignature);
  CHECK(code_of([] { Signature({}, {{"X", {1, 1}}}); }) == Errc::InvalidSignature);
  const Signature s = binary3();
  CHECK(s.exogenous_count() == 1);
  CHECK(s.endogenous_count() == 3);
  CHECK(s.require("X2") == 2);
  CHECK(code_of([&] { s.require("Y"); }) == Errc::UnknownVariable);
}

TEST_CASE("all_interventions counts prod(|R|+1)") {
  const Signature s({}, {{"A", {0, 1}}, {"B", {0, 1, 2}}});
  const auto ivs = all_interventions(s);
  CHECK(ivs.size() == 3 * 4);
  CHECK(ivs.front().empty());
  std::set<Intervention> uniq(ivs.begin(), ivs.end());
  CHECK(uniq.size() == ivs.size());
}

TEST_CASE("make_model validation") {
  const Signature s({}, {{"X", {0, 1}}, {"Y", {0, 1}}});
  std::map<std::string, TableSpec> ok{{"X", {{"Y"}, {{{0}, 1}, {{1}, 0}}}}, {"Y", {{}, {{{}, 1}}}}};
  CHECK_NOTHROW(CausalModel::make(s, ok));
  auto missing_row = ok;
  missing_row["X"].rows.pop_back();
  CHECK(code_of([&] { CausalModel::make(s, missing_row); }) == Errc::NonTotalTable);
  auto bad_out = ok;
  bad_out["Y"].rows[0].second = 2;
  CHECK(code_of([&] { CausalModel::make(s, bad_out); }) == Errc::ValueOutOfRange);
  auto no_table = ok;
  no_table.erase("Y");
  CHECK(code_of([&] { CausalModel::make(s, no_table); }) == Errc::MissingTable);
}

TEST_CASE("forest fire model") {
  const CausalModel t = load_model("forestfire.json");
  const auto info = is_recursive(t);
  CHECK(info.recursive);
  const Signature& s = t.signature();
  CHECK(info.order == std::vector<VarId>{s.require("L"), s.require("ML"), s.require("F")});
  CHECK(class_of(t) == ModelClass::Trec);
  // E=2: match dropped only.
  auto sols = t.solutions({2});
  REQUIRE(sols.size() == 1);
  CHECK(sols[0] == EndoAssignment{0, 1, 1});
}

TEST_CASE("T* solutions under every intervention") {
  const CausalModel t = load_model("tstar.json");
  const Signature& s = t.signature();
  const VarId x1 = s.require("X1"), x2 = s.require("X2"), x3 = s.require("X3");
  CHECK(t.solutions({0}) == std::vector<EndoAssignment>{{0, 0, 0}});
  CHECK(solve_single(t, {{x1, 1}}) == EndoAssignment{1, 1, 0});
  CHECK(solve_single(t, {{x2, 1}}) == EndoAssignment{0, 1, 1});
  CHECK(solve_single(t, {{x3, 1}}) == EndoAssignment{1, 0, 1});
  CHECK(solve_single(t, {{x1, 1}, {x2, 0}}) == EndoAssignment{1, 0, 0});
  for (VarId x : {x1, x2, x3}) CHECK(solve_single(t, {{x, 0}}) == EndoAssignment{0, 0, 0});
  CHECK(code_of([&] { t.solutions({}); }) == Errc::PartialContext);
}

TEST_CASE("T* is in Tun but not recursive") {
  const CausalModel t = load_model("tstar.json");
  CHECK(in_tun(t).unique);
  const auto info = is_recursive(t);
  CHECK_FALSE(info.recursive);
  REQUIRE(info.cycle.size() >= 3);
  CHECK(info.cycle.front() == info.cycle.back());
  const Signature& s = t.signature();
  // Edge a -> b means F_b depends on a.
  for (std::size_t i = 0; i + 1 < info.cycle.size(); ++i)
    CHECK(t.depends_on(s.endogenous_index(info.cycle[i + 1]), info.cycle[i]));
  CHECK(class_of(t) == ModelClass::TunOnly);
}

TEST_CASE("model without solutions is T-only") {
  const Signature s({}, {{"X1", {0, 1}}, {"X2", {0, 1}}});
  const auto t = CausalModel::make(s, {{"X1", {{"X2"}, {{{0}, 1}, {{1}, 0}}}}, {"X2", {{"X1"}, {{{0}, 0}, {{1}, 1}}}}});
  CHECK(t.solutions({}).empty());
  const auto tun = in_tun(t);
  CHECK_FALSE(tun.unique);
  REQUIRE(tun.witness);
  CHECK(tun.witness->intervention.empty());
  CHECK(tun.witness->solution_count == 0);
  CHECK(class_of(t) == ModelClass::TOnly);
}

TEST_CASE("intervene") {
  const CausalModel t = load_model("tstar.json");
  const Signature& s = t.signature();
  const VarId x1 = s.require("X1");
  const CausalModel t1 = t.intervene({{x1, 1}});
  for (int v : t1.table(0)) CHECK(v == 1);
  CHECK(t1.is_pinned(0));
  CHECK(t.intervene({}) == t);
  CHECK(code_of([&] { t.intervene({{s.require("U"), 0}}); }) == Errc::NotEndogenous);
  CHECK(code_of([&] { t.intervene({{x1, 2}}); }) == Errc::ValueOutOfRange);
  CHECK(code_of([&] { t.intervene({{x1, 0}, {x1, 1}}); }) == Errc::DuplicateVariable);
  // Idempotent and order independent.
  const VarId x2 = s.require("X2");
  CHECK(t1.intervene({{x1, 1}}) == t1);
  CHECK(t.intervene({{x1, 1}, {x2, 0}}) == t.intervene({{x2, 0}}).intervene({{x1, 1}}));
}

TEST_CASE("total intervention has exactly that solution") {
  const CausalModel t = load_model("tstar.json");
  const Signature& s = t.signature();
  for_each_tuple({2, 2, 2}, [&](const std::vector<int>& v) {
    Intervention iv;
    for (std::size_t k = 0; k < 3; ++k) iv.push_back({s.endogenous_id(k), v[k]});
    CHECK(t.intervene(iv).solutions({0}) == std::vector<EndoAssignment>{v});
    return true;
  });
}

TEST_CASE("constant model is recursive") {
  const Signature s({}, {{"A", {0, 1}}, {"B", {0, 1}}});
  const auto t = CausalModel::make(s, {{"A", {{}, {{{}, 1}}}}, {"B", {{"A"}, {{{0}, 0}, {{1}, 0}}}}});
  CHECK(is_recursive(t).recursive);
  CHECK_FALSE(t.depends_on(1, 0));
}

TEST_CASE("model json round trip") {
  const CausalModel t = load_model("tstar.json");
  CHECK(model_from_json(model_to_json(t)) == t);
  const CausalModel f = load_model("forestfire.json");
  CHECK(model_from_json(model_to_json(f)) == f);
  const CausalModel p = t.intervene({{1, 1}});
  CHECK(model_from_json(model_to_json(p)) == p);
}

TEST_CASE("class inclusions over every small model") {
  const Signature s({{"U", {0, 1}}}, {{"X", {0, 1}}, {"Y", {0, 1}}});
  int rec = 0, tun = 0;
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      std::vector<std::vector<int>> tables(2, std::vector<int>(4));
      for (int r = 0; r < 4; ++r) {
        tables[0][r] = (a >> r) & 1;
        tables[1][r] = (b >> r) & 1;
      }
      const auto t = CausalModel::from_full_tables(s, tables);
      const bool r = is_recursive(t).recursive;
      const bool u = in_tun(t).unique;
      if (r) {
        CHECK(u);
        ++rec;
        for (const auto& iv : all_interventions(s))
          for (const auto& ctx : all_contexts(s)) CHECK(t.intervene(iv).solutions(ctx).size() == 1);
      }
      if (u) ++tun;
    }
  CHECK(rec <= tun);
  CHECK(rec > 0);
  CHECK(tun < 256);
}
