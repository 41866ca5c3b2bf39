#include "doctest.h"

#include <set>

#include "cfworld/axiom_lab.hpp"
#include "cfworld/causal_eval.hpp"
#include "cfworld/error.hpp"
#include "fixtures.hpp"

using namespace cfw;

namespace {

bool contains(const std::vector<Formula>& fs, const std::string& text) {
  const Formula g = parse_formula(text);
  for (const auto& f : fs)
    if (same_formula(f, g)) return true;
  return false;
}

CheckResult check(const std::string& schema, const std::string& cls, const Signature& sig,
                  EnumMode mode = EnumMode::Exhaustive) {
  const auto cd = ClassDescriptor::named(cls, sig);
  return check_validity(instantiate(schema, sig, cd.bounds), cd, mode);
}

}  // namespace

TEST_CASE("instantiation examples") {
  const Signature sig = binary_signature(2);
  const Bounds b;
  CHECK(contains(instantiate("C4", sig, b), "[X1<-1; X2<-0](X1=1)"));

  const auto c5 = instantiate("C5", sig, b);
  CHECK(c5.size() == 8);  // (W,Y) in {(X1,X2),(X2,X1)}, 2x2 values, empty X
  for (const auto& f : c5) CHECK(well_formed(f, sig).empty());

  Bounds one;
  one.formula_depth = 0;
  one.formula_atoms = 1;
  const auto a1 = instantiate("A1", sig, one);
  REQUIRE(!a1.empty());
  CHECK(to_string(a1.front()) == "X1=0 ~> X1=0");
  CHECK(a1.size() == 3);  // X1=0, true, false

  CHECK(formula_pool(sig, b).size() == 8);
  CHECK(instantiate("A2", sig, b).size() == 512);
  CHECK_THROWS_AS(instantiate("C9", sig, b), Error);

  Bounds tight;
  tight.cap = 100;
  CHECK_THROWS_AS(instantiate("A2", sig, tight), Error);
}

TEST_CASE("instantiation is deterministic and side conditions hold") {
  const Signature sig = binary_signature(3);
  const Bounds b;
  for (const auto& s : schema_library()) {
    const auto x = instantiate(s.name, sig, b);
    const auto y = instantiate(s.name, sig, b);
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(same_formula(x[i], y[i]));
    CHECK(!x.empty());
  }
  // C1 never pairs a value with itself: 27 interventions, 3 variables, 2 ordered value pairs.
  CHECK(instantiate("C1", sig, b).size() == 162);
  // GR at three variables: 6 ordered (W,Y) pairs, 4 value pairs, 4 choices for the rest.
  CHECK(instantiate("GR", sig, b).size() == 96);
}

TEST_CASE("exhaustive counts match enumeration") {
  const Signature sig = binary_signature(2);
  for (const char* cls : {"T", "Trec"}) {
    const auto cd = ClassDescriptor::named(cls, sig);
    std::size_t n = 0;
    const std::size_t visited = for_each_model(cd, EnumMode::Exhaustive, [&](const CausalModel&) {
      ++n;
      return true;
    });
    CHECK(visited == n);
    if (std::string(cls) == "T") CHECK(n == exhaustive_count(cd, 0));
  }
  // Every recursive model appears once in Trec.
  std::size_t rec = 0;
  for_each_model(ClassDescriptor::named("T", sig), EnumMode::Exhaustive, [&](const CausalModel& t) {
    if (is_recursive(t).recursive) ++rec;
    return true;
  });
  std::size_t trec = 0;
  for_each_model(ClassDescriptor::named("Trec", sig), EnumMode::Exhaustive, [&](const CausalModel& t) {
    CHECK(is_recursive(t).recursive);
    ++trec;
    return true;
  });
  CHECK(rec == trec);

  const auto mf = ClassDescriptor::named("Mf+", sig);
  CHECK(exhaustive_count(mf, 0) == 1296);
  std::size_t seen = 0;
  for_each_structure(mf, EnumMode::Exhaustive, {}, [&](const CounterfactualStructure& m) {
    CHECK(classify_structure(m).total);
    ++seen;
    return true;
  });
  CHECK(seen == 1296);
  CHECK(exhaustive_count(ClassDescriptor::named("Mf", sig), 0) == 29u * 29u * 29u * 29u);
}

TEST_CASE("bounds too large") {
  const auto cd = ClassDescriptor::named("Mf+", binary_signature(3));
  CHECK_THROWS_AS(for_each_structure(cd, EnumMode::Exhaustive, {}, [](const CounterfactualStructure&) { return true; }),
                  Error);
  const auto t = ClassDescriptor::named("T", binary_signature(3));
  CHECK_THROWS_AS(for_each_model(t, EnumMode::Exhaustive, [](const CausalModel&) { return true; }), Error);
}

TEST_CASE("causal soundness at bound") {
  const Signature sig = binary_signature(2);
  for (const char* s : {"C0", "C1", "C2", "C3", "C4", "C5"}) {
    INFO(s);
    const auto r = check(s, "Tun", sig);
    CHECK(r.verdict == Verdict::ValidAtBound);
    CHECK(r.candidates > 0);
  }
  CHECK(check("GR", "T", sig).verdict == Verdict::ValidAtBound);
  CHECK(check("C5", "Trec", sig).verdict == Verdict::ValidAtBound);
}

TEST_CASE("structure soundness at bound") {
  const Signature sig = binary_signature(2);
  for (const char* s : {"A0", "A1", "A2", "A3", "A4", "A5", "A6"}) {
    INFO(s);
    CHECK(check(s, "M", sig).verdict == Verdict::ValidAtBound);
  }
  CHECK(check("A7", "M+", sig).verdict == Verdict::ValidAtBound);
  CHECK(check("A7", "Mf+", sig).verdict == Verdict::ValidAtBound);
  CHECK(check("A7", "M", sig).verdict == Verdict::Countermodel);
  CHECK(check("GP", "M+", sig).verdict == Verdict::ValidAtBound);
  CHECK(check("V1", "Ma", sig).verdict == Verdict::ValidAtBound);
  CHECK(check("V2", "Ma", sig).verdict == Verdict::ValidAtBound);
  CHECK(check("V1", "M", sig).verdict == Verdict::Countermodel);
  CHECK(check("V3", "Ma+", sig).verdict == Verdict::Countermodel);
  CHECK(check("C3", "Ma", sig).verdict == Verdict::ValidAtBound);
  CHECK(check("C4", "Ma", sig).verdict == Verdict::ValidAtBound);
  CHECK(check("C2", "Ma+", sig).verdict == Verdict::ValidAtBound);
  CHECK(check("C2", "Ma", sig).verdict == Verdict::Countermodel);
  CHECK(check("C1", "Ma", sig).verdict == Verdict::Countermodel);
  CHECK(check("C5", "Mrec", sig).verdict == Verdict::ValidAtBound);
}

TEST_CASE("C5 fails in full total structures") {
  const Signature sig = binary_signature(3, 0);
  const auto cd = ClassDescriptor::named("Mf+", sig);
  const auto r = check_validity(instantiate("C5", sig, cd.bounds), cd, EnumMode::Targeted);
  REQUIRE(r.verdict == Verdict::Countermodel);
  REQUIRE(r.countermodel->structure);
  const auto& m = *r.countermodel->structure;
  const auto cls = classify_structure(m);
  CHECK(cls.acceptable);
  CHECK(cls.full);
  CHECK(cls.total);
  CHECK_FALSE(cls.recursive);
  CHECK_FALSE(eval_cf(m, r.countermodel->world, r.countermodel->instance));

  // The same instances hold throughout the targeted recursive family.
  const auto rec = ClassDescriptor::named("Mrec", sig);
  const auto rr = check_validity(instantiate("C5", sig, rec.bounds), rec, EnumMode::Targeted);
  CHECK(rr.verdict == Verdict::ValidAtBound);
  CHECK(rr.candidates > 0);
}

TEST_CASE("generalized reversibility fails in some structure") {
  const Signature sig = binary_signature(3, 0);
  const auto cd = ClassDescriptor::named("Mf+", sig);
  const auto r = find_countermodel(instantiate("GR", sig, cd.bounds), cd, 2000, 7);
  REQUIRE(r.verdict == Verdict::Countermodel);
  CHECK_FALSE(eval_cf(*r.countermodel->structure, r.countermodel->world, r.countermodel->instance));
}

TEST_CASE("phi* is satisfiable in Tun and refuted in Trec") {
  const Signature sig = binary_signature(3, 1);
  const Formula not_phi = Formula::negation(parse_formula(kPhiStar));
  const auto tun = ClassDescriptor::named("Tun", sig);
  const auto r = check_validity({not_phi}, tun, EnumMode::Exhaustive);
  REQUIRE(r.verdict == Verdict::Countermodel);
  REQUIRE(r.countermodel->model);
  CHECK(in_tun(*r.countermodel->model).unique);
  CHECK_FALSE(is_recursive(*r.countermodel->model).recursive);
  CHECK(eval_causal(*r.countermodel->model, r.countermodel->context, parse_formula(kPhiStar)));

  CHECK(check_validity({not_phi}, ClassDescriptor::named("Trec", sig), EnumMode::Exhaustive).verdict ==
        Verdict::ValidAtBound);
  const auto mf = ClassDescriptor::named("Mf", sig);
  CHECK(find_countermodel({not_phi}, mf, 3000, 1).verdict == Verdict::NotFound);
  CHECK(check_validity({not_phi}, mf, EnumMode::Targeted).verdict == Verdict::ValidAtBound);
}

TEST_CASE("random search") {
  const Signature sig = binary_signature(2);
  const auto m = ClassDescriptor::named("M", sig);
  const auto a7 = instantiate("A7", sig, m.bounds);
  const auto r = find_countermodel(a7, m, 5000, 42);
  REQUIRE(r.verdict == Verdict::Countermodel);
  const auto& s = *r.countermodel->structure;
  CHECK_FALSE(eval_cf(s, r.countermodel->world, r.countermodel->instance));
  CHECK_FALSE(is_total(s));

  // Same seed, same answer.
  const auto again = find_countermodel(a7, m, 5000, 42);
  CHECK(again.countermodel->candidate == r.countermodel->candidate);
  CHECK(same_formula(again.countermodel->instance, r.countermodel->instance));

  CHECK(find_countermodel(instantiate("A1", sig, m.bounds), m, 500, 3).verdict == Verdict::NotFound);

  // Samplers stay inside their classes.
  Sampler rec(ClassDescriptor::named("Mrec", binary_signature(3)), 9);
  for (int i = 0; i < 30; ++i) {
    const auto c = classify_structure(rec.structure());
    CHECK(c.full);
    CHECK(c.recursive);
  }
  Sampler tun(ClassDescriptor::named("Tun", sig), 9);
  for (int i = 0; i < 30; ++i) CHECK(in_tun(tun.model()).unique);
  Sampler trec(ClassDescriptor::named("Trec", sig), 9);
  for (int i = 0; i < 30; ++i) CHECK(is_recursive(trec.model()).recursive);
  Sampler mp(ClassDescriptor::named("M+", sig), 9, {{"X1", 1}});
  for (int i = 0; i < 30; ++i) CHECK(is_total(mp.structure()));
}

TEST_CASE("exhaustive countermodels are reproducible") {
  const Signature sig = binary_signature(2);
  const auto a = check("A7", "M", sig);
  const auto b = check("A7", "M", sig);
  REQUIRE(a.countermodel);
  CHECK(a.countermodel->candidate == b.countermodel->candidate);
  CHECK(a.countermodel->world == b.countermodel->world);
}

TEST_CASE("precheck errors") {
  const Signature sig = binary_signature(2);
  const auto tun = ClassDescriptor::named("Tun", sig);
  CHECK_THROWS_AS(check_validity({parse_formula("X1=1 ~> X2=1")}, tun, EnumMode::Exhaustive), Error);
  const auto m = ClassDescriptor::named("M", sig);
  CHECK_THROWS_AS(check_validity({parse_formula("Q=1")}, m, EnumMode::Exhaustive), Error);
  CHECK_THROWS_AS(ClassDescriptor::named("Mx", sig), Error);
  CHECK(ClassDescriptor::named("Ma+", sig).name() == "Ma+");
}
