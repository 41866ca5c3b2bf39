#include <functional>
#include <unordered_map>

#include "cfworld/axiom_lab.hpp"
#include "cfworld/error.hpp"
#include "cfworld/proof.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "support/random_formula.hpp"

using namespace cfw;

namespace {

ProofScript load_proof(const std::string& name) { return proof_from_json(read_text_file(fixture_path(name))); }

ProofLine line(const std::string& text, Rule r, std::vector<std::size_t> from = {}, std::string schema = {}) {
  Justification j;
  j.rule = r;
  j.from = std::move(from);
  j.schema = std::move(schema);
  return {parse_formula(text), j};
}

// Truth tables by plain recursion over letter assignments.
bool naive_tautology(const Formula& f) {
  const auto letters = opaque_letters(f);
  std::unordered_map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < letters.size(); ++i) idx[to_string(strip_notation(letters[i]))] = i;
  for (std::size_t row = 0; row < (std::size_t{1} << letters.size()); ++row) {
    std::function<bool(const Formula&)> ev = [&](const Formula& g) -> bool {
      switch (g.op()) {
        case Op::True: return true;
        case Op::False: return false;
        case Op::Not: return !ev(g.lhs());
        case Op::And: return ev(g.lhs()) && ev(g.rhs());
        case Op::Or: return ev(g.lhs()) || ev(g.rhs());
        case Op::Implies: return !ev(g.lhs()) || ev(g.rhs());
        case Op::Iff: return ev(g.lhs()) == ev(g.rhs());
        default: return (row >> idx.at(to_string(strip_notation(g)))) & 1;
      }
    };
    if (!ev(f)) return false;
  }
  return true;
}

// Flip the value of the first atom (binary ranges).
Formula flip_first_atom(const Formula& f, bool& done) {
  switch (f.op()) {
    case Op::Atom:
      if (done) return f;
      done = true;
      return Formula::atom(f.name(), 1 - f.value());
    case Op::True:
    case Op::False:
    case Op::Meta: return f;
    case Op::Not: return Formula::negation(flip_first_atom(f.lhs(), done));
    case Op::Cf: {
      Formula a = flip_first_atom(f.lhs(), done);
      return Formula::cf(a, flip_first_atom(f.rhs(), done));
    }
    default: {
      Formula a = flip_first_atom(f.lhs(), done);
      Formula b = flip_first_atom(f.rhs(), done);
      switch (f.op()) {
        case Op::And: return Formula::conj(a, b);
        case Op::Or: return Formula::disj(a, b);
        case Op::Implies: return Formula::implies(a, b);
        default: return Formula::iff(a, b);
      }
    }
  }
}

}  // namespace

TEST_CASE("single lines") {
  ProofScript s;
  s.base = AxiomBase::ax();
  Justification a1;
  a1.rule = Rule::Axiom;
  a1.schema = "A1";
  a1.subst.emplace("phi", parse_formula("X1=0"));
  s.lines.push_back({parse_formula("X1=0 ~> X1=0"), a1});
  CHECK_FALSE(check_line(s, 0));

  // Wrong substitution, missing binding, unknown metavariable.
  s.lines[0].by.subst.at("phi") = parse_formula("X1=1");
  CHECK(check_line(s, 0)->code == Errc::BadSubstitution);
  s.lines[0].by.subst.clear();
  CHECK_FALSE(check_line(s, 0));  // matched without a substitution
  s.lines[0].by.subst.emplace("chi", parse_formula("X1=0"));
  CHECK(check_line(s, 0)->code == Errc::BadSubstitution);

  ProofScript mp;
  mp.base = AxiomBase::ax();
  mp.lines = {line("X1=0 ~> X1=0", Rule::Axiom, {}, "A1"),
              line("(X1=0 ~> X1=0) -> (X2=1 | !X2=1)", Rule::Taut),
              line("X2=1 | !X2=1", Rule::MP, {0, 1})};
  CHECK(check_proof(mp).verified);
  mp.lines[2].by.from = {1, 0};
  CHECK(check_line(mp, 2)->code == Errc::RuleMismatch);
  mp.lines[2].by.from = {0, 2};
  CHECK(check_line(mp, 2)->code == Errc::ForwardReference);

  ProofScript a4;
  a4.base = AxiomBase::ax();
  a4.base.axioms.erase("A4");
  a4.lines = {line("(X1=1 ~> X2=1) & (X2=1 ~> X2=1) -> (X1=1 | X2=1 ~> X2=1)", Rule::Axiom, {}, "A4")};
  CHECK(check_line(a4, 0)->code == Errc::SchemaDisabled);

  ProofScript ra;
  ra.base = AxiomBase::ax();
  ra.lines = {line("(X1=1 ~> X2=1 & X3=0) -> (X1=1 ~> X2=1)", Rule::RA2)};
  ra.lines[0].by.premise_by_taut = true;
  CHECK_FALSE(check_line(ra, 0));
  ra.lines[0].by.rule = Rule::RA1;
  CHECK(check_line(ra, 0)->code == Errc::RuleMismatch);
  ra.base.rules.erase("RA1");
  CHECK(check_line(ra, 0)->code == Errc::SchemaDisabled);
}

TEST_CASE("V schemas") {
  ProofScript s;
  s.base = AxiomBase::ax();
  s.base.axioms.insert({"V1", "V2", "V3"});
  s.signature = Signature({}, {{"X", {0, 1, 2}}, {"Y", {0, 1}}});
  auto at = [&](const std::string& text, const std::string& schema) {
    s.lines = {line(text, Rule::Axiom, {}, schema)};
    return check_line(s, 0);
  };
  CHECK_FALSE(at("X=0 | X=1 | X=2", "V1"));
  CHECK(at("X=0 | X=1", "V1")->code == Errc::SideConditionViolated);
  CHECK(at("X=0 | Y=1 | X=2", "V1")->code == Errc::SideConditionViolated);
  CHECK_FALSE(at("X=0 -> !X=2", "V2"));
  CHECK(at("X=0 -> !X=0", "V2")->code == Errc::SideConditionViolated);
  CHECK(at("X=0 -> !Y=1", "V2")->code == Errc::SideConditionViolated);
  CHECK(at("X=0 -> Y=1", "V2")->code == Errc::BadSubstitution);
  CHECK_FALSE(at("![X<-1; Y<-0]false", "V3"));
  CHECK_FALSE(at("!(X=1 ~> false)", "V3"));
  CHECK(at("![X<-1; X<-0]false", "V3")->code == Errc::SideConditionViolated);
  CHECK(at("!(X=1 | Y=0 ~> false)", "V3")->code == Errc::BadSubstitution);
  s.base.axioms.erase("V3");
  CHECK(at("![X<-1]false", "V3")->code == Errc::SchemaDisabled);
}

TEST_CASE("tautology checker agrees with truth tables") {
  testing::FormulaGen gen(11, {"X1", "X2"}, {0, 1});
  int taut = 0;
  for (int i = 0; i < 3000; ++i) {
    Formula f = gen.next(4);
    if (opaque_letters(f).size() > 8) continue;
    // Mix in formulas that are tautologies by construction half the time.
    if (i % 2) f = Formula::implies(Formula::conj(f, gen.next(2)), Formula::disj(gen.next(2), f));
    if (opaque_letters(f).size() > 8) continue;
    const bool t = naive_tautology(f);
    taut += t;
    CHECK(is_tautology(f) == t);
  }
  CHECK(taut > 500);
  // Notation does not split letters.
  CHECK(is_tautology(parse_formula("([X1<-1]X2=0) -> (X1=1 ~> X2=0)")));
  CHECK_FALSE(is_tautology(parse_formula("X1=1 -> !X1=0")));
  // Wide formulas use several words.
  std::vector<Formula> atoms;
  for (int i = 0; i < 10; ++i) atoms.push_back(Formula::atom("X" + std::to_string(i), 0));
  CHECK(is_tautology(Formula::implies(Formula::conj_all(atoms), atoms.back())));
  CHECK_FALSE(is_tautology(Formula::implies(Formula::disj_all(atoms), atoms.back())));
}

TEST_CASE("lemma fixture") {
  const auto s = load_proof("lemma-a1.json");
  const auto r = check_proof(s);
  INFO((r.violation ? r.violation->message : ""));
  REQUIRE(r.verified);
  CHECK(same_formula(*r.conclusion, parse_formula("(X1=1 ~> X2=1) & (X2=1 ~> X3=1) -> (X1=1 | X2=1 ~> X3=1)")));
  // Sound over generic structures.
  const auto cd = ClassDescriptor::named("M", binary_signature(3, 0));
  CHECK(check_validity({*r.conclusion}, cd, EnumMode::Exhaustive).verdict == Verdict::ValidAtBound);
}

TEST_CASE("negation of phi* fixture") {
  auto s = load_proof("neg-phi.json");
  const auto r = check_proof(s);
  INFO((r.violation ? r.violation->message : ""));
  REQUIRE(r.verified);
  CHECK(same_formula(*r.conclusion, Formula::negation(parse_formula(kPhiStar))));

  const auto mf = ClassDescriptor::named("Mf", binary_signature(3, 0));
  CHECK(check_validity({*r.conclusion}, mf, EnumMode::Targeted).verdict == Verdict::ValidAtBound);
  CHECK(find_countermodel({*r.conclusion}, mf, 2000, 5).verdict == Verdict::NotFound);

  // Without A4 the first A4 line fails.
  s.base.axioms.erase("A4");
  const auto without = check_proof(s);
  REQUIRE_FALSE(without.verified);
  CHECK(without.violation->code == Errc::SchemaDisabled);
  std::size_t first_a4 = 0;
  while (s.lines[first_a4].by.rule != Rule::Axiom || s.lines[first_a4].by.schema != "A4") ++first_a4;
  CHECK(without.line == first_a4);

  // V2 and V3 are needed too.
  auto no_v3 = load_proof("neg-phi.json");
  no_v3.base.axioms.erase("V3");
  CHECK_FALSE(check_proof(no_v3).verified);
}

TEST_CASE("single-line mutations are rejected") {
  for (const char* name : {"lemma-a1.json", "neg-phi.json"}) {
    const auto base = load_proof(name);
    REQUIRE(check_proof(base).verified);
    for (std::size_t i = 0; i < base.lines.size(); ++i) {
      INFO(name << " line " << i + 1);
      auto m = base;
      bool done = false;
      m.lines[i].formula = flip_first_atom(m.lines[i].formula, done);
      if (done) CHECK_FALSE(check_proof(m).verified);

      m = base;
      auto& by = m.lines[i].by;
      switch (by.rule) {
        case Rule::Axiom: by.schema = by.schema == "A2" ? "A3" : "A2"; break;
        case Rule::Taut:
          by.rule = Rule::Axiom;
          by.schema = "A1";
          break;
        case Rule::MP: std::swap(by.from[0], by.from[1]); break;
        case Rule::RA1: by.rule = Rule::RA2; break;
        case Rule::RA2: by.rule = Rule::RA1; break;
      }
      CHECK_FALSE(check_proof(m).verified);
    }
  }
}

TEST_CASE("proof JSON") {
  const auto s = load_proof("neg-phi.json");
  const auto again = proof_from_json(proof_to_json(s));
  REQUIRE(again.lines.size() == s.lines.size());
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    CHECK(same_formula(again.lines[i].formula, s.lines[i].formula));
    CHECK(again.lines[i].by.from == s.lines[i].by.from);
  }
  CHECK(check_proof(again).verified);
  CHECK_THROWS_AS(proof_from_json("{\"lines\": [{\"formula\": \"X1=\", \"by\": {\"kind\": \"taut\"}}]}"), Error);
  CHECK_THROWS_AS(proof_from_json("{\"lines\": [{\"formula\": \"true\", \"by\": {\"kind\": \"magic\"}}]}"), Error);
  CHECK_THROWS_AS(proof_from_json("[1"), Error);
  // A0 and MP are always on.
  const auto p = proof_from_json(
      "{\"base\": {\"axioms\": [], \"rules\": []}, \"lines\": [{\"formula\": \"true\", \"by\": {\"kind\": \"taut\"}}]}");
  CHECK(p.base.has_axiom("A0"));
  CHECK(p.base.has_rule("MP"));
  CHECK(check_proof(p).verified);
}
