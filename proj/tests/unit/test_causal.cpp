#include <functional>

#include "cfworld/causal_eval.hpp"
#include "cfworld/error.hpp"
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

// Random LEX formula over binary X1..X3.
Formula random_lex(std::mt19937_64& rng, int depth) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  std::function<Formula(int)> body = [&](int d) -> Formula {
    if (d == 0 || pick(3) == 0) return Formula::atom("X" + std::to_string(1 + pick(3)), pick(2));
    switch (pick(5)) {
      case 0: return Formula::negation(body(d - 1));
      case 1: return Formula::conj(body(d - 1), body(d - 1));
      case 2: return Formula::disj(body(d - 1), body(d - 1));
      case 3: return Formula::implies(body(d - 1), body(d - 1));
      default: return Formula::iff(body(d - 1), body(d - 1));
    }
  };
  if (depth == 0 || pick(3) == 0) {
    std::vector<std::pair<std::string, Value>> bs;
    for (int v = 1; v <= 3; ++v)
      if (pick(3) == 0) bs.emplace_back("X" + std::to_string(v), pick(2));
    if (pick(4) == 0) return body(2);
    return Formula::intervention(bs, body(2));
  }
  switch (pick(3)) {
    case 0: return Formula::negation(random_lex(rng, depth - 1));
    case 1: return Formula::conj(random_lex(rng, depth - 1), random_lex(rng, depth - 1));
    default: return Formula::disj(random_lex(rng, depth - 1), random_lex(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("phi* holds in T* at u=0") {
  const CausalModel t = load_model("tstar.json");
  CHECK(eval_causal(t, {0}, P(kPhiStar)));
  CHECK_FALSE(eval_causal(t, {0}, P("[X1<-1](X2=0)")));
  CHECK(eval_causal(t, {0}, P("X1=0 & X2=0 & X3=0")));
}

TEST_CASE("effectiveness holds in every solution") {
  const CausalModel t = load_model("forestfire.json");
  for (int e = 0; e < 4; ++e) {
    CHECK(eval_causal(t, {e}, P("[L<-1; F<-0](L=1)")));
    CHECK(eval_causal(t, {e}, P("[L<-1](F=1)")));
    CHECK(eval_causal(t, {e}, P("[L<-0; ML<-0](F=0)")));
  }
  CHECK(eval_causal(t, {1}, P("F=1 & L=1 & ML=0")));
}

TEST_CASE("vacuous truth without solutions") {
  const Signature s({}, {{"X1", {0, 1}}, {"X2", {0, 1}}});
  const auto t = CausalModel::make(s, {{"X1", {{"X2"}, {{{0}, 1}, {{1}, 0}}}}, {"X2", {{"X1"}, {{{0}, 0}, {{1}, 1}}}}});
  CHECK(eval_causal(t, {}, P("X1=0 & X1=1")));
  CHECK(eval_causal(t, {}, P("[](X1=0 & X1=1)")));
  // Pinning X2 breaks the loop.
  CHECK(eval_causal(t, {}, P("[X2<-0](X1=1)")));
}

TEST_CASE("disjunction inside the scope is checked per solution") {
  // X1 = X2, X2 = X1: two solutions (0,0) and (1,1).
  const Signature s({}, {{"X1", {0, 1}}, {"X2", {0, 1}}});
  const auto t = CausalModel::make(s, {{"X1", {{"X2"}, {{{0}, 0}, {{1}, 1}}}}, {"X2", {{"X1"}, {{{0}, 0}, {{1}, 1}}}}});
  CHECK(eval_causal(t, {}, P("[](X1=0 | X1=1)")));
  CHECK_FALSE(eval_causal(t, {}, P("[]X1=0 | []X1=1")));
}

TEST_CASE("evaluation errors") {
  const CausalModel t = load_model("tstar.json");
  CHECK(code_of([&] { eval_causal(t, {0}, P("X1=1 | X2=1 ~> X3=1")); }) == Errc::LanguageTooRich);
  CHECK(code_of([&] { eval_causal(t, {0}, P("[X1<-1][X2<-1]X3=1")); }) == Errc::LanguageTooRich);
  CHECK(code_of([&] { eval_causal(t, {0}, P("[X1<-1]X2=3")); }) == Errc::IllFormed);
  CHECK(code_of([&] { eval_causal(t, {0}, P("U=0")); }) == Errc::IllFormed);
  CHECK(code_of([&] { eval_causal(t, {}, P("X1=0")); }) == Errc::PartialContext);
}

TEST_CASE("to_lprop examples") {
  CHECK(to_lprop(P("[X1<-1](X2=1 & X3=0)")) == P("[X1<-1](X2=1) & [X1<-1](X3=0)"));
  CHECK(to_lprop(P("[X1<-1](!(X2=1))")) == P("![X1<-1](X2=1)"));
  const Formula lp = P("[X1<-1]X2=1 | !X3=0");
  CHECK(to_lprop(lp) == lp);
  CHECK(classify(to_lprop(P(kPhiStar))) == LangClass::LPROP);
  CHECK(code_of([] { to_lprop(P("X1=1 ~> X2=1")); }) == Errc::LanguageTooRich);
}

TEST_CASE("to_lprop preserves truth over every Tun model on three binary variables") {
  const Signature s({}, {{"X1", {0, 1}}, {"X2", {0, 1}}, {"X3", {0, 1}}});
  std::mt19937_64 rng(3);
  std::vector<std::pair<Formula, Formula>> corpus;
  for (int i = 0; i < 40; ++i) {
    const Formula f = random_lex(rng, 2);
    corpus.emplace_back(f, to_lprop(f));
    CHECK(classify(corpus.back().second) == LangClass::LPROP);
  }
  int tun_models = 0, disagreements_outside = 0;
  for (int m = 0; m < 4096; ++m) {
    std::vector<std::vector<int>> tables(3, std::vector<int>(4));
    for (int k = 0; k < 3; ++k)
      for (int r = 0; r < 4; ++r) tables[k][r] = (m >> (4 * k + r)) & 1;
    const auto t = CausalModel::from_full_tables(s, tables);
    const bool tun = in_tun(t).unique;
    tun_models += tun;
    CausalEvaluator ev(t, {});
    for (const auto& [f, g] : corpus) {
      const bool a = ev.eval(f), b = ev.eval(g);
      if (tun) CHECK(a == b);
      else disagreements_outside += a != b;
    }
  }
  CHECK(tun_models > 0);
  // Outside Tun the rewrite is allowed to change truth values, and it does.
  CHECK(disagreements_outside > 0);
}

TEST_CASE("recursive models have unique solutions under every intervention") {
  const Signature s({{"U", {0, 1}}}, {{"X", {0, 1}}, {"Y", {0, 1}}});
  for (int m = 0; m < 256; ++m) {
    std::vector<std::vector<int>> tables(2, std::vector<int>(4));
    for (int k = 0; k < 2; ++k)
      for (int r = 0; r < 4; ++r) tables[k][r] = (m >> (4 * k + r)) & 1;
    const auto t = CausalModel::from_full_tables(s, tables);
    if (!is_recursive(t).recursive) continue;
    for (const auto& u : all_contexts(s))
      CHECK(eval_causal(t, u, P("[X<-0](Y=0 | Y=1) & ![X<-0](Y=0 & Y=1)")));
  }
}
