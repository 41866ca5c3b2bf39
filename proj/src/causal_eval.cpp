#include "cfworld/causal_eval.hpp"

#include <algorithm>

#include "cfworld/error.hpp"

namespace cfw {

CausalEvaluator::CausalEvaluator(const CausalModel& model, Context context)
    : model_(model), context_(std::move(context)) {
  if (context_.size() != model_.signature().exogenous_count())
    throw Error(Errc::PartialContext, "context must bind every exogenous variable");
}

const std::vector<EndoAssignment>& CausalEvaluator::solutions_under(const Intervention& iv) {
  auto key = iv;
  std::sort(key.begin(), key.end());
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    auto sols = iv.empty() ? model_.solutions(context_) : model_.intervene(iv).solutions(context_);
    it = cache_.emplace(std::move(key), std::move(sols)).first;
  }
  return it->second;
}

bool CausalEvaluator::holds(const Formula& body, const EndoAssignment& v) const {
  switch (body.op()) {
    case Op::Atom: {
      const Signature& sig = model_.signature();
      const VarId id = sig.require(body.name());
      auto idx = sig.value_index(id, body.value());
      return idx && v[sig.endogenous_index(id)] == *idx;
    }
    case Op::True: return true;
    case Op::False: return false;
    case Op::Not: return !holds(body.lhs(), v);
    case Op::And: return holds(body.lhs(), v) && holds(body.rhs(), v);
    case Op::Or: return holds(body.lhs(), v) || holds(body.rhs(), v);
    case Op::Implies: return !holds(body.lhs(), v) || holds(body.rhs(), v);
    case Op::Iff: return holds(body.lhs(), v) == holds(body.rhs(), v);
    default: throw Error(Errc::LanguageTooRich, "counterfactual inside an intervention body");
  }
}

bool CausalEvaluator::basic(const Intervention& iv, const Formula& body) {
  const auto& sols = solutions_under(iv);
  return std::all_of(sols.begin(), sols.end(), [&](const EndoAssignment& v) { return holds(body, v); });
}

Intervention CausalEvaluator::to_intervention(const Formula& cf) const {
  const Signature& sig = model_.signature();
  Intervention iv;
  for (const auto& [name, value] : cf.bindings()) {
    const VarId id = sig.require(name);
    iv.push_back({id, sig.require_value(id, value)});
  }
  return iv;
}

bool CausalEvaluator::eval_unchecked(const Formula& f) {
  if (!f.contains_cf()) return basic({}, f);
  switch (f.op()) {
    case Op::Cf:
      if (!f.is_intervention())
        throw Error(Errc::LanguageTooRich, "causal models only interpret intervention antecedents");
      return basic(to_intervention(f), f.rhs());
    case Op::Not: return !eval_unchecked(f.lhs());
    case Op::And: return eval_unchecked(f.lhs()) && eval_unchecked(f.rhs());
    case Op::Or: return eval_unchecked(f.lhs()) || eval_unchecked(f.rhs());
    case Op::Implies: return !eval_unchecked(f.lhs()) || eval_unchecked(f.rhs());
    case Op::Iff: return eval_unchecked(f.lhs()) == eval_unchecked(f.rhs());
    default: throw Error(Errc::Internal, "unexpected formula node");
  }
}

bool CausalEvaluator::eval(const Formula& f) {
  const LangClass c = classify(f);
  if (c != LangClass::LPROP && c != LangClass::LEX)
    throw Error(Errc::LanguageTooRich, "formula is " + std::string(lang_class_name(c)) + ", causal models evaluate LEX");
  const auto diags = well_formed(f, model_.signature());
  if (!diags.empty()) throw Error(Errc::IllFormed, diags.front().message);
  return eval_unchecked(f);
}

bool eval_causal(const CausalModel& model, const Context& u, const Formula& f) {
  return CausalEvaluator(model, u).eval(f);
}

namespace {

Formula push(const std::vector<std::pair<std::string, Value>>& bs, const Formula& body) {
  switch (body.op()) {
    case Op::Atom: return Formula::intervention(bs, body);
    case Op::True: return Formula::truth();
    case Op::False: return Formula::falsity();
    case Op::Not: return Formula::negation(push(bs, body.lhs()));
    case Op::And: return Formula::conj(push(bs, body.lhs()), push(bs, body.rhs()));
    case Op::Or: return Formula::disj(push(bs, body.lhs()), push(bs, body.rhs()));
    case Op::Implies: return Formula::implies(push(bs, body.lhs()), push(bs, body.rhs()));
    case Op::Iff: return Formula::iff(push(bs, body.lhs()), push(bs, body.rhs()));
    default: throw Error(Errc::LanguageTooRich, "counterfactual inside an intervention body");
  }
}

Formula rewrite(const Formula& f) {
  if (!f.contains_cf()) return f;
  switch (f.op()) {
    case Op::Cf: return push(f.bindings(), f.rhs());
    case Op::Not: return Formula::negation(rewrite(f.lhs()));
    case Op::And: return Formula::conj(rewrite(f.lhs()), rewrite(f.rhs()));
    case Op::Or: return Formula::disj(rewrite(f.lhs()), rewrite(f.rhs()));
    case Op::Implies: return Formula::implies(rewrite(f.lhs()), rewrite(f.rhs()));
    case Op::Iff: return Formula::iff(rewrite(f.lhs()), rewrite(f.rhs()));
    default: return f;
  }
}

}  // namespace

Formula to_lprop(const Formula& f) {
  const LangClass c = classify(f);
  if (c == LangClass::LPROP) return f;
  if (c != LangClass::LEX) throw Error(Errc::LanguageTooRich, "to_lprop expects a LEX formula");
  return rewrite(f);
}

}  // namespace cfw
