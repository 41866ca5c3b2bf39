#include "cfworld/formula.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cfworld/error.hpp"

namespace cfw {

struct FormulaNode {
  Op op = Op::True;
  bool intervention = false;
  bool has_cf = false;
  std::string name;
  Value value = 0;
  std::optional<Formula> a;
  std::optional<Formula> b;
  std::size_t hash = 0;

  static Formula make(Op op, std::optional<Formula> a = std::nullopt, std::optional<Formula> b = std::nullopt,
                      std::string name = {}, Value value = 0, bool intervention = false) {
    auto n = std::make_shared<FormulaNode>();
    n->op = op;
    n->intervention = intervention;
    n->name = std::move(name);
    n->value = value;
    n->a = std::move(a);
    n->b = std::move(b);
    n->has_cf = op == Op::Cf || (n->a && n->a->contains_cf()) || (n->b && n->b->contains_cf());
    std::size_t h = static_cast<std::size_t>(op) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(std::hash<std::string>{}(n->name));
    mix(static_cast<std::size_t>(static_cast<long long>(value)));
    mix(intervention ? 1 : 0);
    if (n->a) mix(n->a->hash());
    if (n->b) mix(n->b->hash());
    n->hash = h;
    return Formula(std::move(n));
  }
};

Formula Formula::atom(std::string var, Value value) { return FormulaNode::make(Op::Atom, {}, {}, std::move(var), value); }
Formula Formula::truth() {
  static const Formula t = FormulaNode::make(Op::True);
  return t;
}
Formula Formula::falsity() {
  static const Formula f = FormulaNode::make(Op::False);
  return f;
}
Formula Formula::meta(std::string name) { return FormulaNode::make(Op::Meta, {}, {}, std::move(name)); }
Formula Formula::negation(Formula f) { return FormulaNode::make(Op::Not, std::move(f)); }
Formula Formula::conj(Formula a, Formula b) { return FormulaNode::make(Op::And, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return FormulaNode::make(Op::Or, std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) { return FormulaNode::make(Op::Implies, std::move(a), std::move(b)); }
Formula Formula::iff(Formula a, Formula b) { return FormulaNode::make(Op::Iff, std::move(a), std::move(b)); }
Formula Formula::cf(Formula a, Formula b) { return FormulaNode::make(Op::Cf, std::move(a), std::move(b)); }

Formula Formula::conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return truth();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return falsity();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

Formula Formula::intervention(const std::vector<std::pair<std::string, Value>>& bindings, Formula body) {
  std::vector<Formula> atoms;
  for (const auto& [v, x] : bindings) atoms.push_back(atom(v, x));
  return FormulaNode::make(Op::Cf, conj_all(atoms), std::move(body), {}, 0, true);
}

Formula Formula::diamond(const std::vector<std::pair<std::string, Value>>& bindings, Formula body) {
  return negation(intervention(bindings, negation(std::move(body))));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
Value Formula::value() const { return node_->value; }
const Formula& Formula::lhs() const { return *node_->a; }
const Formula& Formula::rhs() const { return *node_->b; }
bool Formula::is_intervention() const { return node_->intervention; }
bool Formula::contains_cf() const { return node_->has_cf; }
std::size_t Formula::hash() const { return node_->hash; }
bool Formula::is_binary() const {
  switch (op()) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
    case Op::Cf: return true;
    default: return false;
  }
}

std::vector<std::pair<std::string, Value>> Formula::bindings() const {
  std::vector<std::pair<std::string, Value>> out;
  if (!is_intervention()) return out;
  std::vector<const Formula*> stack;
  const Formula* cur = &lhs();
  while (cur->op() == Op::And) {
    stack.push_back(&cur->rhs());
    cur = &cur->lhs();
  }
  if (cur->op() == Op::Atom) out.emplace_back(cur->name(), cur->value());
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) out.emplace_back((*it)->name(), (*it)->value());
  return out;
}

namespace {

bool equal_nodes(const Formula& a, const Formula& b, bool notation) {
  if (a.node() == b.node()) return true;
  if (notation && a.hash() != b.hash()) return false;
  if (a.op() != b.op()) return false;
  if (notation && a.is_intervention() != b.is_intervention()) return false;
  switch (a.op()) {
    case Op::Atom: return a.name() == b.name() && a.value() == b.value();
    case Op::Meta: return a.name() == b.name();
    case Op::True:
    case Op::False: return true;
    case Op::Not: return equal_nodes(a.lhs(), b.lhs(), notation);
    default: return equal_nodes(a.lhs(), b.lhs(), notation) && equal_nodes(a.rhs(), b.rhs(), notation);
  }
}

}  // namespace

bool operator==(const Formula& a, const Formula& b) { return equal_nodes(a, b, true); }
bool same_formula(const Formula& a, const Formula& b) { return equal_nodes(a, b, false); }

Formula strip_notation(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Meta:
    case Op::True:
    case Op::False: return f;
    case Op::Not: return Formula::negation(strip_notation(f.lhs()));
    case Op::And: return Formula::conj(strip_notation(f.lhs()), strip_notation(f.rhs()));
    case Op::Or: return Formula::disj(strip_notation(f.lhs()), strip_notation(f.rhs()));
    case Op::Implies: return Formula::implies(strip_notation(f.lhs()), strip_notation(f.rhs()));
    case Op::Iff: return Formula::iff(strip_notation(f.lhs()), strip_notation(f.rhs()));
    case Op::Cf: return Formula::cf(strip_notation(f.lhs()), strip_notation(f.rhs()));
  }
  return f;
}

// ---------------------------------------------------------------- printing

namespace {

int level(const Formula& f) {
  switch (f.op()) {
    case Op::Cf: return f.is_intervention() ? 4 : 0;
    case Op::Implies:
    case Op::Iff: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    default: return 4;
  }
}

void print(const Formula& f, int min_level, std::string& out) {
  const bool paren = level(f) < min_level;
  if (paren) out += '(';
  switch (f.op()) {
    case Op::Atom:
      out += f.name();
      out += '=';
      out += std::to_string(f.value());
      break;
    case Op::Meta: out += f.name(); break;
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Not:
      out += '!';
      print(f.lhs(), 4, out);
      break;
    case Op::And:
      print(f.lhs(), 3, out);
      out += " & ";
      print(f.rhs(), 4, out);
      break;
    case Op::Or:
      print(f.lhs(), 2, out);
      out += " | ";
      print(f.rhs(), 3, out);
      break;
    case Op::Implies:
    case Op::Iff:
      print(f.lhs(), 2, out);
      out += f.op() == Op::Implies ? " -> " : " <-> ";
      print(f.rhs(), 2, out);
      break;
    case Op::Cf:
      if (f.is_intervention()) {
        out += '[';
        bool first = true;
        for (const auto& [v, x] : f.bindings()) {
          if (!first) out += "; ";
          first = false;
          out += v;
          out += "<-";
          out += std::to_string(x);
        }
        out += ']';
        print(f.rhs(), 4, out);
      } else {
        print(f.lhs(), 1, out);
        out += " ~> ";
        print(f.rhs(), 1, out);
      }
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

// ---------------------------------------------------------- classification

const char* lang_class_name(LangClass c) {
  switch (c) {
    case LangClass::LPROP: return "LPROP";
    case LangClass::LEX: return "LEX";
    case LangClass::LC1: return "LC1";
    case LangClass::LC: return "LC";
  }
  return "?";
}

LangClass classify(const Formula& f) {
  bool nested = false;
  bool all_sugar = true;
  bool atomic_bodies = true;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.op()) {
      case Op::Cf:
        if (g.lhs().contains_cf() || g.rhs().contains_cf()) nested = true;
        if (!g.is_intervention()) all_sugar = false;
        if (g.rhs().op() != Op::Atom) atomic_bodies = false;
        break;
      case Op::Not: walk(g.lhs()); break;
      case Op::And:
      case Op::Or:
      case Op::Implies:
      case Op::Iff:
        walk(g.lhs());
        walk(g.rhs());
        break;
      default: break;
    }
  };
  walk(f);
  if (nested) return LangClass::LC;
  if (!all_sugar) return LangClass::LC1;
  return atomic_bodies ? LangClass::LPROP : LangClass::LEX;
}

std::vector<Diagnostic> well_formed(const Formula& f, const Signature& sig) {
  std::vector<Diagnostic> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.op()) {
      case Op::Atom: {
        auto id = sig.find(g.name());
        if (!id) {
          out.push_back({"UnknownVariable", "unknown variable '" + g.name() + "'"});
        } else if (!sig.is_endogenous(*id)) {
          out.push_back({"NotEndogenous", "atom over exogenous variable '" + g.name() + "'"});
        } else if (!sig.value_index(*id, g.value())) {
          out.push_back({"ValueOutOfRange", "value " + std::to_string(g.value()) + " not in range of '" +
                                                g.name() + "'"});
        }
        break;
      }
      case Op::Meta: out.push_back({"Metavariable", "unexpected metavariable '" + g.name() + "'"}); break;
      case Op::True:
      case Op::False: break;
      case Op::Cf:
        if (g.is_intervention()) {
          std::set<std::string> seen;
          for (const auto& [v, x] : g.bindings())
            if (!seen.insert(v).second)
              out.push_back({"DuplicateIntervention", "variable '" + v + "' bound twice in an intervention"});
        }
        walk(g.lhs());
        walk(g.rhs());
        break;
      case Op::Not: walk(g.lhs()); break;
      default:
        walk(g.lhs());
        walk(g.rhs());
        break;
    }
  };
  walk(f);
  return out;
}

std::vector<std::pair<std::string, Value>> atoms_of(const Formula& f) {
  std::vector<std::pair<std::string, Value>> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.op()) {
      case Op::Atom: {
        std::pair<std::string, Value> a{g.name(), g.value()};
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
        break;
      }
      case Op::Meta:
      case Op::True:
      case Op::False: break;
      case Op::Not: walk(g.lhs()); break;
      default:
        walk(g.lhs());
        walk(g.rhs());
        break;
    }
  };
  walk(f);
  return out;
}

namespace {

Formula rebuild(const Formula& f, Formula a, std::optional<Formula> b) {
  switch (f.op()) {
    case Op::Not: return Formula::negation(std::move(a));
    case Op::And: return Formula::conj(std::move(a), std::move(*b));
    case Op::Or: return Formula::disj(std::move(a), std::move(*b));
    case Op::Implies: return Formula::implies(std::move(a), std::move(*b));
    case Op::Iff: return Formula::iff(std::move(a), std::move(*b));
    case Op::Cf:
      if (f.is_intervention() && a == f.lhs()) return Formula::intervention(f.bindings(), std::move(*b));
      return Formula::cf(std::move(a), std::move(*b));
    default: return f;
  }
}

}  // namespace

Formula substitute(const Formula& tmpl, const std::map<std::string, Formula>& subst) {
  switch (tmpl.op()) {
    case Op::Meta: {
      auto it = subst.find(tmpl.name());
      return it == subst.end() ? tmpl : it->second;
    }
    case Op::Atom:
    case Op::True:
    case Op::False: return tmpl;
    case Op::Not: return rebuild(tmpl, substitute(tmpl.lhs(), subst), std::nullopt);
    default: return rebuild(tmpl, substitute(tmpl.lhs(), subst), substitute(tmpl.rhs(), subst));
  }
}

bool match_template(const Formula& tmpl, const Formula& f, std::map<std::string, Formula>& bindings) {
  if (tmpl.op() == Op::Meta) {
    auto [it, fresh] = bindings.emplace(tmpl.name(), f);
    return fresh || same_formula(it->second, f);
  }
  if (tmpl.op() != f.op()) return false;
  switch (tmpl.op()) {
    case Op::Atom: return tmpl.name() == f.name() && tmpl.value() == f.value();
    case Op::True:
    case Op::False: return true;
    case Op::Not: return match_template(tmpl.lhs(), f.lhs(), bindings);
    default: return match_template(tmpl.lhs(), f.lhs(), bindings) && match_template(tmpl.rhs(), f.rhs(), bindings);
  }
}

}  // namespace cfw
