#include "cfworld/proof.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "cfworld/axiom_lab.hpp"
#include "json.hpp"

namespace cfw {

using json = nlohmann::ordered_json;

AxiomBase AxiomBase::ax() {
  return {{"A0", "A1", "A2", "A3", "A4", "A5", "A6"}, {"MP", "RA1", "RA2"}};
}

bool AxiomBase::has_axiom(const std::string& name) const { return name == "A0" || axioms.count(name) > 0; }
bool AxiomBase::has_rule(const std::string& name) const { return name == "MP" || rules.count(name) > 0; }

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom: return "axiom";
    case Rule::Taut: return "taut";
    case Rule::MP: return "mp";
    case Rule::RA1: return "ra1";
    case Rule::RA2: return "ra2";
  }
  return "?";
}

// ---------------------------------------------------------------- tautologies

namespace {

constexpr std::size_t kMaxLetters = 24;

struct Skeleton {
  std::vector<Formula> letters;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t letter(const Formula& f) {
    const std::string key = to_string(strip_notation(f));
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    letters.push_back(f);
    return index[key] = letters.size() - 1;
  }

  void collect(const Formula& f) {
    switch (f.op()) {
      case Op::True:
      case Op::False: return;
      case Op::Atom:
      case Op::Cf:
      case Op::Meta: letter(f); return;
      case Op::Not: collect(f.lhs()); return;
      default:
        collect(f.lhs());
        collect(f.rhs());
    }
  }
};

using Column = std::vector<std::uint64_t>;

Column eval_columns(const Formula& f, Skeleton& sk, const std::vector<Column>& cols, std::size_t words) {
  switch (f.op()) {
    case Op::True: return Column(words, ~std::uint64_t{0});
    case Op::False: return Column(words, 0);
    case Op::Atom:
    case Op::Cf:
    case Op::Meta: return cols[sk.letter(f)];
    case Op::Not: {
      Column c = eval_columns(f.lhs(), sk, cols, words);
      for (auto& w : c) w = ~w;
      return c;
    }
    default: break;
  }
  Column a = eval_columns(f.lhs(), sk, cols, words);
  const Column b = eval_columns(f.rhs(), sk, cols, words);
  for (std::size_t i = 0; i < words; ++i) {
    switch (f.op()) {
      case Op::And: a[i] &= b[i]; break;
      case Op::Or: a[i] |= b[i]; break;
      case Op::Implies: a[i] = ~a[i] | b[i]; break;
      case Op::Iff: a[i] = ~(a[i] ^ b[i]); break;
      default: break;
    }
  }
  return a;
}

}  // namespace

std::vector<Formula> opaque_letters(const Formula& f) {
  Skeleton sk;
  sk.collect(f);
  return sk.letters;
}

bool is_tautology(const Formula& f) {
  Skeleton sk;
  sk.collect(f);
  const std::size_t n = sk.letters.size();
  if (n > kMaxLetters) throw Error(Errc::BoundsTooLarge, "more than 24 propositional letters");
  const std::size_t rows = std::size_t{1} << n;
  const std::size_t words = std::max<std::size_t>(1, rows / 64);
  std::vector<Column> cols(n, Column(words, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (i < 6) {
      // Within a word, bit r of row r holds (r >> i) & 1.
      std::uint64_t pattern = 0;
      for (std::size_t r = 0; r < 64; ++r)
        if (r >> i & 1) pattern |= std::uint64_t{1} << r;
      std::fill(cols[i].begin(), cols[i].end(), pattern);
    } else {
      for (std::size_t w = 0; w < words; ++w)
        if ((w >> (i - 6)) & 1) cols[i][w] = ~std::uint64_t{0};
    }
  }
  const Column out = eval_columns(f, sk, cols, words);
  const std::uint64_t last = rows >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows) - 1;
  for (std::size_t w = 0; w < words; ++w)
    if ((out[w] & (w + 1 == words ? last : ~std::uint64_t{0})) != (w + 1 == words ? last : ~std::uint64_t{0}))
      return false;
  return true;
}

// ------------------------------------------------------------------ checking

namespace {

Violation fail(Errc code, std::string msg) { return {code, std::move(msg)}; }

void flatten(const Formula& f, Op op, std::vector<Formula>& out) {
  if (f.op() == op) {
    flatten(f.lhs(), op, out);
    flatten(f.rhs(), op, out);
  } else {
    out.push_back(f);
  }
}

std::optional<Violation> check_v_schema(const std::string& schema, const Formula& f, const ProofScript& script) {
  if (schema == "V1") {
    std::vector<Formula> parts;
    flatten(f, Op::Or, parts);
    for (const auto& p : parts)
      if (p.op() != Op::Atom) return fail(Errc::BadSubstitution, "V1 is a disjunction of atoms");
    const std::string& var = parts.front().name();
    std::vector<Value> seen;
    for (const auto& p : parts) {
      if (p.name() != var) return fail(Errc::SideConditionViolated, "V1 mixes variables");
      if (std::find(seen.begin(), seen.end(), p.value()) != seen.end())
        return fail(Errc::SideConditionViolated, "V1 repeats a value");
      seen.push_back(p.value());
    }
    if (!script.signature) return fail(Errc::SideConditionViolated, "V1 needs the signature for the range of " + var);
    const auto id = script.signature->find(var);
    if (!id) return fail(Errc::SideConditionViolated, "unknown variable " + var);
    auto range = script.signature->var(*id).range;
    std::sort(range.begin(), range.end());
    std::sort(seen.begin(), seen.end());
    if (range != seen) return fail(Errc::SideConditionViolated, "V1 must list the whole range of " + var);
    return std::nullopt;
  }
  if (schema == "V2") {
    if (f.op() != Op::Implies || f.lhs().op() != Op::Atom || f.rhs().op() != Op::Not ||
        f.rhs().lhs().op() != Op::Atom)
      return fail(Errc::BadSubstitution, "V2 has the shape X=x -> !X=x'");
    const Formula& a = f.lhs();
    const Formula& b = f.rhs().lhs();
    if (a.name() != b.name()) return fail(Errc::SideConditionViolated, "V2 needs the same variable on both sides");
    if (a.value() == b.value()) return fail(Errc::SideConditionViolated, "V2 needs x != x'");
    return std::nullopt;
  }
  // V3
  if (f.op() != Op::Not || f.lhs().op() != Op::Cf || f.lhs().rhs().op() != Op::False)
    return fail(Errc::BadSubstitution, "V3 has the shape ![X<-x]false");
  const Formula& ante = f.lhs().lhs();
  if (ante.op() == Op::True) return std::nullopt;
  std::vector<Formula> parts;
  flatten(ante, Op::And, parts);
  std::vector<std::string> vars;
  for (const auto& p : parts) {
    if (p.op() != Op::Atom) return fail(Errc::BadSubstitution, "V3 antecedent must be a conjunction of atoms");
    if (std::find(vars.begin(), vars.end(), p.name()) != vars.end())
      return fail(Errc::SideConditionViolated, "V3 intervenes on " + p.name() + " twice");
    vars.push_back(p.name());
  }
  return std::nullopt;
}

bool has_meta(const Formula& f) {
  switch (f.op()) {
    case Op::Meta: return true;
    case Op::Atom:
    case Op::True:
    case Op::False: return false;
    case Op::Not: return has_meta(f.lhs());
    default: return has_meta(f.lhs()) || has_meta(f.rhs());
  }
}

std::optional<Violation> check_axiom(const ProofLine& line, const ProofScript& script) {
  const std::string& schema = line.by.schema;
  static const std::set<std::string> known = {"A0", "A1", "A2", "A3", "A4", "A5", "A6", "A7", "V1", "V2", "V3"};
  if (!known.count(schema)) return fail(Errc::BadSubstitution, "unknown schema '" + schema + "'");
  if (!script.base.has_axiom(schema)) return fail(Errc::SchemaDisabled, schema + " is not in the base");
  if (schema == "A0") {
    if (!is_tautology(line.formula)) return fail(Errc::BadSubstitution, "not a propositional tautology");
    return std::nullopt;
  }
  if (schema[0] == 'V') return check_v_schema(schema, line.formula, script);
  const Formula tmpl = *schema_template(schema);
  if (line.by.subst.empty()) {
    std::map<std::string, Formula> b;
    if (!match_template(tmpl, line.formula, b)) return fail(Errc::BadSubstitution, "not an instance of " + schema);
    return std::nullopt;
  }
  for (const auto& [k, v] : line.by.subst)
    if (same_formula(substitute(tmpl, {{k, Formula::truth()}}), tmpl))
      return fail(Errc::BadSubstitution, schema + " has no metavariable '" + k + "'");
  const Formula inst = substitute(tmpl, line.by.subst);
  if (has_meta(inst)) return fail(Errc::BadSubstitution, "substitution leaves a metavariable unbound");
  if (!same_formula(inst, line.formula))
    return fail(Errc::BadSubstitution, "substitution gives " + to_string(inst));
  return std::nullopt;
}


}  // namespace

std::optional<Violation> check_line(const ProofScript& script, std::size_t i) {
  if (i >= script.lines.size()) throw Error(Errc::InvalidInput, "line index out of range");
  const ProofLine& line = script.lines[i];
  const Formula& f = line.formula;
  if (has_meta(f)) return fail(Errc::BadSubstitution, "proof lines may not contain metavariables");
  for (std::size_t j : line.by.from)
    if (j >= i) return fail(Errc::ForwardReference, "cites line " + std::to_string(j + 1));

  try {
    switch (line.by.rule) {
      case Rule::Axiom: return check_axiom(line, script);
      case Rule::Taut:
        if (!is_tautology(f)) return fail(Errc::RuleMismatch, "not a propositional tautology");
        return std::nullopt;
      case Rule::MP: {
        if (line.by.from.size() != 2) return fail(Errc::RuleMismatch, "MP cites two lines");
        const Formula& premise = script.lines[line.by.from[0]].formula;
        const Formula& imp = script.lines[line.by.from[1]].formula;
        if (!same_formula(imp, Formula::implies(premise, f)))
          return fail(Errc::RuleMismatch, "line " + std::to_string(line.by.from[1] + 1) + " is not line " +
                                              std::to_string(line.by.from[0] + 1) + " -> this line");
        return std::nullopt;
      }
      case Rule::RA1:
      case Rule::RA2: {
        const bool ra1 = line.by.rule == Rule::RA1;
        const std::string rname = ra1 ? "RA1" : "RA2";
        if (!script.base.has_rule(rname)) return fail(Errc::SchemaDisabled, rname + " is not in the base");
        if (f.op() != Op::Implies || f.lhs().op() != Op::Cf || f.rhs().op() != Op::Cf)
          return fail(Errc::RuleMismatch, rname + " concludes (phi ~> psi) -> (phi' ~> psi')");
        const Formula& a = f.lhs().lhs();
        const Formula& c = f.lhs().rhs();
        const Formula& a2 = f.rhs().lhs();
        const Formula& c2 = f.rhs().rhs();
        std::optional<Formula> premise;
        if (ra1) {
          if (!same_formula(c, c2)) return fail(Errc::RuleMismatch, "RA1 keeps the consequent");
          premise = Formula::iff(a, a2);
        } else {
          if (!same_formula(a, a2)) return fail(Errc::RuleMismatch, "RA2 keeps the antecedent");
          premise = Formula::implies(c, c2);
        }
        if (line.by.premise_by_taut) {
          if (!line.by.from.empty()) return fail(Errc::RuleMismatch, rname + " cites a line or a tautology, not both");
          if (!is_tautology(*premise)) return fail(Errc::RuleMismatch, to_string(*premise) + " is not a tautology");
          return std::nullopt;
        }
        if (line.by.from.size() != 1) return fail(Errc::RuleMismatch, rname + " cites one line");
        if (!same_formula(script.lines[line.by.from[0]].formula, *premise))
          return fail(Errc::RuleMismatch, "line " + std::to_string(line.by.from[0] + 1) + " is not " +
                                              to_string(*premise));
        return std::nullopt;
      }
    }
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  }
  return fail(Errc::Internal, "unknown rule");
}

ProofResult check_proof(const ProofScript& script) {
  ProofResult r;
  if (script.lines.empty()) {
    r.violation = fail(Errc::InvalidInput, "empty proof");
    return r;
  }
  for (std::size_t i = 0; i < script.lines.size(); ++i) {
    if (auto v = check_line(script, i)) {
      r.line = i;
      r.violation = std::move(v);
      return r;
    }
  }
  r.verified = true;
  r.conclusion = script.lines.back().formula;
  r.line = script.lines.size() - 1;
  return r;
}

// ---------------------------------------------------------------------- JSON

namespace {

std::size_t line_ref(const json& j, std::size_t here) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw Error(Errc::InvalidInput, "line " + std::to_string(here + 1) + ": cited lines are positive integers");
  return static_cast<std::size_t>(j.get<long long>() - 1);
}

Formula parse_at(const std::string& text, std::size_t line, bool meta = false) {
  try {
    return parse_formula(text, {.allow_meta = meta});
  } catch (const Error& e) {
    throw Error(e.code(), "line " + std::to_string(line + 1) + ": " + e.what(), e.position());
  }
}

}  // namespace

ProofScript proof_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidInput, std::string("malformed JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object() || !j.contains("lines") || !j.at("lines").is_array())
    throw Error(Errc::InvalidInput, "proof needs a 'lines' array");
  ProofScript s;
  s.name = j.value("name", "");
  s.base = AxiomBase::ax();
  if (j.contains("base")) {
    const json& b = j.at("base");
    s.base.axioms.clear();
    s.base.rules.clear();
    try {
      for (const auto& a : b.value("axioms", json::array())) s.base.axioms.insert(a.get<std::string>());
      for (const auto& r : b.value("rules", json::array())) s.base.rules.insert(r.get<std::string>());
    } catch (const json::exception&) {
      throw Error(Errc::InvalidInput, "base lists schema and rule names as strings");
    }
    s.base.axioms.insert("A0");
    s.base.rules.insert("MP");
  }
  if (j.contains("signature")) {
    std::vector<Variable> vars;
    for (const auto& [name, range] : j.at("signature").items()) {
      Variable v{name, {}};
      for (const auto& x : range) {
        if (!x.is_number_integer()) throw Error(Errc::InvalidInput, "ranges hold integers");
        v.range.push_back(x.get<Value>());
      }
      vars.push_back(std::move(v));
    }
    s.signature = Signature({}, std::move(vars));
  }
  std::size_t i = 0;
  for (const auto& l : j.at("lines")) {
    if (!l.is_object() || !l.contains("formula") || !l.at("formula").is_string() || !l.contains("by") ||
        !l.at("by").is_object())
      throw Error(Errc::InvalidInput, "line " + std::to_string(i + 1) + " needs 'formula' and 'by'");
    ProofLine pl{parse_at(l.at("formula").get<std::string>(), i), {}};
    const json& by = l.at("by");
    const std::string kind = by.value("kind", "");
    if (kind == "axiom") {
      pl.by.rule = Rule::Axiom;
      pl.by.schema = by.value("schema", "");
      if (by.contains("subst"))
        for (const auto& [k, v] : by.at("subst").items()) pl.by.subst.emplace(k, parse_at(v.get<std::string>(), i));
    } else if (kind == "taut") {
      pl.by.rule = Rule::Taut;
    } else if (kind == "mp") {
      pl.by.rule = Rule::MP;
      if (!by.contains("from") || !by.at("from").is_array())
        throw Error(Errc::InvalidInput, "line " + std::to_string(i + 1) + ": mp needs 'from': [premise, implication]");
      for (const auto& x : by.at("from")) pl.by.from.push_back(line_ref(x, i));
    } else if (kind == "ra1" || kind == "ra2") {
      pl.by.rule = kind == "ra1" ? Rule::RA1 : Rule::RA2;
      if (by.value("premise", "") == "taut") pl.by.premise_by_taut = true;
      else if (by.contains("from")) pl.by.from.push_back(line_ref(by.at("from"), i));
      else throw Error(Errc::InvalidInput, "line " + std::to_string(i + 1) + ": " + kind + " needs 'from' or premise");
    } else {
      throw Error(Errc::InvalidInput, "line " + std::to_string(i + 1) + ": unknown justification '" + kind + "'");
    }
    s.lines.push_back(std::move(pl));
    ++i;
  }
  return s;
}

std::string proof_to_json(const ProofScript& script) {
  json j;
  if (!script.name.empty()) j["name"] = script.name;
  j["base"]["axioms"] = std::vector<std::string>(script.base.axioms.begin(), script.base.axioms.end());
  j["base"]["rules"] = std::vector<std::string>(script.base.rules.begin(), script.base.rules.end());
  if (script.signature) {
    json sig = json::object();
    for (const auto& v : script.signature->variables()) sig[v.name] = v.range;
    j["signature"] = sig;
  }
  json lines = json::array();
  for (const auto& l : script.lines) {
    json by;
    by["kind"] = rule_name(l.by.rule);
    switch (l.by.rule) {
      case Rule::Axiom:
        by["schema"] = l.by.schema;
        if (!l.by.subst.empty()) {
          json sub = json::object();
          for (const auto& [k, v] : l.by.subst) sub[k] = to_string(v);
          by["subst"] = sub;
        }
        break;
      case Rule::MP:
        by["from"] = json::array();
        for (std::size_t x : l.by.from) by["from"].push_back(x + 1);
        break;
      case Rule::RA1:
      case Rule::RA2:
        if (l.by.premise_by_taut) by["premise"] = "taut";
        else if (!l.by.from.empty()) by["from"] = l.by.from[0] + 1;
        break;
      case Rule::Taut: break;
    }
    lines.push_back({{"formula", to_string(l.formula)}, {"by", by}});
  }
  j["lines"] = lines;
  return j.dump(2) + "\n";
}

}  // namespace cfw
