#include "cfworld/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cfworld/error.hpp"
#include "json.hpp"

namespace cfw {

using json = nlohmann::ordered_json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidInput, std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::InvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

Value as_value(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw Error(Errc::InvalidInput, where + ": expected an integer value");
  return j.get<Value>();
}

std::vector<Variable> variables(const json& j, const char* what) {
  if (!j.is_object()) throw Error(Errc::InvalidInput, std::string(what) + " must be an object");
  std::vector<Variable> out;
  for (const auto& [name, range] : j.items()) {
    if (!range.is_array()) throw Error(Errc::InvalidInput, "range of '" + name + "' must be an array");
    Variable v{name, {}};
    for (const auto& x : range) v.range.push_back(as_value(x, "range of '" + name + "'"));
    out.push_back(std::move(v));
  }
  return out;
}

json variables_json(const Signature& sig, bool exo) {
  json j = json::object();
  for (VarId i = 0; i < sig.size(); ++i)
    if (sig.is_exogenous(i) == exo) j[sig.var(i).name] = sig.var(i).range;
  return j;
}

std::vector<Value> parse_key(const std::string& key, const std::string& where) {
  std::vector<Value> out;
  if (key.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = key.find(',', start);
    std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    while (!part.empty() && std::isspace(static_cast<unsigned char>(part.front()))) part.erase(part.begin());
    while (!part.empty() && std::isspace(static_cast<unsigned char>(part.back()))) part.pop_back();
    Value v = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || p != part.data() + part.size() || part.empty())
      throw Error(Errc::InvalidInput, where + ": bad row key '" + key + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ';') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

Value parse_int(const std::string& s, const std::string& where) {
  Value v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw Error(Errc::InvalidInput, where + ": expected an integer, got '" + s + "'");
  return v;
}

}  // namespace

CausalModel model_from_json(std::string_view text) {
  const json j = parse_json(text);
  Signature sig(variables(j.contains("exogenous") ? j.at("exogenous") : json::object(), "exogenous"),
                variables(member(j, "endogenous"), "endogenous"));
  const json& eqs = member(j, "equations");
  if (!eqs.is_object()) throw Error(Errc::InvalidInput, "equations must be an object");
  std::map<std::string, TableSpec> specs;
  for (const auto& [name, e] : eqs.items()) {
    TableSpec spec;
    if (e.contains("inputs")) spec.inputs = e.at("inputs").get<std::vector<std::string>>();
    const json& table = member(e, "table");
    if (table.is_object()) {
      for (const auto& [key, out] : table.items())
        spec.rows.emplace_back(parse_key(key, "equation '" + name + "'"), as_value(out, "equation '" + name + "'"));
    } else if (spec.inputs.empty()) {
      spec.rows.emplace_back(std::vector<Value>{}, as_value(table, "equation '" + name + "'"));
    } else {
      throw Error(Errc::InvalidInput, "table of '" + name + "' must be an object");
    }
    specs.emplace(name, std::move(spec));
  }
  CausalModel t = CausalModel::make(sig, specs);
  if (j.contains("pinned")) {
    Intervention iv;
    for (const auto& name : j.at("pinned").get<std::vector<std::string>>()) {
      const VarId id = sig.require(name);
      if (!sig.is_endogenous(id)) throw Error(Errc::NotEndogenous, "'" + name + "' is exogenous");
      const auto& tab = t.table(sig.endogenous_index(id));
      for (int v : tab)
        if (v != tab.front()) throw Error(Errc::InvalidInput, "pinned equation of '" + name + "' is not constant");
      iv.push_back({id, tab.front()});
    }
    t = t.intervene(iv);
  }
  return t;
}

std::string model_to_json(const CausalModel& t) {
  const Signature& sig = t.signature();
  json j;
  j["exogenous"] = variables_json(sig, true);
  j["endogenous"] = variables_json(sig, false);
  json eqs = json::object();
  json pinned = json::array();
  for (std::size_t k = 0; k < sig.endogenous_count(); ++k) {
    const VarId x = sig.endogenous_id(k);
    std::vector<VarId> inputs;
    for (VarId y = 0; y < sig.size(); ++y)
      if (t.depends_on(k, y)) inputs.push_back(y);
    json e;
    json names = json::array();
    std::vector<std::size_t> radices;
    for (VarId y : inputs) {
      names.push_back(sig.var(y).name);
      radices.push_back(sig.range_size(y));
    }
    e["inputs"] = names;
    json table = json::object();
    std::vector<int> full(sig.size(), 0);
    for_each_tuple(radices, [&](const std::vector<int>& d) {
      std::string key;
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        full[inputs[i]] = d[i];
        if (i) key += ",";
        key += std::to_string(sig.var(inputs[i]).range[d[i]]);
      }
      table[key] = sig.var(x).range[t.equation(k, full)];
      return true;
    });
    e["table"] = table;
    eqs[sig.var(x).name] = e;
    if (t.is_pinned(k)) pinned.push_back(sig.var(x).name);
  }
  j["equations"] = eqs;
  if (!pinned.empty()) j["pinned"] = pinned;
  return j.dump(2);
}

CounterfactualStructure structure_from_json(std::string_view text) {
  const json j = parse_json(text);
  Signature voc({}, variables(member(j, "variables"), "variables"));
  const json& worlds = member(j, "worlds");
  if (!worlds.is_object()) throw Error(Errc::InvalidInput, "worlds must be an object");
  std::vector<std::string> ids;
  for (const auto& [id, _] : worlds.items()) ids.push_back(id);
  if (ids.size() > kMaxWorlds) throw Error(Errc::TooManyWorlds, "at most 256 worlds are supported");
  auto world_index = [&](const json& x) -> std::size_t {
    if (!x.is_string()) throw Error(Errc::InvalidInput, "world references must be strings");
    const auto s = x.get<std::string>();
    for (std::size_t w = 0; w < ids.size(); ++w)
      if (ids[w] == s) return w;
    throw Error(Errc::UnknownWorld, "unknown world '" + s + "'");
  };

  std::size_t atoms = 0;
  std::vector<std::size_t> offset;
  for (VarId v = 0; v < voc.size(); ++v) {
    offset.push_back(atoms);
    atoms += voc.range_size(v);
  }
  std::vector<std::vector<bool>> truth;
  for (const auto& [id, val] : worlds.items()) {
    std::vector<bool> t(atoms, false);
    if (val.is_object() && val.contains("true_atoms")) {
      for (const auto& a : val.at("true_atoms")) {
        const Formula f = parse_formula(a.get<std::string>());
        if (f.op() != Op::Atom) throw Error(Errc::InvalidInput, "true_atoms entries must be atoms");
        const VarId v = voc.require(f.name());
        t[offset[v] + voc.require_value(v, f.value())] = true;
      }
    } else {
      if (!val.is_object()) throw Error(Errc::InvalidInput, "world '" + id + "' must be an object");
      std::set<VarId> seen;
      for (const auto& [name, x] : val.items()) {
        const VarId v = voc.require(name);
        seen.insert(v);
        t[offset[v] + voc.require_value(v, as_value(x, "world '" + id + "'"))] = true;
      }
      if (seen.size() != voc.size())
        throw Error(Errc::InvalidInput, "world '" + id + "' must assign every variable");
    }
    truth.push_back(std::move(t));
  }

  const std::size_t n = ids.size();
  std::vector<WorldOrder> orders(n);
  for (auto& o : orders) o.leq.assign(n, WorldSet{});
  std::vector<bool> given(n, false);
  if (j.contains("order")) {
    for (const auto& [wid, pairs] : j.at("order").items()) {
      const std::size_t w = world_index(json(wid));
      given[w] = true;
      if (!pairs.is_array()) throw Error(Errc::InvalidInput, "order of '" + wid + "' must be an array of pairs");
      auto& leq = orders[w].leq;
      for (const auto& p : pairs) {
        if (!p.is_array() || p.size() != 2) throw Error(Errc::InvalidInput, "order entries must be [a, b] pairs");
        const std::size_t a = world_index(p[0]), b = world_index(p[1]);
        leq[a].set(b);
        leq[a].set(a);
        leq[b].set(b);
      }
    }
  }
  if (j.contains("ranking")) {
    for (const auto& [wid, levels] : j.at("ranking").items()) {
      const std::size_t w = world_index(json(wid));
      if (given[w]) throw Error(Errc::InvalidInput, "world '" + wid + "' has both an order and a ranking");
      given[w] = true;
      if (!levels.is_array()) throw Error(Errc::InvalidInput, "ranking of '" + wid + "' must be an array");
      std::vector<std::optional<int>> lv(n);
      int level = 0;
      for (const auto& entry : levels) {
        if (entry.is_array()) {
          for (const auto& x : entry) lv[world_index(x)] = level;
        } else {
          lv[world_index(entry)] = level;
        }
        ++level;
      }
      orders[w] = order_from_levels(lv);
    }
  }
  return CounterfactualStructure::generic(voc, ids, truth, orders);
}

std::string structure_to_json(const CounterfactualStructure& m) {
  const Signature& voc = m.vocabulary();
  json j;
  j["variables"] = variables_json(voc, false);
  json worlds = json::object();
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    json val = json::object();
    if (const auto& a = m.assignment(w)) {
      for (VarId v = 0; v < voc.size(); ++v) val[voc.var(v).name] = voc.var(v).range[(*a)[v]];
    } else {
      json atoms = json::array();
      for (VarId v = 0; v < voc.size(); ++v)
        for (Value x : voc.var(v).range)
          if (m.atom_true(w, *m.atom_index(voc.var(v).name, x)))
            atoms.push_back(voc.var(v).name + "=" + std::to_string(x));
      val["true_atoms"] = atoms;
    }
    worlds[m.id(w)] = val;
  }
  j["worlds"] = worlds;
  json order = json::object();
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    json pairs = json::array();
    for (std::size_t a = 0; a < m.world_count(); ++a)
      for (std::size_t b = 0; b < m.world_count(); ++b)
        if (m.leq(w, a, b) && (a != b || m.order(w).leq[a].count() == 1))
          pairs.push_back(json::array({m.id(a), m.id(b)}));
    order[m.id(w)] = pairs;
  }
  j["order"] = order;
  return j.dump(2);
}

Context parse_context(const Signature& sig, std::string_view text) {
  std::vector<std::optional<int>> vals(sig.exogenous_count());
  for (const auto& part : split_list(text)) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw Error(Errc::InvalidInput, "context entries look like U=0, got '" + part + "'");
    const VarId id = sig.require(part.substr(0, eq));
    if (!sig.is_exogenous(id)) throw Error(Errc::InvalidInput, "'" + part.substr(0, eq) + "' is not exogenous");
    if (vals[id]) throw Error(Errc::DuplicateVariable, "context binds '" + part.substr(0, eq) + "' twice");
    vals[id] = sig.require_value(id, parse_int(part.substr(eq + 1), "context"));
  }
  Context u;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!vals[i]) throw Error(Errc::PartialContext, "context does not bind '" + sig.var(i).name + "'");
    u.push_back(*vals[i]);
  }
  return u;
}

std::string format_context(const Signature& sig, const Context& u) {
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out += ",";
    out += sig.var(i).name + "=" + std::to_string(sig.var(i).range[u[i]]);
  }
  return out;
}

Intervention parse_intervention(const Signature& sig, std::string_view text) {
  Intervention iv;
  for (const auto& part : split_list(text)) {
    const auto arrow = part.find("<-");
    if (arrow == std::string::npos) throw Error(Errc::InvalidInput, "interventions look like X<-1, got '" + part + "'");
    const VarId id = sig.require(part.substr(0, arrow));
    if (!sig.is_endogenous(id)) throw Error(Errc::NotEndogenous, "cannot intervene on exogenous '" + sig.var(id).name + "'");
    iv.push_back({id, sig.require_value(id, parse_int(part.substr(arrow + 2), "intervention"))});
  }
  validate_intervention(sig, iv);
  return iv;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cfw
