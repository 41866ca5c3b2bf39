#include "cfworld/cfworld.h"

#include <chrono>
#include <cstring>
#include <string>

#include "cfworld/axiom_lab.hpp"
#include "cfworld/bridge.hpp"
#include "cfworld/causal_eval.hpp"
#include "cfworld/io.hpp"
#include "cfworld/paper_suite.hpp"
#include "cfworld/proof.hpp"
#include "json.hpp"

struct cfw_model {
  cfw::CausalModel model;
};

struct cfw_structure {
  cfw::CounterfactualStructure structure;
};

namespace {

using json = nlohmann::ordered_json;

thread_local std::string g_error;
thread_local long g_position = -1;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

cfw_status set_error(cfw_status st, const std::string& msg, long pos = -1) {
  g_error = msg;
  g_position = pos;
  return st;
}

// Runs fn, mapping exceptions to status codes.
template <class Fn>
cfw_status guard(Fn&& fn) {
  g_error.clear();
  g_position = -1;
  try {
    fn();
    return CFW_OK;
  } catch (const cfw::Error& e) {
    return set_error(static_cast<cfw_status>(e.code()), e.what(),
                     e.position() ? static_cast<long>(*e.position()) : -1);
  } catch (const json::exception& e) {
    return set_error(CFW_INVALID_INPUT, std::string("bad JSON request: ") + e.what());
  } catch (const std::bad_alloc&) {
    return set_error(CFW_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(CFW_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (!p) throw cfw::Error(cfw::Errc::InvalidInput, std::string(what) + " is null");
}

json parse_request(const char* text) {
  if (!text || !*text) return json::object();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw cfw::Error(cfw::Errc::InvalidInput, std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

void put(char** out, const json& j) { *out = dup(j.dump(2)); }

std::vector<std::string> names(const cfw::Signature& sig, const std::vector<cfw::VarId>& ids) {
  std::vector<std::string> out;
  for (auto v : ids) out.push_back(sig.var(v).name);
  return out;
}

cfw::Signature lab_signature(std::size_t vars, std::size_t values, std::size_t exo_values) {
  std::vector<cfw::Variable> endo;
  for (std::size_t i = 1; i <= vars; ++i) {
    cfw::Variable v{"X" + std::to_string(i), {}};
    for (std::size_t x = 0; x < values; ++x) v.range.push_back(static_cast<cfw::Value>(x));
    endo.push_back(std::move(v));
  }
  std::vector<cfw::Variable> exo;
  if (exo_values > 0) {
    cfw::Variable u{"U", {}};
    for (std::size_t x = 0; x < exo_values; ++x) u.range.push_back(static_cast<cfw::Value>(x));
    exo.push_back(std::move(u));
  }
  return cfw::Signature(std::move(exo), std::move(endo));
}

json certificate(const cfw::CausalModel& t, const cfw::CounterfactualStructure& m,
                 const std::vector<std::pair<cfw::Context, std::size_t>>& pairing) {
  const auto corpus = cfw::lprop_corpus(t.signature(), 1);
  const auto r = cfw::certify_equivalence(t, m, pairing, corpus);
  json j{{"ok", r.ok}, {"checked", r.checked}, {"corpus", corpus.size()}};
  if (r.first) {
    j["first"] = {{"formula", cfw::to_string(r.first->formula)},
                  {"context", cfw::format_context(t.signature(), r.first->context)},
                  {"world", m.id(r.first->world)},
                  {"causal", r.first->causal},
                  {"structure", r.first->structure}};
  } else {
    j["first"] = nullptr;
  }
  return j;
}

}  // namespace

extern "C" {

const char* cfw_version(void) { return "1.0.0"; }
const char* cfw_last_error(void) { return g_error.c_str(); }
long cfw_last_error_position(void) { return g_position; }
const char* cfw_status_name(cfw_status s) {
  return s == CFW_OK ? "Ok" : cfw::errc_name(static_cast<cfw::Errc>(s));
}
void cfw_string_free(char* s) { std::free(s); }

cfw_status cfw_content_hash(const char* bytes, size_t len, char** out) {
  return guard([&] {
    require(out, "out");
    if (len) require(bytes, "bytes");
    *out = dup(cfw::content_hash(std::string_view(bytes ? bytes : "", len)));
  });
}

// ------------------------------------------------------------------ models

cfw_status cfw_model_from_json(const char* text, cfw_model** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    *out = new cfw_model{cfw::model_from_json(text)};
  });
}

void cfw_model_free(cfw_model* m) { delete m; }

cfw_status cfw_model_solve(const cfw_model* m, const char* context, const char* intervention, char** out) {
  return guard([&] {
    require(m, "model");
    require(out, "out");
    const auto& sig = m->model.signature();
    const auto u = cfw::parse_context(sig, context ? context : "");
    const auto iv = cfw::parse_intervention(sig, intervention ? intervention : "");
    const auto sols = m->model.intervene(iv).solutions(u);
    json j;
    j["solutions"] = json::array();
    j["text"] = json::array();
    for (const auto& s : sols) {
      json vals = json::array();
      for (std::size_t k = 0; k < s.size(); ++k) vals.push_back(sig.var(sig.endogenous_id(k)).range[s[k]]);
      j["solutions"].push_back(vals);
      j["text"].push_back(cfw::format_values(sig, s));
    }
    put(out, j);
  });
}

cfw_status cfw_model_classify(const cfw_model* m, char** out) {
  return guard([&] {
    require(m, "model");
    require(out, "out");
    const auto& sig = m->model.signature();
    const auto rec = cfw::is_recursive(m->model);
    const auto tun = cfw::in_tun(m->model);
    json j;
    j["class"] = cfw::model_class_name(cfw::class_of(m->model));
    j["recursive"] = rec.recursive;
    if (rec.recursive) j["order"] = names(sig, rec.order);
    else j["cycle"] = names(sig, rec.cycle);
    j["unique"] = tun.unique;
    if (tun.witness) {
      json iv = json::object();
      for (const auto& b : tun.witness->intervention) iv[sig.var(b.var).name] = sig.var(b.var).range[b.index];
      j["witness"] = {{"intervention", iv},
                      {"context", cfw::format_context(sig, tun.witness->context)},
                      {"solutions", tun.witness->solution_count}};
    }
    put(out, j);
  });
}

cfw_status cfw_model_eval(const cfw_model* m, const char* context, const char* formula, int* truth) {
  return guard([&] {
    require(m, "model");
    require(formula, "formula");
    require(truth, "truth");
    const auto u = cfw::parse_context(m->model.signature(), context ? context : "");
    *truth = cfw::eval_causal(m->model, u, cfw::parse_formula(formula)) ? 1 : 0;
  });
}

cfw_status cfw_model_to_json(const cfw_model* m, char** out) {
  return guard([&] {
    require(m, "model");
    require(out, "out");
    *out = dup(cfw::model_to_json(m->model));
  });
}

// -------------------------------------------------------------- structures

cfw_status cfw_structure_load(const char* text, cfw_structure** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    *out = new cfw_structure{cfw::structure_from_json(text)};
  });
}

void cfw_structure_free(cfw_structure* s) { delete s; }

cfw_status cfw_structure_classify(const cfw_structure* s, char** out) {
  return guard([&] {
    require(s, "structure");
    require(out, "out");
    const auto& m = s->structure;
    const auto c = cfw::classify_structure(m);
    json j;
    j["acceptable"] = c.acceptable;
    j["full"] = c.full;
    j["total"] = c.total;
    j["recursive"] = c.recursive;
    j["recursive_global"] = c.recursive_global;
    json wo = json::object();
    for (std::size_t w = 0; w < c.world_orders.size(); ++w)
      wo[m.id(w)] = c.world_orders[w] ? json(names(m.vocabulary(), *c.world_orders[w])) : json(nullptr);
    j["world_orders"] = wo;
    j["global_order"] = c.global_order ? json(names(m.vocabulary(), *c.global_order)) : json(nullptr);
    put(out, j);
  });
}

cfw_status cfw_structure_eval(const cfw_structure* s, const char* world, const char* formula, int* truth) {
  return guard([&] {
    require(s, "structure");
    require(world, "world");
    require(formula, "formula");
    require(truth, "truth");
    const std::size_t w = s->structure.require_world(world);
    *truth = cfw::eval_cf(s->structure, w, cfw::parse_formula(formula)) ? 1 : 0;
  });
}

cfw_status cfw_structure_closest(const cfw_structure* s, const char* world, const char* formula, char** out) {
  return guard([&] {
    require(s, "structure");
    require(world, "world");
    require(formula, "formula");
    require(out, "out");
    const auto& m = s->structure;
    const auto set = cfw::closest(m, m.require_world(world), cfw::parse_formula(formula));
    json ids = json::array();
    for (std::size_t w = 0; w < m.world_count(); ++w)
      if (set[w]) ids.push_back(m.id(w));
    put(out, json{{"worlds", ids}});
  });
}

// ---------------------------------------------------------------- formulas

cfw_status cfw_formula_classify(const char* formula, const cfw_model* m, char** out) {
  return guard([&] {
    require(formula, "formula");
    require(out, "out");
    const auto f = cfw::parse_formula(formula);
    json j;
    j["formula"] = cfw::to_string(f);
    j["class"] = cfw::lang_class_name(cfw::classify(f));
    if (m) {
      const auto diags = cfw::well_formed(f, m->model.signature());
      j["well_formed"] = diags.empty();
      j["diagnostics"] = json::array();
      for (const auto& d : diags) j["diagnostics"].push_back({{"kind", d.kind}, {"message", d.message}});
    }
    put(out, j);
  });
}

// ------------------------------------------------------------- translations

cfw_status cfw_model_to_structure(const cfw_model* m, int certify, char** out) {
  return guard([&] {
    require(m, "model");
    require(out, "out");
    const auto tr = cfw::causal_to_structure(m->model);
    json j;
    j["structure"] = json::parse(cfw::structure_to_json(tr.structure));
    json cw = json::object();
    std::vector<std::pair<cfw::Context, std::size_t>> pairing;
    for (std::size_t i = 0; i < tr.naming.contexts.size(); ++i) {
      cw[cfw::format_context(m->model.signature(), tr.naming.contexts[i])] =
          tr.structure.id(tr.naming.context_world[i]);
      pairing.emplace_back(tr.naming.contexts[i], tr.naming.context_world[i]);
    }
    j["context_worlds"] = cw;
    if (certify)
      j["certificate"] = certificate(m->model, tr.structure, pairing);
    put(out, j);
  });
}

cfw_status cfw_structure_to_model(const cfw_structure* s, const char* world, int per_world, int certify,
                                  char** out) {
  return guard([&] {
    require(s, "structure");
    require(out, "out");
    const auto& m = s->structure;
    const std::size_t w = world && *world ? m.require_world(world) : 0;
    cfw::StructureToModelOptions opts;
    opts.per_world = per_world != 0;
    const auto t = cfw::structure_to_causal(m, w, opts);
    json j;
    j["model"] = json::parse(cfw::model_to_json(t));
    if (certify) {
      std::vector<std::pair<cfw::Context, std::size_t>> pairing;
      const auto ctxs = cfw::all_contexts(t.signature());
      for (std::size_t i = 0; i < ctxs.size(); ++i) pairing.emplace_back(ctxs[i], opts.per_world ? i : w);
      j["certificate"] = certificate(t, m, pairing);
    }
    put(out, j);
  });
}

// ------------------------------------------------------- lab, proofs, suite

cfw_status cfw_axcheck(const char* request, char** report) {
  return guard([&] {
    require(report, "report");
    const json req = parse_request(request);
    const std::string cls = req.value("class", "");
    if (cls.empty()) throw cfw::Error(cfw::Errc::InvalidInput, "request needs 'class'");
    const std::size_t vars = req.value("vars", 2u);
    const std::size_t values = req.value("values", 2u);
    const std::size_t exo_values = req.value("exo_values", 2u);
    cfw::Bounds b;
    b.formula_depth = req.value("depth", b.formula_depth);
    b.formula_atoms = req.value("atoms", b.formula_atoms);
    b.max_worlds = req.value("max_worlds", b.max_worlds);
    b.cap = req.value("cap", b.cap);
    const std::string mode = req.value("mode", "exhaustive");
    if (mode != "exhaustive" && mode != "targeted" && mode != "random")
      throw cfw::Error(cfw::Errc::InvalidInput, "mode is exhaustive, targeted or random");
    if (mode == "random" && !req.contains("seed"))
      throw cfw::Error(cfw::Errc::InvalidInput, "random mode needs an explicit seed");
    const std::uint64_t seed = req.value("seed", std::uint64_t{0});
    const std::size_t budget = req.value("budget", std::size_t{10000});

    const auto sig = lab_signature(vars, values, exo_values);
    const auto cd = cfw::ClassDescriptor::named(cls, sig, b);
    std::vector<cfw::Formula> formulas;
    std::string schema;
    if (req.contains("formula")) {
      const json& f = req.at("formula");
      if (f.is_array())
        for (const auto& x : f) formulas.push_back(cfw::parse_formula(x.get<std::string>()));
      else
        formulas.push_back(cfw::parse_formula(f.get<std::string>()));
    } else {
      schema = req.value("schema", "");
      if (schema.empty()) throw cfw::Error(cfw::Errc::InvalidInput, "request needs 'schema' or 'formula'");
      formulas = cfw::instantiate(schema, sig, b);
    }

    const auto t0 = std::chrono::steady_clock::now();
    const auto r = mode == "random" ? cfw::find_countermodel(formulas, cd, budget, seed)
                                    : cfw::check_validity(formulas, cd,
                                                          mode == "targeted" ? cfw::EnumMode::Targeted
                                                                             : cfw::EnumMode::Exhaustive);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json j;
    if (!schema.empty()) j["schema"] = schema;
    else j["formulas"] = req.at("formula");
    j["class"] = cd.name();
    j["mode"] = mode;
    j["bounds"] = {{"vars", vars},          {"values", values},          {"exo_values", exo_values},
                   {"depth", b.formula_depth}, {"atoms", b.formula_atoms}, {"max_worlds", b.max_worlds},
                   {"cap", b.cap}};
    if (mode == "random") {
      j["bounds"]["budget"] = budget;
      j["seed"] = seed;
    }
    j["verdict"] = cfw::verdict_name(r.verdict);
    j["instances"] = r.instances;
    j["candidates"] = r.candidates;
    if (r.countermodel) {
      const auto& c = *r.countermodel;
      json cm;
      cm["instance"] = cfw::to_string(c.instance);
      cm["index"] = c.candidate;
      if (c.model) {
        cm["model"] = json::parse(cfw::model_to_json(*c.model));
        cm["context"] = cfw::format_context(c.model->signature(), c.context);
      } else {
        cm["structure"] = json::parse(cfw::structure_to_json(*c.structure));
        cm["world"] = c.structure->id(c.world);
      }
      j["countermodel"] = cm;
    } else {
      j["countermodel"] = nullptr;
    }
    j["seconds"] = secs;
    put(report, j);
  });
}

cfw_status cfw_proof_check(const char* proof_json, char** report) {
  return guard([&] {
    require(proof_json, "proof");
    require(report, "report");
    const auto script = cfw::proof_from_json(proof_json);
    const auto r = cfw::check_proof(script);
    json j;
    if (!script.name.empty()) j["name"] = script.name;
    j["verified"] = r.verified;
    j["lines"] = script.lines.size();
    if (r.verified) {
      j["conclusion"] = cfw::to_string(*r.conclusion);
    } else {
      j["failure"] = {{"line", r.line + 1},
                      {"code", cfw::errc_name(r.violation->code)},
                      {"message", r.violation->message}};
    }
    put(report, j);
  });
}

cfw_status cfw_paper_suite(const char* options, char** report) {
  return guard([&] {
    require(report, "report");
    const json req = parse_request(options);
    cfw::SuiteOptions o;
    o.fixtures_dir = req.value("fixtures", o.fixtures_dir);
    o.seed = req.value("seed", o.seed);
    o.random_budget = req.value("budget", o.random_budget);
    o.full_matrix = req.value("full_matrix", o.full_matrix);
    const auto rows = cfw::run_paper_suite(o);
    json claims = json::array();
    std::size_t passed = 0;
    for (const auto& r : rows) {
      passed += r.pass;
      claims.push_back({{"id", r.id}, {"claim", r.claim}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    }
    json j;
    j["seed"] = o.seed;
    j["budget"] = o.random_budget;
    j["passed"] = passed;
    j["failed"] = rows.size() - passed;
    j["claims"] = claims;
    put(report, j);
  });
}

}  // extern "C"
