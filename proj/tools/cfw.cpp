// cfw: command-line front end over the cfworld C API.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfworld/cfworld.h"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kPass = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

// Carries a failed C call out to main.
struct ApiFailure {
  cfw_status status;
  std::string message;
  long position;
  std::string source;  // text the position points into, if any
};

struct Owned {
  char* p = nullptr;
  ~Owned() { cfw_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

void check(cfw_status st, const std::string& source = "") {
  if (st != CFW_OK) throw ApiFailure{st, cfw_last_error(), cfw_last_error_position(), source};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiFailure{CFW_IO, "cannot read " + path, -1, ""};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ApiFailure{CFW_IO, "cannot write " + path, -1, ""};
}

std::string hash_of(const std::string& bytes) {
  Owned h;
  check(cfw_content_hash(bytes.data(), bytes.size(), &h.p));
  return h.str();
}

// Collects what the --report file records.
struct Run {
  std::string subcommand;
  json inputs = json::array();
  json artifacts = json::array();
  std::optional<std::uint64_t> seed;
  std::string verdict;
  json result;

  std::string input(const std::string& path) {
    std::string text = slurp(path);
    inputs.push_back({{"path", path}, {"fnv1a64", hash_of(text)}});
    return text;
  }
  void literal(const std::string& name, const std::string& value) {
    inputs.push_back({{"arg", name}, {"value", value}});
  }
  void artifact(const std::string& path, const std::string& text) {
    spit(path, text);
    artifacts.push_back({{"path", path}, {"fnv1a64", hash_of(text)}});
  }
};

struct ModelHandle {
  cfw_model* m = nullptr;
  ~ModelHandle() { cfw_model_free(m); }
};
struct StructureHandle {
  cfw_structure* s = nullptr;
  ~StructureHandle() { cfw_structure_free(s); }
};

void load(Run& run, const std::string& path, ModelHandle& h) { check(cfw_model_from_json(run.input(path).c_str(), &h.m)); }
void load(Run& run, const std::string& path, StructureHandle& h) {
  check(cfw_structure_load(run.input(path).c_str(), &h.s));
}

// ------------------------------------------------------------- subcommands

struct SolveArgs {
  std::string model, context, set;
};
int do_solve(Run& run, const SolveArgs& a) {
  ModelHandle h;
  load(run, a.model, h);
  run.literal("context", a.context);
  run.literal("set", a.set);
  Owned out;
  check(cfw_model_solve(h.m, a.context.c_str(), a.set.c_str(), &out.p));
  run.result = json::parse(out.str());
  for (const auto& t : run.result["text"]) std::cout << t.get<std::string>() << "\n";
  const bool any = !run.result["text"].empty();
  if (!any) std::cout << "no solutions\n";
  run.verdict = any ? "solved" : "no-solutions";
  return any ? kPass : kFalse;
}

struct EvalArgs {
  std::string model, structure, context, world, formula;
};
int do_eval(Run& run, const EvalArgs& a) {
  run.literal("formula", a.formula);
  int truth = 0;
  if (!a.model.empty()) {
    ModelHandle h;
    load(run, a.model, h);
    run.literal("context", a.context);
    check(cfw_model_eval(h.m, a.context.c_str(), a.formula.c_str(), &truth), a.formula);
  } else {
    StructureHandle h;
    load(run, a.structure, h);
    run.literal("world", a.world);
    check(cfw_structure_eval(h.s, a.world.c_str(), a.formula.c_str(), &truth), a.formula);
  }
  std::cout << (truth ? "true" : "false") << "\n";
  run.verdict = truth ? "true" : "false";
  run.result = {{"truth", truth != 0}};
  return truth ? kPass : kFalse;
}

struct ClassifyArgs {
  std::string model, structure, formula;
};
int do_classify(Run& run, const ClassifyArgs& a) {
  Owned out;
  if (!a.formula.empty()) {
    run.literal("formula", a.formula);
    ModelHandle h;
    if (!a.model.empty()) load(run, a.model, h);
    check(cfw_formula_classify(a.formula.c_str(), h.m, &out.p), a.formula);
    run.result = json::parse(out.str());
    run.verdict = run.result["class"];
  } else if (!a.model.empty()) {
    ModelHandle h;
    load(run, a.model, h);
    check(cfw_model_classify(h.m, &out.p));
    run.result = json::parse(out.str());
    run.verdict = run.result["class"];
  } else {
    StructureHandle h;
    load(run, a.structure, h);
    check(cfw_structure_classify(h.s, &out.p));
    run.result = json::parse(out.str());
    run.verdict = run.result["recursive"].get<bool>() ? "recursive" : "not-recursive";
  }
  std::cout << run.result.dump(2) << "\n";
  return kPass;
}

struct TranslateArgs {
  std::string to, in, world, out;
  bool per_world = false, certify = false;
};
int do_translate(Run& run, const TranslateArgs& a) {
  Owned res;
  std::string artifact;
  if (a.to == "structure") {
    ModelHandle h;
    load(run, a.in, h);
    check(cfw_model_to_structure(h.m, a.certify, &res.p));
    run.result = json::parse(res.str());
    artifact = run.result["structure"].dump(2);
    run.result.erase("structure");
  } else {
    StructureHandle h;
    load(run, a.in, h);
    if (!a.world.empty()) run.literal("world", a.world);
    check(cfw_structure_to_model(h.s, a.world.c_str(), a.per_world, a.certify, &res.p));
    run.result = json::parse(res.str());
    artifact = run.result["model"].dump(2);
    run.result.erase("model");
  }
  artifact += "\n";
  if (a.out.empty()) std::cout << artifact;
  else run.artifact(a.out, artifact);
  int code = kPass;
  run.verdict = "translated";
  if (a.certify) {
    const auto& c = run.result["certificate"];
    const bool ok = c["ok"];
    std::cerr << "certify: " << (ok ? "agree" : "DISAGREE") << " on " << c["checked"] << " checks\n";
    if (!ok) std::cerr << "  first: " << c["first"].dump() << "\n";
    run.verdict = ok ? "certified" : "disagreement";
    code = ok ? kPass : kFalse;
  }
  return code;
}

struct AxcheckArgs {
  std::string schema, cls, mode = "exhaustive", countermodel;
  std::vector<std::string> formulas;
  std::size_t vars = 2, values = 2, exo_values = 2, budget = 10000;
  std::optional<std::uint64_t> seed;
  std::optional<int> depth, atoms;
  std::optional<std::size_t> max_worlds, cap;
};
int do_axcheck(Run& run, const AxcheckArgs& a, const std::string& report_path) {
  if (a.mode == "random" && !a.seed) throw CLI::ValidationError("--seed", "random mode needs an explicit --seed");
  json req;
  if (!a.schema.empty()) req["schema"] = a.schema;
  else req["formula"] = a.formulas;
  req["class"] = a.cls;
  req["vars"] = a.vars;
  req["values"] = a.values;
  req["exo_values"] = a.exo_values;
  req["mode"] = a.mode;
  req["budget"] = a.budget;
  if (a.seed) req["seed"] = *a.seed;
  if (a.depth) req["depth"] = *a.depth;
  if (a.atoms) req["atoms"] = *a.atoms;
  if (a.max_worlds) req["max_worlds"] = *a.max_worlds;
  if (a.cap) req["cap"] = *a.cap;
  run.inputs.push_back({{"request", req}});
  run.seed = a.seed;
  Owned out;
  check(cfw_axcheck(req.dump().c_str(), &out.p));
  run.result = json::parse(out.str());
  run.verdict = run.result["verdict"];
  std::cout << run.result["verdict"].get<std::string>() << " " << run.result["class"].get<std::string>() << ": "
            << run.result["instances"] << " instances, " << run.result["candidates"] << " candidates\n";
  const auto& cm = run.result["countermodel"];
  if (cm.is_null()) return kPass;
  std::cout << "countermodel for " << cm["instance"].get<std::string>();
  if (cm.contains("world")) std::cout << " at world " << cm["world"].get<std::string>();
  else std::cout << " in context " << cm["context"].get<std::string>();
  std::cout << "\n";
  std::string path = a.countermodel;
  if (path.empty() && !report_path.empty()) {
    path = report_path;
    const auto dot = path.rfind(".json");
    if (dot != std::string::npos && dot + 5 == path.size()) path.erase(dot);
    path += ".countermodel.json";
  }
  if (!path.empty()) {
    run.artifact(path, (cm.contains("model") ? cm["model"] : cm["structure"]).dump(2) + "\n");
    std::cout << "countermodel written to " << path << "\n";
  }
  return kFalse;
}

int do_prove(Run& run, const std::string& script) {
  Owned out;
  check(cfw_proof_check(run.input(script).c_str(), &out.p));
  run.result = json::parse(out.str());
  const bool ok = run.result["verified"];
  run.verdict = ok ? "verified" : "failed";
  if (ok) {
    std::cout << "verified (" << run.result["lines"] << " lines): " << run.result["conclusion"].get<std::string>()
              << "\n";
    return kPass;
  }
  const auto& f = run.result["failure"];
  std::cout << "failed at line " << f["line"] << ": " << f["code"].get<std::string>() << ": "
            << f["message"].get<std::string>() << "\n";
  return kFalse;
}

struct SuiteArgs {
  std::string fixtures = "fixtures";
  std::uint64_t seed = 1;
  std::size_t budget = 20000;
  bool quick = false;
};
int do_suite(Run& run, const SuiteArgs& a) {
  json opts{{"fixtures", a.fixtures}, {"seed", a.seed}, {"budget", a.budget}, {"full_matrix", !a.quick}};
  run.seed = a.seed;
  run.inputs.push_back({{"options", opts}});
  Owned out;
  check(cfw_paper_suite(opts.dump().c_str(), &out.p));
  run.result = json::parse(out.str());
  std::size_t width = 0;
  for (const auto& c : run.result["claims"]) width = std::max(width, c["id"].get<std::string>().size());
  for (const auto& c : run.result["claims"]) {
    const std::string id = c["id"];
    std::printf("%-4s %-*s  %s\n", c["pass"].get<bool>() ? "PASS" : "FAIL", static_cast<int>(width), id.c_str(),
                c["detail"].get<std::string>().c_str());
  }
  const std::size_t failed = run.result["failed"];
  std::printf("%zu passed, %zu failed\n", run.result["passed"].get<std::size_t>(), failed);
  run.verdict = failed == 0 ? "pass" : "fail";
  return failed == 0 ? kPass : kFalse;
}

void print_failure(const ApiFailure& f) {
  std::cerr << "error: " << cfw_status_name(f.status) << ": " << f.message;
  if (f.position >= 0 && f.message.find("position") == std::string::npos)
    std::cerr << " (at position " << f.position << ")";
  std::cerr << "\n";
  if (f.position >= 0 && !f.source.empty() && static_cast<std::size_t>(f.position) <= f.source.size())
    std::cerr << "  " << f.source << "\n  " << std::string(static_cast<std::size_t>(f.position), ' ') << "^\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cfworld: causal models, counterfactual structures, axioms and proofs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cfw_version()));
  std::string report;
  app.add_option("--report", report, "Write a JSON run report");
  app.fallthrough();  // subcommands accept --report too

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "List the solutions of a model in a context, after an intervention");
  s->add_option("--model", solve.model)->required();
  s->add_option("--context", solve.context, "e.g. \"U=0\"")->required();
  s->add_option("--set", solve.set, "e.g. \"X2<-1; X3<-0\"");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Evaluate a formula in a model and context, or at a world");
  auto* em = e->add_option("--model", eval.model);
  auto* es = e->add_option("--structure", eval.structure);
  em->excludes(es);
  e->add_option("--context", eval.context)->needs(em);
  e->add_option("--world", eval.world)->needs(es);
  e->add_option("--formula", eval.formula)->required();

  ClassifyArgs cl;
  auto* c = app.add_subcommand("classify", "Classify a model, a structure or a formula");
  auto* cm = c->add_option("--model", cl.model, "With --formula: also check well-formedness");
  auto* cs = c->add_option("--structure", cl.structure);
  auto* cf = c->add_option("--formula", cl.formula);
  cs->excludes(cm)->excludes(cf);

  TranslateArgs tr;
  auto* t = app.add_subcommand("translate", "Translate between recursive models and structures");
  t->add_option("--to", tr.to)->required()->check(CLI::IsMember({"structure", "model"}));
  t->add_option("--in", tr.in)->required();
  t->add_option("--world", tr.world, "World w for T_{M,w} (default: first world)");
  t->add_flag("--per-world", tr.per_world, "One context per world");
  t->add_option("--out", tr.out);
  t->add_flag("--certify", tr.certify, "Check eval agreement on the depth-1 LPROP corpus");

  AxcheckArgs ax;
  auto* a = app.add_subcommand("axcheck", "Check an axiom schema or formulas for validity over a class");
  auto* as = a->add_option("--schema", ax.schema);
  auto* af = a->add_option("--formula", ax.formulas, "Repeatable");
  as->excludes(af);
  a->add_option("--class", ax.cls)->required();
  a->add_option("--vars", ax.vars);
  a->add_option("--values", ax.values);
  a->add_option("--exo-values", ax.exo_values);
  a->add_option("--mode", ax.mode)->check(CLI::IsMember({"exhaustive", "targeted", "random"}));
  a->add_option("--budget", ax.budget);
  a->add_option("--seed", ax.seed);
  a->add_option("--depth", ax.depth);
  a->add_option("--atoms", ax.atoms);
  a->add_option("--max-worlds", ax.max_worlds);
  a->add_option("--cap", ax.cap);
  a->add_option("--countermodel", ax.countermodel, "Countermodel file (default: derived from --report)");

  std::string script;
  auto* p = app.add_subcommand("prove", "Check a proof script");
  p->add_option("--script", script)->required();

  SuiteArgs suite;
  auto* ps = app.add_subcommand("paper-suite", "Run every golden reproduction and print a claim matrix");
  ps->add_option("--fixtures", suite.fixtures);
  ps->add_option("--seed", suite.seed, "Random-search seed (pinned default 1)");
  ps->add_option("--budget", suite.budget);
  ps->add_flag("--quick", suite.quick, "Skip the slow soundness-matrix cells");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kUsage;
  }

  Run run;
  run.subcommand = app.get_subcommands().front()->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  int code = kUsage;
  try {
    if (*s) code = do_solve(run, solve);
    else if (*e) {
      if (eval.model.empty() == eval.structure.empty())
        throw CLI::ValidationError("eval", "give exactly one of --model or --structure");
      code = do_eval(run, eval);
    } else if (*c) {
      if (cl.model.empty() && cl.structure.empty() && cl.formula.empty())
        throw CLI::ValidationError("classify", "give --model, --structure or --formula");
      code = do_classify(run, cl);
    } else if (*t) code = do_translate(run, tr);
    else if (*a) {
      if (ax.schema.empty() == ax.formulas.empty())
        throw CLI::ValidationError("axcheck", "give exactly one of --schema or --formula");
      code = do_axcheck(run, ax, report);
    } else if (*p) code = do_prove(run, script);
    else if (*ps) code = do_suite(run, suite);
  } catch (const CLI::ParseError& ex) {
    std::cerr << "usage error: " << ex.what() << "\n";
    return kUsage;
  } catch (const ApiFailure& f) {
    print_failure(f);
    code = kUsage;
    run.verdict = "error";
    run.result = {{"status", cfw_status_name(f.status)}, {"message", f.message}};
    if (f.position >= 0) run.result["position"] = f.position;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!report.empty()) {
    json r;
    r["subcommand"] = run.subcommand;
    r["version"] = cfw_version();
    r["inputs"] = run.inputs;
    r["seed"] = run.seed ? json(*run.seed) : json(nullptr);
    r["verdict"] = run.verdict;
    r["exit_code"] = code;
    r["artifacts"] = run.artifacts;
    r["seconds"] = secs;
    r["result"] = run.result;
    try {
      spit(report, r.dump(2) + "\n");
    } catch (const ApiFailure& f) {
      print_failure(f);
      return kUsage;
    }
  }
  return code;
}
