#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include "cfworld/cfworld.h"
#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json take(char* p) {
  REQUIRE(p != nullptr);
  json j = json::parse(p);
  cfw_string_free(p);
  return j;
}

}  // namespace

TEST_CASE("model handle: solve, eval, classify") {
  cfw_model* m = nullptr;
  REQUIRE(cfw_model_from_json(read("fixtures/tstar.json").c_str(), &m) == CFW_OK);
  char* out = nullptr;
  REQUIRE(cfw_model_solve(m, "U=0", "X2<-1", &out) == CFW_OK);
  auto j = take(out);
  CHECK(j["text"] == json::array({"(0,1,1)"}));
  CHECK(j["solutions"] == json::parse("[[0,1,1]]"));

  int truth = -1;
  REQUIRE(cfw_model_eval(m, "U=0", "[X1<-1](X2=1 & X3=0) & [X2<-1](X3=1 & X1=0) & [X3<-1](X1=1 & X2=0)",
                         &truth) == CFW_OK);
  CHECK(truth == 1);

  REQUIRE(cfw_model_classify(m, &out) == CFW_OK);
  j = take(out);
  CHECK(j["recursive"] == false);
  CHECK(j["unique"] == true);

  CHECK(cfw_model_to_structure(m, 0, &out) == CFW_NOT_RECURSIVE);
  cfw_model_free(m);
}

TEST_CASE("errors carry status, message and position") {
  int truth = 0;
  cfw_model* m = nullptr;
  REQUIRE(cfw_model_from_json(read("fixtures/tstar.json").c_str(), &m) == CFW_OK);
  CHECK(cfw_model_eval(m, "U=0", "X1=1 &", &truth) == CFW_SYNTAX_ERROR);
  CHECK(std::strlen(cfw_last_error()) > 0);
  CHECK(cfw_last_error_position() == 6);
  CHECK(std::string(cfw_status_name(CFW_SYNTAX_ERROR)) == "SyntaxError");

  CHECK(cfw_model_eval(m, "U=0", "X1=1", nullptr) == CFW_INVALID_INPUT);
  CHECK(cfw_last_error_position() == -1);
  CHECK(cfw_model_eval(m, "U=0", "X1=1", &truth) == CFW_OK);
  CHECK(std::string(cfw_last_error()).empty());
  cfw_model_free(m);

  CHECK(cfw_model_from_json("{", &m) != CFW_OK);
  CHECK(cfw_axcheck("{\"schema\": \"C5\", \"class\": \"Mrec\", \"mode\": \"random\"}", nullptr) == CFW_INVALID_INPUT);
  char* out = nullptr;
  CHECK(cfw_axcheck("{\"schema\": \"C5\", \"class\": \"Mrec\", \"mode\": \"random\"}", &out) == CFW_INVALID_INPUT);
  CHECK(out == nullptr);
  cfw_model_free(nullptr);
  cfw_structure_free(nullptr);
}

TEST_CASE("last error is per thread") {
  int truth = 0;
  cfw_model* m = nullptr;
  REQUIRE(cfw_model_from_json(read("fixtures/tstar.json").c_str(), &m) == CFW_OK);
  CHECK(cfw_model_eval(m, "U=0", "(", &truth) == CFW_SYNTAX_ERROR);
  std::string other;
  std::thread t([&] { other = cfw_last_error(); });
  t.join();
  CHECK(other.empty());
  CHECK(std::strlen(cfw_last_error()) > 0);
  cfw_model_free(m);
}

TEST_CASE("structure handle and translations") {
  cfw_structure* s = nullptr;
  REQUIRE(cfw_structure_load(read("fixtures/example-c5.json").c_str(), &s) == CFW_OK);
  int truth = -1;
  REQUIRE(cfw_structure_eval(s, "000", "[X1<-1](X2=1)", &truth) == CFW_OK);
  CHECK(truth == 0);
  CHECK(cfw_structure_eval(s, "nowhere", "X1=0", &truth) == CFW_UNKNOWN_WORLD);
  char* out = nullptr;
  REQUIRE(cfw_structure_classify(s, &out) == CFW_OK);
  auto j = take(out);
  CHECK(j["acceptable"] == true);
  CHECK(j["recursive"] == false);
  CHECK(cfw_structure_to_model(s, "000", 0, 0, &out) == CFW_NOT_RECURSIVE_STRUCTURE);
  cfw_structure_free(s);

  cfw_model* m = nullptr;
  REQUIRE(cfw_model_from_json(read("fixtures/forestfire.json").c_str(), &m) == CFW_OK);
  REQUIRE(cfw_model_to_structure(m, 1, &out) == CFW_OK);
  j = take(out);
  CHECK(j["certificate"]["ok"] == true);
  const std::string text = j["structure"].dump();
  REQUIRE(cfw_structure_load(text.c_str(), &s) == CFW_OK);
  const std::string w = j["context_worlds"].begin().value();
  REQUIRE(cfw_structure_to_model(s, w.c_str(), 0, 1, &out) == CFW_OK);
  j = take(out);
  CHECK(j["certificate"]["ok"] == true);
  CHECK(j["model"].contains("equations"));
  cfw_structure_free(s);
  cfw_model_free(m);
}

TEST_CASE("axcheck, proofs and formula classification") {
  char* out = nullptr;
  REQUIRE(cfw_axcheck(R"({"schema": "C5", "class": "Mf+", "vars": 3, "mode": "targeted"})", &out) == CFW_OK);
  auto j = take(out);
  CHECK(j["verdict"] == "Countermodel");
  CHECK(j["countermodel"].contains("structure"));

  REQUIRE(cfw_axcheck(R"({"formula": ["X1=0 | X1=1"], "class": "Tun"})", &out) == CFW_OK);
  j = take(out);
  CHECK(j["verdict"] == "Valid-at-bound");

  REQUIRE(cfw_proof_check(read("fixtures/lemma-a1.json").c_str(), &out) == CFW_OK);
  j = take(out);
  CHECK(j["verified"] == true);

  auto broken = json::parse(read("fixtures/neg-phi.json"));
  auto& axioms = broken["base"]["axioms"];
  for (auto it = axioms.begin(); it != axioms.end(); ++it)
    if (*it == "A4") {
      axioms.erase(it);
      break;
    }
  REQUIRE(cfw_proof_check(broken.dump().c_str(), &out) == CFW_OK);
  j = take(out);
  CHECK(j["verified"] == false);
  CHECK(j["failure"]["line"] == 5);
  CHECK(j["failure"]["code"] == "SchemaDisabled");

  REQUIRE(cfw_formula_classify("X1=1 ~> X2=0", nullptr, &out) == CFW_OK);
  j = take(out);
  CHECK(j["class"] == "LC1");
  CHECK_FALSE(j.contains("well_formed"));
}

TEST_CASE("content hash is stable") {
  char* out = nullptr;
  REQUIRE(cfw_content_hash("", 0, &out) == CFW_OK);
  CHECK(std::string(out) == "cbf29ce484222325");
  cfw_string_free(out);
  REQUIRE(cfw_content_hash("a", 1, &out) == CFW_OK);
  CHECK(std::string(out) == "af63dc4c8601ec8c");
  cfw_string_free(out);
}
