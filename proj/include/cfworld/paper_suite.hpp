#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cfworld/axiom_lab.hpp"

namespace cfw {

struct ClaimResult {
  std::string id;
  std::string claim;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  std::string fixtures_dir = "fixtures";
  std::uint64_t seed = 1;
  std::size_t random_budget = 20000;  // random structures for the refutation search
  bool full_matrix = true;            // include the slow soundness cells
};

/// Every golden reproduction, keyed by claim id; never throws (errors
/// become failing rows).
std::vector<ClaimResult> run_paper_suite(const SuiteOptions& opts);

// ---- pieces shared with the acceptance harness

struct MatrixCell {
  std::string schema;
  std::string cls;
  Verdict expected = Verdict::ValidAtBound;
  CheckResult result;
  double seconds = 0;
  bool pass() const { return result.verdict == expected; }
};

/// The soundness table at the default bound: two binary endogenous
/// variables and a binary exogenous one.
std::vector<MatrixCell> soundness_matrix(bool include_slow = true);

struct TranslationCheck {
  bool ok = true;
  std::size_t items = 0;   // models or structures
  std::size_t checked = 0; // formula evaluations compared
  std::string detail;      // first disagreement
};

/// M_T against T for every recursive model over `sig`, depth-`depth` corpus.
TranslationCheck check_model_to_structure(const Signature& sig, int depth);
/// T_{M,w} against M at w for every recursive full total structure over the
/// endogenous part of `sig`, at every context of `sig`, plus context
/// independence of T_{M,w}.
TranslationCheck check_structure_to_model(const Signature& sig, int depth);

}  // namespace cfw
