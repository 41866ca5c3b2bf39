#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cfworld/causal_model.hpp"
#include "cfworld/formula.hpp"
#include "cfworld/structure.hpp"

namespace cfw {

enum class Side { Causal, Structure };
enum class CausalClass { Trec, Tun, T };
enum class StructClass { M, MPlus, Ma, MaPlus, Mf, MfPlus, Mrec };
enum class EnumMode { Exhaustive, Targeted, Random };

struct Bounds {
  int formula_depth = 1;           // metavariable formulas for A-schemas
  std::size_t formula_atoms = 2;   // atoms available to those formulas
  std::size_t max_worlds = 3;      // generic (non-full) structure classes
  std::size_t cap = 5'000'000;     // candidates per run
};

struct ClassDescriptor {
  Side side = Side::Structure;
  CausalClass causal = CausalClass::Tun;
  StructClass structure = StructClass::M;
  Signature sig;  // causal side: full signature; structure side: its endogenous part is the vocabulary
  Bounds bounds;

  /// "Trec", "Tun", "T", "M", "M+", "Ma", "Ma+", "Mf", "Mf+", "Mrec".
  static ClassDescriptor named(const std::string& name, Signature sig, Bounds bounds = {});
  std::string name() const;
};

/// n binary endogenous variables X1..Xn and one exogenous U with
/// `exo_values` values.
Signature binary_signature(std::size_t n, std::size_t exo_values = 2);

// ------------------------------------------------------------------ schemas

struct SchemaInfo {
  std::string name;
  std::string text;   // template as printed in reports
  Side side;          // where the schema is meant to be checked
};

const std::vector<SchemaInfo>& schema_library();
const SchemaInfo& schema_info(const std::string& name);  // throws UnknownSchema
// Metavariable template of A1-A7 and GP; nullopt for the other schemas.
std::optional<Formula> schema_template(const std::string& name);

/// Formulas substituted for metavariables of A-schemas.
std::vector<Formula> formula_pool(const Signature& sig, const Bounds& b);

/// Every instance of the schema over the endogenous variables of `sig`, in
/// a fixed order, with side conditions applied. Throws UnknownSchema,
/// BoundsTooLarge.
std::vector<Formula> instantiate(const std::string& schema, const Signature& sig, const Bounds& b = {});

// --------------------------------------------------------------- enumeration

/// Calls fn for each candidate of the class; fn returns false to stop.
/// Returns the number of candidates visited. Throws BoundsTooLarge.
std::size_t for_each_model(const ClassDescriptor& cd, EnumMode mode,
                           const std::function<bool(const CausalModel&)>& fn);
/// `atoms` restricts generic valuations (M, M+) to these atoms; other
/// atoms are false everywhere.
std::size_t for_each_structure(const ClassDescriptor& cd, EnumMode mode,
                               const std::vector<std::pair<std::string, Value>>& atoms,
                               const std::function<bool(const CounterfactualStructure&)>& fn);

/// Exact number of exhaustive candidates, saturating at SIZE_MAX.
std::size_t exhaustive_count(const ClassDescriptor& cd, std::size_t atom_count);

class Sampler {
 public:
  Sampler(ClassDescriptor cd, std::uint64_t seed, std::vector<std::pair<std::string, Value>> atoms = {});
  CausalModel model();
  CounterfactualStructure structure();

 private:
  ClassDescriptor cd_;
  std::mt19937_64 rng_;
  std::vector<std::pair<std::string, Value>> atoms_;
};

// ------------------------------------------------------------------ checking

enum class Verdict { ValidAtBound, Countermodel, NotFound };
const char* verdict_name(Verdict v);

struct Countermodel {
  Formula instance;
  std::size_t candidate = 0;  // index in enumeration or sampling order
  std::optional<CausalModel> model;
  Context context;
  std::optional<CounterfactualStructure> structure;
  std::size_t world = 0;
};

struct CheckResult {
  Verdict verdict = Verdict::ValidAtBound;
  std::size_t instances = 0;
  std::size_t candidates = 0;  // candidates in the class that were evaluated
  std::optional<Countermodel> countermodel;
};

/// Exhaustive (or targeted) search for a candidate falsifying one of the
/// formulas; the first countermodel in enumeration order is returned.
CheckResult check_validity(const std::vector<Formula>& formulas, const ClassDescriptor& cd,
                           EnumMode mode = EnumMode::Exhaustive);
/// Seeded random search; NotFound when `budget` samples pass.
CheckResult find_countermodel(const std::vector<Formula>& formulas, const ClassDescriptor& cd, std::size_t budget,
                              std::uint64_t seed);

/// Whether the formula holds everywhere in the candidate.
std::optional<std::pair<Context, Formula>> falsify_in_model(const CausalModel& t, const std::vector<Formula>& fs);
std::optional<std::pair<std::size_t, Formula>> falsify_in_structure(const CounterfactualStructure& m,
                                                                    const std::vector<Formula>& fs);

}  // namespace cfw
