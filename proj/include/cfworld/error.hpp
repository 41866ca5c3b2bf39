#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace cfw {

// Numeric values are shared with the C API (cfw_status); keep them stable.
enum class Errc : int {
  InvalidInput = 1,
  UnknownVariable = 2,
  DuplicateVariable = 3,
  InvalidSignature = 4,
  MissingTable = 5,
  NonTotalTable = 6,
  ValueOutOfRange = 7,
  NotEndogenous = 8,
  PartialContext = 9,
  SyntaxError = 10,
  UnknownOperator = 11,
  LanguageTooRich = 12,
  IllFormed = 13,
  NotReflexive = 14,
  NotTransitive = 15,
  SelfNotMinimal = 16,
  SelfNotInWw = 17,
  UnknownWorld = 18,
  UnknownAtom = 19,
  TooManyWorlds = 20,
  NotRecursive = 21,
  NotRecursiveStructure = 22,
  BoundsTooLarge = 23,
  UnknownSchema = 24,
  Io = 25,
  Internal = 26,
  BadSubstitution = 27,
  SideConditionViolated = 28,
  RuleMismatch = 29,
  ForwardReference = 30,
  SchemaDisabled = 31,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(what), code_(code), position_(position) {}

  Errc code() const noexcept { return code_; }
  // Byte offset into the parsed text, for SyntaxError / UnknownOperator.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  Errc code_;
  std::optional<std::size_t> position_;
};

}  // namespace cfw
