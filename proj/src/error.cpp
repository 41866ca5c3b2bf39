#include "cfworld/error.hpp"

namespace cfw {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::DuplicateVariable: return "DuplicateVariable";
    case Errc::InvalidSignature: return "InvalidSignature";
    case Errc::MissingTable: return "MissingTable";
    case Errc::NonTotalTable: return "NonTotalTable";
    case Errc::ValueOutOfRange: return "ValueOutOfRange";
    case Errc::NotEndogenous: return "NotEndogenous";
    case Errc::PartialContext: return "PartialContext";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownOperator: return "UnknownOperator";
    case Errc::LanguageTooRich: return "LanguageTooRich";
    case Errc::IllFormed: return "IllFormed";
    case Errc::NotReflexive: return "NotReflexive";
    case Errc::NotTransitive: return "NotTransitive";
    case Errc::SelfNotMinimal: return "SelfNotMinimal";
    case Errc::SelfNotInWw: return "SelfNotInWw";
    case Errc::UnknownWorld: return "UnknownWorld";
    case Errc::UnknownAtom: return "UnknownAtom";
    case Errc::TooManyWorlds: return "TooManyWorlds";
    case Errc::NotRecursive: return "NotRecursive";
    case Errc::NotRecursiveStructure: return "NotRecursiveStructure";
    case Errc::BoundsTooLarge: return "BoundsTooLarge";
    case Errc::UnknownSchema: return "UnknownSchema";
    case Errc::Io: return "Io";
    case Errc::Internal: return "Internal";
    case Errc::BadSubstitution: return "BadSubstitution";
    case Errc::SideConditionViolated: return "SideConditionViolated";
    case Errc::RuleMismatch: return "RuleMismatch";
    case Errc::ForwardReference: return "ForwardReference";
    case Errc::SchemaDisabled: return "SchemaDisabled";
  }
  return "Unknown";
}

}  // namespace cfw
