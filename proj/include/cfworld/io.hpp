#pragma once

#include <string>
#include <string_view>

#include "cfworld/causal_model.hpp"
#include "cfworld/structure.hpp"

namespace cfw {

/// Model file: {"exogenous": {name: [values]}, "endogenous": {...},
/// "equations": {X: {"inputs": [...], "table": {"v1,v2": out}}}}.
/// An optional "pinned": [names] marks equations fixed by intervention.
CausalModel model_from_json(std::string_view text);
std::string model_to_json(const CausalModel& t);

/// Structure file: {"variables": {...}, "worlds": {id: {var: value}},
/// "order": {w: [[a, b], ...]}}. A world may instead list its true atoms as
/// {"true_atoms": ["X=1", ...]}. An entry "ranking": {w: [a, [b, c], d]}
/// may replace "order" for a world; nested lists are ties.
CounterfactualStructure structure_from_json(std::string_view text);
std::string structure_to_json(const CounterfactualStructure& m);

/// "U=0, V=1" (separators ',' or ';'); every exogenous variable once.
Context parse_context(const Signature& sig, std::string_view text);
std::string format_context(const Signature& sig, const Context& u);
/// "X1<-1; X2<-0" (separators ',' or ';').
Intervention parse_intervention(const Signature& sig, std::string_view text);

std::string read_text_file(const std::string& path);  // throws Io
void write_text_file(const std::string& path, std::string_view text);

/// FNV-1a 64-bit digest, hex encoded.
std::string content_hash(std::string_view bytes);

}  // namespace cfw
