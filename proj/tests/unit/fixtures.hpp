#pragma once

#include <string>

#include "cfworld/io.hpp"

inline std::string fixture_path(const std::string& name) { return "fixtures/" + name; }

inline cfw::CausalModel load_model(const std::string& name) {
  return cfw::model_from_json(cfw::read_text_file(fixture_path(name)));
}

inline cfw::CounterfactualStructure load_structure(const std::string& name) {
  return cfw::structure_from_json(cfw::read_text_file(fixture_path(name)));
}

inline constexpr const char* kPhiStar =
    "[X1<-1](X2=1 & X3=0) & [X2<-1](X3=1 & X1=0) & [X3<-1](X1=1 & X2=0)";
