#pragma once

#include <string>

#include "nestad/eval.hpp"

namespace nestad {

// Human-readable report: the value line, one "d/d<var> = ..." line per bound
// variable, then one line per nested-derivative record. precision counts
// significant digits.
std::string to_text(const EvalReport& report, int precision = 17);

// Machine form. Identical reports serialize to identical bytes.
std::string to_json(const EvalReport& report);

}  // namespace nestad
