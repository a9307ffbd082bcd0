#pragma once

#include <string>

#include "forge/problems.hpp"
#include "forge/solvers.hpp"

namespace forge {

// Canonical JSON: fixed key order, BigNat as decimal strings, two-space
// indentation, trailing newline. parse(serialize(x)) == x bit-exactly.
std::string serialize_instance(const ProblemInstance& inst);
// errors: SchemaViolation with the offending JSON path
ProblemInstance parse_instance(const std::string& text);

std::string serialize_witness(const Witness& w);
Witness parse_witness(const std::string& text);

std::string serialize_reduction_output(const ReductionOutput& out);

}  // namespace forge
