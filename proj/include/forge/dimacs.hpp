#pragma once

#include <string>
#include <vector>

#include "forge/problems.hpp"

namespace forge {

struct DimacsResult {
    CnfFormula formula;
    std::vector<std::string> warnings;  // header/body mismatches (body wins)
};

// Standard DIMACS CNF: "p cnf N M" header, 0-terminated clauses, 'c'
// comment lines. errors: MalformedHeader, LiteralOutOfRange, EmptyClause
DimacsResult parse_dimacs(const std::string& text);

std::string to_dimacs(const CnfFormula& f);

}  // namespace forge
