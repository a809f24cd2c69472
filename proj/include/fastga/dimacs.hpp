#pragma once

/// @file dimacs.hpp
/// DIMACS CNF text serialization of planted MAX-3SAT instances.

#include <iosfwd>
#include <string>

#include "fastga/problems.hpp"

namespace fastga {

/// Writes `p cnf n m` followed by one 0-terminated clause per line with
/// 1-based signed literals.
void write_dimacs(std::ostream& out, const SatInstance& inst);
std::string to_dimacs(const SatInstance& inst);

/// Reads a DIMACS CNF formula. Comment lines (`c ...`) are skipped.
///
/// Throws std::runtime_error on malformed input and std::invalid_argument if
/// a clause does not have exactly three distinct variables or is not
/// satisfied by the all-ones assignment.
SatInstance read_dimacs(std::istream& in);
SatInstance parse_dimacs(const std::string& text);

}  // namespace fastga
