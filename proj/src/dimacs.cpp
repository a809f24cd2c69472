#include "fastga/dimacs.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fastga {

void write_dimacs(std::ostream& out, const SatInstance& inst) {
  out << "p cnf " << inst.num_vars() << ' ' << inst.num_clauses() << '\n';
  for (const Clause& cl : inst.clauses()) {
    for (int k = 0; k < 3; ++k) {
      const long long lit = static_cast<long long>(cl.vars[k]) + 1;
      out << (cl.positive[k] ? lit : -lit) << ' ';
    }
    out << "0\n";
  }
}

std::string to_dimacs(const SatInstance& inst) {
  std::ostringstream os;
  write_dimacs(os, inst);
  return os.str();
}

SatInstance read_dimacs(std::istream& in) {
  long long n = -1;
  long long m = -1;
  std::string token;

  // Header, skipping comments.
  while (in >> token) {
    if (token == "c") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (token != "p") throw std::runtime_error("DIMACS: expected 'p cnf' header, got '" + token + "'");
    std::string fmt;
    if (!(in >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0) {
      throw std::runtime_error("DIMACS: malformed 'p cnf' header");
    }
    break;
  }
  if (n < 0) throw std::runtime_error("DIMACS: missing 'p cnf' header");

  std::vector<Clause> clauses;
  clauses.reserve(static_cast<std::size_t>(m));
  std::vector<long long> lits;
  while (in >> token) {
    if (token == "c") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    long long lit = 0;
    try {
      std::size_t used = 0;
      lit = std::stoll(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw std::runtime_error("DIMACS: unexpected token '" + token + "'");
    }
    if (lit != 0) {
      if (lit > n || -lit > n) throw std::runtime_error("DIMACS: literal out of range");
      lits.push_back(lit);
      continue;
    }
    if (lits.size() != 3) {
      throw std::invalid_argument("DIMACS: clause " + std::to_string(clauses.size() + 1) +
                                  " does not have exactly three literals");
    }
    Clause cl;
    for (int k = 0; k < 3; ++k) {
      cl.positive[k] = lits[k] > 0;
      cl.vars[k] = static_cast<BitIndex>((lits[k] > 0 ? lits[k] : -lits[k]) - 1);
    }
    clauses.push_back(cl);
    lits.clear();
  }
  if (!lits.empty()) throw std::runtime_error("DIMACS: last clause is not 0-terminated");
  if (static_cast<long long>(clauses.size()) != m) {
    throw std::runtime_error("DIMACS: header announces " + std::to_string(m) + " clauses, found " +
                             std::to_string(clauses.size()));
  }
  return SatInstance(static_cast<std::size_t>(n), std::move(clauses));
}

SatInstance parse_dimacs(const std::string& text) {
  std::istringstream is(text);
  return read_dimacs(is);
}

}  // namespace fastga
