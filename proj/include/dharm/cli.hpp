#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dharm/graph.hpp"
#include "dharm/io.hpp"

namespace dharm {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;
};

// Every invariant suite on one graph with the data of config (g, nu, tolerances, seed).
std::vector<CheckOutcome> run_checks(const TrivalentGraph& graph, const RunConfig& config);

// Worker cap from DW_THREADS; 1 when unset. Throws ValidationError on a
// value that is not a positive integer.
int worker_count_from_env();

// Subcommands build, surface, subdivide, curvature, check, converge, family.
// Returns 0 on success, 1 on invalid input, 2 on a numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dharm
