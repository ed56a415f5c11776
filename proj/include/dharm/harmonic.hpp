#pragma once

#include <optional>
#include <vector>

#include "dharm/graph.hpp"

namespace dharm {

// Balancing problem with Dirichlet data: vertices flagged fixed keep their
// position, the rest must sit at the centroid of their neighbors.
struct DirichletProblem {
  const TrivalentGraph* graph = nullptr;
  std::vector<std::uint8_t> fixed;  // per vertex
  std::vector<Vec3> positions;      // fixed entries are the boundary data; free entries the initial guess

  // Fixed set = vertices of degree < 3.
  static DirichletProblem with_boundary(const TrivalentGraph& graph, std::vector<Vec3> positions);
};

struct SolveOptions {
  double tol = 1e-10;  // residual bound relative to the mean edge length
  int max_iter = 8;    // iterative refinement sweeps after the direct solve
};

struct SolveResult {
  std::vector<Vec3> positions;
  double residual = 0.0;  // max over free vertices of |sum (X_w - X_v)|
  double mean_edge_length = 0.0;
  int iterations = 0;
};

// Solves the unweighted graph Laplacian system per coordinate by sparse
// Cholesky followed by iterative refinement. Throws ValidationError when a
// free component touches no fixed vertex and ConvergenceError when the
// residual bound is not met within max_iter sweeps.
SolveResult solve_balancing(const DirichletProblem& problem, const SolveOptions& options = {});

// |sum_{w ~ v} (X_w - X_v)| maximized over the free vertices.
double free_balancing_residual(const DirichletProblem& problem, const std::vector<Vec3>& X);

struct Level {
  const TrivalentGraph* graph;
  const std::vector<Vec3>* positions;
};

std::vector<double> energy_sequence(const std::vector<Level>& levels);

}  // namespace dharm
