#include "dharm/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "dharm/curvature.hpp"
#include "dharm/errors.hpp"

namespace dharm {

DirichletProblem DirichletProblem::with_boundary(const TrivalentGraph& graph, std::vector<Vec3> positions) {
  DirichletProblem p;
  p.graph = &graph;
  p.positions = std::move(positions);
  p.fixed.resize(graph.vertex_count());
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) p.fixed[v] = graph.degree(v) < 3;
  return p;
}

double free_balancing_residual(const DirichletProblem& problem, const std::vector<Vec3>& X) {
  const auto& g = *problem.graph;
  double worst = 0.0;
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    if (problem.fixed[v]) continue;
    Vec3 sum = Vec3::Zero();
    for (EdgeId e : g.out_edges(v)) sum += X[g.head(e)] - X[v];
    worst = std::max(worst, sum.norm());
  }
  return worst;
}

namespace {

double length_scale(const TrivalentGraph& g, const std::vector<Vec3>& X) {
  double sum = 0.0;
  for (const auto& [a, b] : g.edge_ends()) sum += (X[b] - X[a]).norm();
  if (!g.edge_ends().empty() && sum > 0.0) return sum / static_cast<double>(g.edge_ends().size());
  // Every edge collapsed: fall back to the size of the configuration.
  double r = 0.0;
  for (const auto& x : X) r = std::max(r, x.norm());
  return r > 0.0 ? r : 1.0;
}

}  // namespace

SolveResult solve_balancing(const DirichletProblem& problem, const SolveOptions& options) {
  if (!problem.graph) throw ValidationError("Dirichlet problem has no graph");
  const auto& g = *problem.graph;
  const auto n = static_cast<VertexId>(g.vertex_count());
  if (problem.fixed.size() != g.vertex_count() || problem.positions.size() != g.vertex_count())
    throw ValidationError("Dirichlet problem data must cover every vertex");
  if (std::none_of(problem.fixed.begin(), problem.fixed.end(), [](auto f) { return f != 0; }))
    throw ValidationError("Dirichlet problem has an empty boundary");

  // Every free vertex must reach a fixed one.
  std::vector<std::uint8_t> reached(problem.fixed.begin(), problem.fixed.end());
  std::vector<VertexId> stack;
  for (VertexId v = 0; v < n; ++v)
    if (reached[v]) stack.push_back(v);
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : g.out_edges(v)) {
      const VertexId w = g.head(e);
      if (!reached[w]) {
        reached[w] = 1;
        stack.push_back(w);
      }
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (!reached[v])
      throw ValidationError("free vertex " + std::to_string(v) + " is not connected to the boundary");

  std::vector<int> slot(n, -1);
  int m = 0;
  for (VertexId v = 0; v < n; ++v)
    if (!problem.fixed[v]) slot[v] = m++;

  SolveResult result;
  result.positions = problem.positions;
  if (m == 0) {
    result.mean_edge_length = length_scale(g, result.positions);
    return result;
  }

  // Positive definite system: deg(v) x_v - sum_{free w} x_w = sum_{fixed w} x_w.
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(4 * m));
  Eigen::MatrixX3d rhs = Eigen::MatrixX3d::Zero(m, 3);
  for (VertexId v = 0; v < n; ++v) {
    if (slot[v] < 0) continue;
    entries.emplace_back(slot[v], slot[v], static_cast<double>(g.degree(v)));
    for (EdgeId e : g.out_edges(v)) {
      const VertexId w = g.head(e);
      if (slot[w] >= 0)
        entries.emplace_back(slot[v], slot[w], -1.0);
      else
        rhs.row(slot[v]) += problem.positions[w].transpose();
    }
  }
  Eigen::SparseMatrix<double> L(m, m);
  L.setFromTriplets(entries.begin(), entries.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(L);
  if (solver.info() != Eigen::Success) throw ConvergenceError("Laplacian factorization failed");

  Eigen::MatrixX3d x = solver.solve(rhs);
  auto scatter = [&] {
    for (VertexId v = 0; v < n; ++v)
      if (slot[v] >= 0) result.positions[v] = x.row(slot[v]).transpose();
  };
  scatter();
  result.mean_edge_length = length_scale(g, result.positions);
  result.residual = free_balancing_residual(problem, result.positions);
  // Round-off floor for degenerate data such as constant boundary values.
  double magnitude = 0.0;
  for (const auto& p : problem.positions) magnitude = std::max(magnitude, p.cwiseAbs().maxCoeff());
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * magnitude;
  while (result.residual > std::max(options.tol * result.mean_edge_length, floor)) {
    if (result.iterations >= options.max_iter)
      throw ConvergenceError("balancing residual " + std::to_string(result.residual) + " above tolerance after " +
                             std::to_string(result.iterations) + " refinement sweeps");
    const Eigen::MatrixX3d r = rhs - L * x;
    x += solver.solve(r);
    ++result.iterations;
    scatter();
    result.mean_edge_length = length_scale(g, result.positions);
    result.residual = free_balancing_residual(problem, result.positions);
  }
  return result;
}

std::vector<double> energy_sequence(const std::vector<Level>& levels) {
  std::vector<double> out;
  out.reserve(levels.size());
  for (const auto& level : levels) out.push_back(energy(*level.graph, *level.positions));
  return out;
}

}  // namespace dharm
