#include <cmath>
#include <random>

#include "doctest.h"

#include "dharm/curvature.hpp"
#include "dharm/errors.hpp"
#include "dharm/harmonic.hpp"
#include "dharm/reference.hpp"
#include "dharm/weierstrass.hpp"
#include "oracles/enneper_oracle.hpp"

using namespace dharm;

namespace {

std::vector<Vec3> random_positions(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec3> x(n);
  for (auto& p : x) p = Vec3(u(rng), u(rng), u(rng));
  return x;
}

}  // namespace

TEST_CASE("one free vertex goes to the centroid") {
  const auto g = TrivalentGraph::from_edges({{0, 0}, {1, 0}, {-0.5, 0.8}, {-0.5, -0.8}}, {{0, 1}, {0, 2}, {0, 3}});
  const std::vector<Vec3> p{Vec3(9, 9, 9), Vec3(1, 2, 3), Vec3(-4, 0, 1), Vec3(0, 1, -7)};
  const auto r = solve_balancing(DirichletProblem::with_boundary(g, p));
  CHECK((r.positions[0] - (p[1] + p[2] + p[3]) / 3.0).norm() < 1e-14);
  for (int v = 1; v < 4; ++v) CHECK(r.positions[v] == p[v]);
}

TEST_CASE("constant boundary data") {
  const auto g = build_hex_lattice({1.0, 6.0});
  const Vec3 c(0.5, -2.0, 3.0);
  auto x = random_positions(g.vertex_count(), 1);
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    if (!g.interior(v)) x[v] = c;
  const auto r = solve_balancing(DirichletProblem::with_boundary(g, x));
  for (const auto& p : r.positions) CHECK((p - c).norm() < 1e-12);
}

TEST_CASE("random boundary on about 500 vertices") {
  const auto g = build_hex_lattice({1.0, 13.5});
  CHECK(g.vertex_count() > 400);
  CHECK(g.vertex_count() < 700);
  const auto problem = DirichletProblem::with_boundary(g, random_positions(g.vertex_count(), 2));
  const auto r = solve_balancing(problem);
  CHECK(r.residual <= 1e-10 * r.mean_edge_length);
  CHECK(free_balancing_residual(problem, r.positions) == r.residual);
  CHECK(r.mean_edge_length > 0.0);

  // strict convexity: no perturbation of the free vertices lowers the energy
  const double e0 = energy(g, r.positions);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1e-3);
  for (int t = 0; t < 100; ++t) {
    auto x = r.positions;
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
      if (!problem.fixed[v]) x[v] += Vec3(n(rng), n(rng), n(rng));
    CHECK(energy(g, x) > e0);
  }
}

TEST_CASE("Enneper boundary data and perturbed competitors") {
  const auto g = build_hex_lattice({0.25, std::sqrt(3.0), {0, 0}, 0.0, LatticeAnchor::vertex});
  const auto ref = enneper_reference(HoloFunction::identity(), enneper_q_per_nu);
  std::vector<Vec3> x(g.vertex_count(), Vec3::Zero());
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    if (!g.interior(v)) x[v] = weierstrass_quadrature(ref, g.z(v));
  const auto problem = DirichletProblem::with_boundary(g, x);
  const auto r = solve_balancing(problem);
  CHECK(r.residual <= 1e-10 * r.mean_edge_length);
  const double e0 = energy(g, r.positions);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1e-2);
  for (int t = 0; t < 100; ++t) {
    auto y = r.positions;
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
      if (!problem.fixed[v]) y[v] += Vec3(n(rng), n(rng), n(rng));
    CHECK(energy(g, y) >= e0);
  }
}

TEST_CASE("solution is linear in the boundary data") {
  const auto g = build_hex_lattice({1.0, 5.0});
  const auto x = random_positions(g.vertex_count(), 5);
  const auto a = solve_balancing(DirichletProblem::with_boundary(g, x));
  auto y = x;
  for (auto& p : y) p *= -2.5;
  const auto b = solve_balancing(DirichletProblem::with_boundary(g, y));
  for (std::size_t v = 0; v < x.size(); ++v) CHECK((b.positions[v] + 2.5 * a.positions[v]).norm() < 1e-12);
}

TEST_CASE("solver errors") {
  // K4 has no vertex of degree < 3 and forms its own component
  std::vector<Complex> z{{0, 0}, {1, 0}, {-0.5, 0.8660254037844386}, {-0.5, -0.8660254037844386}, {5, 0}, {6, 0}};
  std::vector<TrivalentGraph::EdgeEnds> e{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}, {4, 5}};
  const auto g = TrivalentGraph::from_edges(z, e);
  const std::vector<Vec3> x(6, Vec3::Zero());
  CHECK_THROWS_AS(solve_balancing(DirichletProblem::with_boundary(g, x)), ValidationError);

  const auto k4 = TrivalentGraph::from_edges({z.begin(), z.begin() + 4}, {e.begin(), e.begin() + 6});
  CHECK_THROWS_AS(solve_balancing(DirichletProblem::with_boundary(k4, std::vector<Vec3>(4, Vec3::Zero()))),
                  ValidationError);
  CHECK_THROWS_AS(solve_balancing(DirichletProblem::with_boundary(k4, std::vector<Vec3>(3, Vec3::Zero()))),
                  ValidationError);
  CHECK_THROWS_AS(solve_balancing(DirichletProblem{}), ValidationError);
}

TEST_CASE("energy sequence") {
  const auto a = build_hex_lattice({1.0, 3.0}), b = build_hex_lattice({0.25, 3.0});
  const std::vector<Vec3> ca(a.vertex_count(), Vec3(1, 1, 1)), cb(b.vertex_count(), Vec3(2, 0, 0));
  for (double e : energy_sequence({{&a, &ca}, {&b, &cb}})) CHECK(e == 0.0);
  const auto x = random_positions(a.vertex_count(), 6);
  const auto s = energy_sequence({{&a, &x}, {&a, &x}, {&a, &x}});
  CHECK(s.size() == 3);
  CHECK(s[0] == s[1]);
  CHECK(s[1] == s[2]);
}

TEST_CASE("Enneper energies approach the Dirichlet energy of the limit") {
  // sum of squared edge vectors over a hex lattice tends to (1/sqrt 3) times the Dirichlet integral
  const double limit = oracle::enneper_dirichlet_energy(enneper_q_per_nu, std::sqrt(3.0)) / std::sqrt(3.0);
  std::vector<double> gap;
  for (int k = 0; k <= 3; ++k) {
    const auto g = build_hex_lattice({std::ldexp(1.0, -2 * k), std::sqrt(3.0), {0, 0}, 0.0, LatticeAnchor::vertex});
    const auto data = solve_q(g, HoloFunction::identity());
    const auto dF = compute_dF(g, data);
    const auto surf = integrate_surface(g, data, dF, nearest_vertex(g, 0.0), CVec3::Zero());
    const std::vector<Level> one{{&g, &surf.X}};
    gap.push_back(std::abs(energy_sequence(one)[0] - limit) / limit);
  }
  for (std::size_t k = 1; k < gap.size(); ++k) CHECK(gap[k] < gap[k - 1]);
  CHECK(gap.back() < 0.02);
}
