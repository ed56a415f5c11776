#pragma once

#include <functional>
#include <span>

#include "dharm/holo.hpp"

namespace dharm {

// Enneper limit exactly as printed for the trivalent lattice experiment:
// sqrt(3) nu (u^3/3 - u^2 v + u, -v^3/3 + v^2 u - v, u^2 - v^2).
Vec3 enneper_paper(double u, double v, double nu);

// Smooth Weierstrass data: X = base + Re int_{z0}^{z} (Q / g_z) (1/2 (1 - g^2), i/2 (1 + g^2), g) dz.
struct ClassicalWeierstrassData {
  HoloFunction g;
  std::function<Complex(Complex)> Q;
  Complex z0{};
  Vec3 base = Vec3::Zero();
};

struct QuadratureOptions {
  double rel_tol = 1e-12;  // relative to |to - from| * max |integrand|
  int max_depth = 40;
};

// The integrand (Q / g_z)(1/2 (1 - g^2), i/2 (1 + g^2), g) at z.
CVec3 weierstrass_integrand(const ClassicalWeierstrassData& data, Complex z);

// Complex integral along the straight segment, adaptive Gauss-Kronrod 7/15.
// Throws SingularDataError when g_z vanishes on the path and
// ConvergenceError when the subdivision depth is exhausted.
CVec3 weierstrass_integral(const ClassicalWeierstrassData& data, Complex from, Complex to,
                           const QuadratureOptions& options = {});

// base + Re of the integral along the straight path z0 -> z.
Vec3 weierstrass_quadrature(const ClassicalWeierstrassData& data, Complex z, const QuadratureOptions& options = {});

// Same along a polyline starting at z0.
Vec3 weierstrass_quadrature_path(const ClassicalWeierstrassData& data, std::span<const Complex> waypoints,
                                 const QuadratureOptions& options = {});

// Same map as pseudo_normal.
Vec3 classical_gauss_map(Complex g);

// -(4 |g_z| / (|f| (1 + |g|^2)^2))^2 with f = Q / g_z.
double classical_gauss_curvature(const ClassicalWeierstrassData& data, Complex z);

struct Calibration {
  Complex c;                       // Q = c g_z^2
  double residual = 0.0;           // relative misfit of the fitted component
  double printed_formula_residual = 0.0;  // relative misfit of all three printed components
};

// Fits the constant c of Q = c (with g = z) on the 5x5 grid u, v in
// {-1, -1/2, 0, 1/2, 1} so that the quadrature surface matches the printed
// third coordinate sqrt(3) nu (u^2 - v^2). The printed first two coordinates
// are not harmonic, so no c reproduces them; their misfit is reported in
// printed_formula_residual. Throws CalibrationError when residual > 1e-8.
Calibration calibrate_q(Complex nu);

// calibrate_q(1).c, recorded from the fit (residual below 1e-15); equals 2 sqrt(3).
inline constexpr double enneper_q_per_nu = 3.4641016151377544;

// Reference data for the lattice experiment: g, Q = c g_z^2, z0 = 0, base 0.
ClassicalWeierstrassData enneper_reference(const HoloFunction& g, Complex c);

}  // namespace dharm
