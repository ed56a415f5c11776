#include "dharm/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "dharm/errors.hpp"
#include "dharm/weierstrass.hpp"

namespace dharm {

Vec3 enneper_paper(double u, double v, double nu) {
  const double s = std::sqrt(3.0) * nu;
  return Vec3(s * (u * u * u / 3.0 - u * u * v + u), s * (-v * v * v / 3.0 + v * v * u - v), s * (u * u - v * v));
}

CVec3 weierstrass_integrand(const ClassicalWeierstrassData& data, Complex z) {
  const auto g = data.g.try_evaluate(z);
  const auto gz = data.g.try_derivative(z);
  if (!g || !gz) throw SingularDataError("g has a pole on the integration path");
  if (*gz == Complex{}) throw SingularDataError("g_z vanishes on the integration path");
  const Complex f = data.Q(z) / *gz;
  const Complex g2 = *g * *g;
  return CVec3(0.5 * f * (1.0 - g2), 0.5 * imag_unit * f * (1.0 + g2), f * *g);
}

namespace {

// Gauss-Kronrod 7/15 on [-1, 1].
constexpr std::array<double, 8> kronrod_x{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                          0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                          0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                          0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kronrod_w{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                          0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                          0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                          0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes kronrod_x[1], [3], [5], [7].
constexpr std::array<double, 4> gauss_w{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  CVec3 kronrod, gauss;
  double max_integrand;
};

Panel gk15(const ClassicalWeierstrassData& data, Complex from, Complex to) {
  const Complex mid = 0.5 * (from + to);
  const Complex half = 0.5 * (to - from);
  Panel p{CVec3::Zero(), CVec3::Zero(), 0.0};
  for (int i = 0; i < 8; ++i) {
    const int signs = i == 7 ? 1 : 2;
    for (int s = 0; s < signs; ++s) {
      const double x = s == 0 ? kronrod_x[i] : -kronrod_x[i];
      const CVec3 f = weierstrass_integrand(data, mid + x * half);
      p.max_integrand = std::max(p.max_integrand, f.norm());
      p.kronrod += kronrod_w[i] * f;
      if (i % 2 == 1) p.gauss += gauss_w[i / 2] * f;
    }
  }
  p.kronrod *= half;
  p.gauss *= half;
  return p;
}

CVec3 adaptive(const ClassicalWeierstrassData& data, Complex from, Complex to, const Panel& panel, double abs_tol,
               int depth, int max_depth) {
  if ((panel.kronrod - panel.gauss).norm() <= abs_tol) return panel.kronrod;
  if (depth >= max_depth) throw ConvergenceError("Weierstrass quadrature did not converge");
  const Complex mid = 0.5 * (from + to);
  const Panel left = gk15(data, from, mid);
  const Panel right = gk15(data, mid, to);
  return adaptive(data, from, mid, left, 0.5 * abs_tol, depth + 1, max_depth) +
         adaptive(data, mid, to, right, 0.5 * abs_tol, depth + 1, max_depth);
}

}  // namespace

CVec3 weierstrass_integral(const ClassicalWeierstrassData& data, Complex from, Complex to,
                           const QuadratureOptions& options) {
  if (from == to) return CVec3::Zero();
  const Panel whole = gk15(data, from, to);
  const double abs_tol = options.rel_tol * std::abs(to - from) * std::max(whole.max_integrand, 1e-300);
  return adaptive(data, from, to, whole, abs_tol, 0, options.max_depth);
}

Vec3 weierstrass_quadrature(const ClassicalWeierstrassData& data, Complex z, const QuadratureOptions& options) {
  return data.base + weierstrass_integral(data, data.z0, z, options).real();
}

Vec3 weierstrass_quadrature_path(const ClassicalWeierstrassData& data, std::span<const Complex> waypoints,
                                 const QuadratureOptions& options) {
  CVec3 sum = CVec3::Zero();
  Complex at = data.z0;
  for (Complex next : waypoints) {
    sum += weierstrass_integral(data, at, next, options);
    at = next;
  }
  return data.base + sum.real();
}

Vec3 classical_gauss_map(Complex g) { return pseudo_normal(g); }

double classical_gauss_curvature(const ClassicalWeierstrassData& data, Complex z) {
  const Complex g = data.g(z);
  const Complex gz = data.g.derivative(z);
  const double f = std::abs(data.Q(z) / gz);
  const double s = 1.0 + std::norm(g);
  const double k = 4.0 * std::abs(gz) / (f * s * s);
  return -k * k;
}

ClassicalWeierstrassData enneper_reference(const HoloFunction& g, Complex c) {
  ClassicalWeierstrassData data;
  data.g = g;
  data.Q = [g, c](Complex z) {
    const Complex gz = g.derivative(z);
    return c * gz * gz;
  };
  return data;
}

Calibration calibrate_q(Complex nu) {
  Calibration cal;
  if (nu == Complex{}) return cal;

  // Fit at nu = 1; c is C-linear in nu.
  const ClassicalWeierstrassData unit = enneper_reference(HoloFunction::identity(), {1.0, 0.0});
  constexpr std::array<double, 5> grid{-1.0, -0.5, 0.0, 0.5, 1.0};
  Eigen::Matrix<double, 25, 2> design;
  Eigen::Matrix<double, 25, 1> target;
  std::array<CVec3, 25> integral;
  std::array<Vec3, 25> printed;
  int row = 0;
  for (double u : grid) {
    for (double v : grid) {
      integral[row] = weierstrass_integral(unit, {}, {u, v});
      printed[row] = enneper_paper(u, v, 1.0);
      // Re(c w) = Re c Re w - Im c Im w
      design(row, 0) = integral[row][2].real();
      design(row, 1) = -integral[row][2].imag();
      target(row) = printed[row][2];
      ++row;
    }
  }
  const Eigen::Vector2d sol = design.colPivHouseholderQr().solve(target);
  const Complex c_unit(sol[0], sol[1]);
  cal.residual = (design * sol - target).cwiseAbs().maxCoeff() / target.cwiseAbs().maxCoeff();

  double worst = 0.0, size = 0.0;
  for (int i = 0; i < 25; ++i) {
    const Vec3 fitted = (c_unit * integral[i]).real();
    worst = std::max(worst, (fitted - printed[i]).norm());
    size = std::max(size, printed[i].norm());
  }
  cal.printed_formula_residual = worst / size;
  cal.c = nu * c_unit;
  if (!(cal.residual <= 1e-8))
    throw CalibrationError("calibration of Q failed: residual " + std::to_string(cal.residual), cal.c.real(),
                           cal.c.imag(), cal.residual);
  return cal;
}

}  // namespace dharm
