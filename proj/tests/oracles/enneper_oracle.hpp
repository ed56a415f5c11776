#pragma once

// Closed-form antiderivative of the Weierstrass integrand for g = z, Q = c:
// int_0^z c (1/2 (1 - w^2), i/2 (1 + w^2), w) dw
//   = c (1/2 (z - z^3/3), i/2 (z + z^3/3), z^2/2).

#include <array>
#include <complex>

namespace oracle {

inline std::array<std::complex<double>, 3> enneper_antiderivative(std::complex<double> c, std::complex<double> z) {
  const std::complex<double> i(0, 1), z3 = z * z * z;
  return {c * 0.5 * (z - z3 / 3.0), c * i * 0.5 * (z + z3 / 3.0), c * z * z * 0.5};
}

// Dirichlet integral of Re of the above over the disk |z| <= R:
// |X_u|^2 + |X_v|^2 = |phi|^2 = |c|^2 / 2 (1 + |z|^2)^2, integrated in polar coordinates.
inline double enneper_dirichlet_energy(double c_abs, double R) {
  const double pi = 3.14159265358979323846;
  const double s = 1 + R * R;
  return c_abs * c_abs * pi * (s * s * s - 1) / 6.0;
}

}  // namespace oracle
