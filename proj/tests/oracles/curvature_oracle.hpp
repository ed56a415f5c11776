#pragma once

// Independent evaluation of the vertex curvatures with plain arrays:
// I_ab = [<ta,ta> <ta,tb>; <tb,ta> <tb,tb>], II_ab = [<ta,na> <ta,nb>; <tb,na> <tb,nb>]
// with t = X - X0 and n = N - N0, H_ab = trace(I^-1 II), K_ab = det(I^-1 II),
// weights sqrt(det I_ab) over the pairs (1,2), (2,3), (3,1).

#include <array>
#include <cmath>

namespace oracle {

using V3 = std::array<double, 3>;

inline double dot(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline V3 sub(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

struct HK {
  double H, K, area;
};

inline HK vertex_curvature(const V3& x0, const V3& n0, const std::array<V3, 3>& x, const std::array<V3, 3>& n) {
  double h = 0, k = 0, area = 0;
  for (int p = 0; p < 3; ++p) {
    const int a = p, b = (p + 1) % 3;
    const V3 ta = sub(x[a], x0), tb = sub(x[b], x0), na = sub(n[a], n0), nb = sub(n[b], n0);
    const double i11 = dot(ta, ta), i12 = dot(ta, tb), i22 = dot(tb, tb);
    const double s11 = dot(ta, na), s12 = dot(ta, nb), s21 = dot(tb, na), s22 = dot(tb, nb);
    const double det = i11 * i22 - i12 * i12;
    // inverse of I times II
    const double m11 = (i22 * s11 - i12 * s21) / det, m12 = (i22 * s12 - i12 * s22) / det;
    const double m21 = (-i12 * s11 + i11 * s21) / det, m22 = (-i12 * s12 + i11 * s22) / det;
    const double w = std::sqrt(det);
    h += w * (m11 + m22);
    k += w * (m11 * m22 - m12 * m21);
    area += w;
  }
  return {h / area, k / area, area};
}

// Central finite differences of a parametrized surface; H = (E N - 2 F M + G L) / (2 (E G - F^2)),
// K = (L N - M^2) / (E G - F^2).
template <class Surface>
HK finite_difference_curvature(const Surface& X, double u, double v, double h) {
  auto at = [&](double du, double dv) { return X(u + du, v + dv); };
  const V3 c = at(0, 0), pu = at(h, 0), mu = at(-h, 0), pv = at(0, h), mv = at(0, -h);
  const V3 pp = at(h, h), pm = at(h, -h), mp = at(-h, h), mm = at(-h, -h);
  V3 xu, xv, xuu, xvv, xuv;
  for (int i = 0; i < 3; ++i) {
    xu[i] = (pu[i] - mu[i]) / (2 * h);
    xv[i] = (pv[i] - mv[i]) / (2 * h);
    xuu[i] = (pu[i] - 2 * c[i] + mu[i]) / (h * h);
    xvv[i] = (pv[i] - 2 * c[i] + mv[i]) / (h * h);
    xuv[i] = (pp[i] - pm[i] - mp[i] + mm[i]) / (4 * h * h);
  }
  V3 nrm{xu[1] * xv[2] - xu[2] * xv[1], xu[2] * xv[0] - xu[0] * xv[2], xu[0] * xv[1] - xu[1] * xv[0]};
  const double len = std::sqrt(dot(nrm, nrm));
  for (double& q : nrm) q /= len;
  const double E = dot(xu, xu), F = dot(xu, xv), G = dot(xv, xv);
  const double L = dot(xuu, nrm), M = dot(xuv, nrm), N = dot(xvv, nrm);
  const double g = E * G - F * F;
  return {(E * N - 2 * F * M + G * L) / (2 * g), (L * N - M * M) / g, 0.0};
}

}  // namespace oracle
