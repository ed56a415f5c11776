#include "dharm/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "dharm/errors.hpp"

namespace dharm {

VertexForms forms_at(const Vec3& X0, const Vec3& N0, const std::array<Vec3, 3>& Xn, const std::array<Vec3, 3>& Nn,
                     const CurvatureOptions& options) {
  static constexpr std::array<std::array<int, 2>, 3> pair_slots{{{0, 1}, {1, 2}, {2, 0}}};
  VertexForms out;
  double h_sum = 0.0, k_sum = 0.0;
  for (int p = 0; p < 3; ++p) {
    const auto [a, b] = pair_slots[p];
    const Vec3 ta = Xn[a] - X0;
    const Vec3 tb = Xn[b] - X0;
    const Vec3 na = Nn[a] - N0;
    const Vec3 nb = Nn[b] - N0;

    PairForms& f = out.pairs[p];
    f.a = a;
    f.b = b;
    f.first << ta.dot(ta), ta.dot(tb), tb.dot(ta), tb.dot(tb);
    f.second << ta.dot(na), ta.dot(nb), tb.dot(na), tb.dot(nb);
    if (options.symmetrize_second) f.second = 0.5 * (f.second + f.second.transpose()).eval();

    const double det = f.first.determinant();
    const double scale = f.first(0, 0) * f.first(1, 1);
    if (!(det > 1e-14 * scale) || !(scale > 0.0))
      throw DegenerateStarError("I_ab is singular for neighbor pair {" + std::to_string(a + 1) + "," +
                                std::to_string(b + 1) + "}");
    const Eigen::Matrix2d shape = f.first.inverse() * f.second;
    f.sqrt_det_first = std::sqrt(det);
    f.H = shape.trace();
    f.K = shape.determinant();
    out.area += f.sqrt_det_first;
    h_sum += f.sqrt_det_first * f.H;
    k_sum += f.sqrt_det_first * f.K;
  }
  out.H = h_sum / out.area;
  out.K = k_sum / out.area;
  return out;
}

VertexForms forms_at(const TrivalentGraph& graph, VertexId v, const std::vector<Vec3>& X,
                     const std::vector<Vec3>& N, const CurvatureOptions& options) {
  if (!graph.interior(v)) throw ValidationError("vertex " + std::to_string(v) + " is not interior");
  const auto out = graph.out_edges(v);
  std::array<Vec3, 3> xn, nn;
  for (int a = 0; a < 3; ++a) {
    xn[a] = X[graph.head(out[a])];
    nn[a] = N[graph.head(out[a])];
  }
  try {
    return forms_at(X[v], N[v], xn, nn, options);
  } catch (const DegenerateStarError& err) {
    throw DegenerateStarError("vertex " + std::to_string(v) + ": " + err.what());
  }
}

MinimalityResult minimality_check(const Vec3& X0, const std::array<Vec3, 3>& Xn) {
  const Vec3 t1 = Xn[0] - X0, t2 = Xn[1] - X0, t3 = Xn[2] - X0;
  const double p12 = t1.dot(t2), p23 = t2.dot(t3), p31 = t3.dot(t1);
  MinimalityResult r;
  r.residual = std::max({std::abs(p12 - p23), std::abs(p23 - p31), std::abs(p31 - p12)});
  const double len2 = std::max({t1.squaredNorm(), t2.squaredNorm(), t3.squaredNorm()});
  r.minimal = r.residual <= 1e-10 * len2;
  return r;
}

MinimalityResult minimality_check(const TrivalentGraph& graph, VertexId v, const std::vector<Vec3>& X) {
  if (!graph.interior(v)) throw ValidationError("vertex " + std::to_string(v) + " is not interior");
  const auto out = graph.out_edges(v);
  return minimality_check(X[v], {X[graph.head(out[0])], X[graph.head(out[1])], X[graph.head(out[2])]});
}

double energy(const TrivalentGraph& graph, const std::vector<Vec3>& X) {
  double sum = 0.0;
  for (const auto& [a, b] : graph.edge_ends()) sum += (X[b] - X[a]).squaredNorm();
  return sum;
}

CurvatureField curvature_field(const TrivalentGraph& graph, const std::vector<Vec3>& X, const std::vector<Vec3>& N,
                               const CurvatureOptions& options) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  CurvatureField field;
  field.H.assign(graph.vertex_count(), nan);
  field.K.assign(graph.vertex_count(), nan);
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    if (!graph.interior(v)) continue;
    try {
      const auto f = forms_at(graph, v, X, N, options);
      field.H[v] = f.H;
      field.K[v] = f.K;
    } catch (const DegenerateStarError&) {
      ++field.degenerate;
    }
  }
  return field;
}

}  // namespace dharm
