#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "dharm/graph.hpp"

namespace dharm {

// Forms of the triangle (X_0, X_a, X_b) at one vertex.
struct PairForms {
  int a = 0, b = 0;  // neighbor slots in rotation order
  Eigen::Matrix2d first;   // I_ab
  Eigen::Matrix2d second;  // II_ab
  double sqrt_det_first = 0.0;
  double H = 0.0;  // trace(I^-1 II)
  double K = 0.0;  // det(I^-1 II)
};

struct VertexForms {
  std::array<PairForms, 3> pairs;  // {1,2}, {2,3}, {3,1}
  double area = 0.0;               // sum of sqrt(det I_ab)
  double H = 0.0;
  double K = 0.0;
};

struct CurvatureOptions {
  // Replace II_ab by its symmetric part before taking trace and determinant.
  bool symmetrize_second = false;
};

// Forms at an interior vertex from positions X and unit field N. Throws
// DegenerateStarError naming the pair when some I_ab is singular.
VertexForms forms_at(const TrivalentGraph& graph, VertexId v, const std::vector<Vec3>& X,
                     const std::vector<Vec3>& N, const CurvatureOptions& options = {});

// Same, for a bare star: X0, N0 and the three neighbors in rotation order.
VertexForms forms_at(const Vec3& X0, const Vec3& N0, const std::array<Vec3, 3>& Xn, const std::array<Vec3, 3>& Nn,
                     const CurvatureOptions& options = {});

struct MinimalityResult {
  bool minimal = false;
  double residual = 0.0;  // max pairwise difference of the three inner products
};

// <X_a - X_0, X_b - X_0> equal over the three pairs, to 1e-10 max |X_a - X_0|^2.
MinimalityResult minimality_check(const Vec3& X0, const std::array<Vec3, 3>& Xn);
MinimalityResult minimality_check(const TrivalentGraph& graph, VertexId v, const std::vector<Vec3>& X);

// 1/2 sum over ordered adjacent pairs of |X_u - X_v|^2.
double energy(const TrivalentGraph& graph, const std::vector<Vec3>& X);

struct CurvatureField {
  std::vector<double> H;  // NaN where undefined (boundary or degenerate star)
  std::vector<double> K;
  std::size_t degenerate = 0;
};

CurvatureField curvature_field(const TrivalentGraph& graph, const std::vector<Vec3>& X, const std::vector<Vec3>& N,
                               const CurvatureOptions& options = {});

}  // namespace dharm
