#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dharm/faces.hpp"
#include "dharm/graph.hpp"
#include "dharm/holo.hpp"
#include "dharm/reference.hpp"
#include "dharm/weierstrass.hpp"

namespace dharm {

// Per-vertex errors of one level against the smooth reference. NaN marks
// vertices where a quantity is undefined (no full star, degenerate forms).
struct VertexErrors {
  std::vector<double> x;        // |X_k - X_cl|
  std::vector<double> n;        // |N_k - N_cl|, N_k the normal of the plane through the three neighbors
  std::vector<double> h;        // |H_k - 0|
  std::vector<double> k;        // |K_k - K_cl|
  std::vector<double> x_paper;  // |X_k - printed limit formula|
};

struct SupErrors {
  double x = 0.0, n = 0.0, h = 0.0, k = 0.0, x_paper = 0.0;
  std::size_t vertices = 0;  // vertices in the restricted set
};

// Sup norms over vertices with |z - center| <= radius - margin, ignoring NaN
// entries. A quantity with no defined entry in the set is reported as NaN.
// Throws ValidationError when margin < 0 or the restricted set is empty.
SupErrors error_restriction(const TrivalentGraph& graph, Complex center, double radius, const VertexErrors& errors,
                            double margin);

struct LevelReport {
  int level = 0;
  double lambda = 0.0;
  std::size_t vertices = 0;
  SupErrors restricted;    // margin = margin_factor * lambda
  SupErrors unrestricted;  // margin = 0
  double closure = 0.0;
  double balancing = 0.0;
  double energy = 0.0;
  double scale = 0.0;  // tolerance_scale of the level
  VertexId base = no_vertex;
};

struct ConvergenceReport {
  std::vector<LevelReport> rows;
  Calibration calibration;
  double margin_factor = 0.0;
  bool aborted = false;
  std::string abort_reason;
};

struct PipelineConfig {
  LatticeSpec spec;
  HoloFunction g = HoloFunction::identity();
  Complex nu{1.0, 0.0};
  int levels = 5;  // last level, inclusive
  double margin_factor = 0.5;
  Complex basepoint{0.0, 0.0};
  double closure_tol = 1e-12;  // relative to tolerance_scale
  TreeOrder order = TreeOrder::breadth_first;
};

struct LevelData {
  int level;
  const TrivalentGraph& graph;
  const FaceSet& faces;
  const HoloData& holo;
  const DiscreteSurface& surface;
};

using LevelObserver = std::function<void(const LevelData&)>;

inline constexpr int max_pipeline_level = 8;

// For each level k: lattice at 4^-k lambda, q from the same g and nu, the
// Weierstrass surface aligned so that X(base) matches the reference at the
// vertex nearest the basepoint, curvature, and errors against the quadrature
// reference with Q = c g_z^2. Stops early (aborted = true) when a closure
// residual exceeds closure_tol times the tolerance scale of level 0.
ConvergenceReport run_pipeline(const PipelineConfig& config, const LevelObserver& observer = {});

}  // namespace dharm
