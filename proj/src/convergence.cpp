#include "dharm/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dharm/curvature.hpp"
#include "dharm/errors.hpp"
#include "dharm/subdivision.hpp"

namespace dharm {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void take_max(double& acc, double value, bool& seen) {
  if (std::isnan(value)) return;
  acc = seen ? std::max(acc, value) : value;
  seen = true;
}

// Unit normal of the plane through the three neighbors, oriented along N.
std::optional<Vec3> neighbor_plane_normal(const TrivalentGraph& graph, VertexId v, const std::vector<Vec3>& X,
                                          const Vec3& N) {
  const auto out = graph.out_edges(v);
  const Vec3& a = X[graph.head(out[0])];
  const Vec3& b = X[graph.head(out[1])];
  const Vec3& c = X[graph.head(out[2])];
  Vec3 n = (b - a).cross(c - a);
  const double len = n.norm();
  if (!(len > 0.0)) return std::nullopt;
  n /= len;
  return n.dot(N) < 0.0 ? Vec3(-n) : n;
}

}  // namespace

SupErrors error_restriction(const TrivalentGraph& graph, Complex center, double radius, const VertexErrors& errors,
                            double margin) {
  if (!(margin >= 0.0)) throw ValidationError("error restriction margin must be >= 0");
  const double limit = radius * (1.0 + 1e-12) - margin;
  SupErrors out;
  bool sx = false, sn = false, sh = false, sk = false, sp = false;
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    if (std::abs(graph.z(v) - center) > limit) continue;
    ++out.vertices;
    take_max(out.x, errors.x[v], sx);
    take_max(out.n, errors.n[v], sn);
    take_max(out.h, errors.h[v], sh);
    take_max(out.k, errors.k[v], sk);
    take_max(out.x_paper, errors.x_paper[v], sp);
  }
  if (out.vertices == 0)
    throw ValidationError("no vertex within radius " + std::to_string(radius) + " - margin " +
                          std::to_string(margin));
  if (!sx) out.x = nan;
  if (!sn) out.n = nan;
  if (!sh) out.h = nan;
  if (!sk) out.k = nan;
  if (!sp) out.x_paper = nan;
  return out;
}

ConvergenceReport run_pipeline(const PipelineConfig& config, const LevelObserver& observer) {
  config.spec.validate();
  if (config.levels < 0 || config.levels > max_pipeline_level)
    throw ValidationError("levels must lie in [0, " + std::to_string(max_pipeline_level) + "]");
  if (!(config.margin_factor >= 0.0)) throw ValidationError("margin factor must be >= 0");

  ConvergenceReport report;
  report.margin_factor = config.margin_factor;
  report.calibration = calibrate_q(config.nu);
  const ClassicalWeierstrassData reference = enneper_reference(config.g, report.calibration.c);
  double closure_limit = 0.0;

  for (int k = 0; k <= config.levels; ++k) {
    const LatticeSpec spec = refined_spec(config.spec, k);
    const TrivalentGraph graph = build_hex_lattice(spec);
    if (graph.vertex_count() == 0) throw ValidationError("level " + std::to_string(k) + " lattice is empty");
    const HoloData holo = solve_q(graph, config.g, config.nu);
    const EdgeDifferential dF = compute_dF(graph, holo);

    LevelReport row;
    row.level = k;
    row.lambda = spec.edge_length;
    row.vertices = graph.vertex_count();
    row.scale = tolerance_scale(graph, holo);

    // The round-off floor of a face sum does not shrink with lambda, so every
    // level is held to the threshold of the coarsest one.
    if (k == 0) closure_limit = config.closure_tol * row.scale;
    const FaceSet face_set = faces(graph);
    row.closure = closure_residual(graph, face_set, dF).max;
    if (row.closure > closure_limit) {
      report.aborted = true;
      report.abort_reason = "closure residual " + std::to_string(row.closure) + " at level " + std::to_string(k) +
                            " exceeds tolerance " + std::to_string(closure_limit);
      report.rows.push_back(row);
      return report;
    }

    row.base = nearest_vertex(graph, config.basepoint);
    const Complex z_base = graph.z(row.base);
    const CVec3 w0 = weierstrass_integral(reference, reference.z0, z_base);
    const DiscreteSurface surface =
        integrate_surface(graph, holo, dF, row.base, CVec3(reference.base.cast<Complex>() + w0), config.order);
    row.balancing = balancing_residual(surface.X, graph).max;
    row.energy = energy(graph, surface.X);

    const CurvatureField curv = curvature_field(graph, surface.X, surface.N);
    const auto n = graph.vertex_count();
    VertexErrors errors;
    errors.x.resize(n);
    errors.n.assign(n, nan);
    errors.h.assign(n, nan);
    errors.k.assign(n, nan);
    errors.x_paper.resize(n);
    const double nu_real = config.nu.real();
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      const Complex z = graph.z(v);
      errors.x[v] = (surface.X[v] - weierstrass_quadrature(reference, z)).norm();
      errors.x_paper[v] = (surface.X[v] - enneper_paper(z.real(), z.imag(), nu_real)).norm();
      if (!graph.interior(v)) continue;
      if (const auto normal = neighbor_plane_normal(graph, v, surface.X, surface.N[v]))
        errors.n[v] = (*normal - classical_gauss_map(holo.g[v])).norm();
      if (!std::isnan(curv.H[v])) {
        errors.h[v] = std::abs(curv.H[v]);
        errors.k[v] = std::abs(curv.K[v] - classical_gauss_curvature(reference, z));
      }
    }
    row.unrestricted = error_restriction(graph, spec.center, spec.radius, errors, 0.0);
    row.restricted = error_restriction(graph, spec.center, spec.radius, errors, config.margin_factor * row.lambda);

    if (observer) observer(LevelData{k, graph, face_set, holo, surface});
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace dharm
