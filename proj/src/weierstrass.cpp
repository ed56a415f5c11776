#include "dharm/weierstrass.hpp"

#include <algorithm>
#include <cmath>

#include "dharm/errors.hpp"

namespace dharm {

CVec3 weierstrass_triple(Complex ga, Complex gb) {
  const Complex p = ga * gb;
  return CVec3(1.0 - p, imag_unit * (1.0 + p), ga + gb);
}

CVec3 edge_dF(Complex ga, Complex gb, Complex q) {
  const Complex delta = gb - ga;
  if (delta == Complex{}) throw SingularDataError("dg = 0: dF is singular");
  return (imag_unit * q / delta) * weierstrass_triple(ga, gb);
}

Vec3 pseudo_normal(Complex g) {
  const double n2 = std::norm(g);
  return Vec3(2.0 * g.real(), 2.0 * g.imag(), n2 - 1.0) / (1.0 + n2);
}

EdgeDifferential compute_dF(const TrivalentGraph& graph, const HoloData& data) {
  EdgeDifferential out;
  out.canonical.resize(graph.edge_count());
  for (std::size_t k = 0; k < graph.edge_count(); ++k) {
    const auto e = static_cast<EdgeId>(2 * k);
    const Complex ga = data.g[graph.tail(e)];
    const Complex gb = data.g[graph.head(e)];
    const CVec3 forward = edge_dF(ga, gb, data.q(e));
    const CVec3 backward = edge_dF(gb, ga, data.q(reverse(e)));
    out.canonical[k] = forward;
    const double mag = forward.norm();
    if (mag > 0.0) out.antisymmetry_defect = std::max(out.antisymmetry_defect, (forward + backward).norm() / mag);
  }
  return out;
}

namespace {

DiscreteSurface integrate(const TrivalentGraph& graph, const HoloData& data, const EdgeDifferential& dF,
                          VertexId base, const CVec3& w0, Complex phase, TreeOrder order) {
  const SpanningTree tree = spanning_tree(graph, base, order);
  DiscreteSurface s;
  s.base = base;
  s.w0 = w0;
  s.F.resize(graph.vertex_count());
  for (VertexId v : tree.order) {
    const EdgeId e = tree.parent_edge[v];
    s.F[v] = e == no_edge ? w0 : CVec3(s.F[graph.tail(e)] + phase * dF(e));
  }
  s.X.resize(graph.vertex_count());
  s.N.resize(graph.vertex_count());
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    s.X[v] = s.F[v].real();
    s.N[v] = pseudo_normal(data.g[v]);
  }
  return s;
}

}  // namespace

DiscreteSurface integrate_surface(const TrivalentGraph& graph, const HoloData& data, const EdgeDifferential& dF,
                                  VertexId base, const CVec3& w0, TreeOrder order) {
  return integrate(graph, data, dF, base, w0, {1.0, 0.0}, order);
}

DiscreteSurface associated_family(const TrivalentGraph& graph, const HoloData& data, const EdgeDifferential& dF,
                                  VertexId base, const CVec3& w0, double theta, TreeOrder order) {
  // theta == 0 must reproduce the original bit for bit.
  const Complex phase = theta == 0.0 ? Complex{1.0, 0.0} : std::polar(1.0, theta);
  return integrate(graph, data, dF, base, w0, phase, order);
}

FaceResidual closure_residual(const TrivalentGraph&, const FaceSet& faces, const EdgeDifferential& dF) {
  FaceResidual r;
  r.per_face.resize(faces.bounded_count());
  for (std::size_t f = 0; f < faces.bounded_count(); ++f) {
    CVec3 sum = CVec3::Zero();
    for (EdgeId e : faces.edges(f)) sum += dF(e);
    r.per_face[f] = sum.norm();
    r.max = std::max(r.max, r.per_face[f]);
  }
  return r;
}

VertexResidual balancing_residual(const std::vector<Vec3>& X, const TrivalentGraph& graph) {
  VertexResidual r;
  r.per_vertex.assign(graph.vertex_count(), 0.0);
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    if (!graph.interior(v)) continue;
    Vec3 sum = Vec3::Zero();
    for (EdgeId e : graph.out_edges(v)) sum += X[graph.head(e)] - X[v];
    r.per_vertex[v] = sum.norm();
    r.max = std::max(r.max, r.per_vertex[v]);
  }
  return r;
}

VertexResidual star_sum_residual(const TrivalentGraph& graph, const EdgeDifferential& dF) {
  VertexResidual r;
  r.per_vertex.assign(graph.vertex_count(), 0.0);
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    if (!graph.interior(v)) continue;
    CVec3 sum = CVec3::Zero();
    for (EdgeId e : graph.out_edges(v)) sum += dF(e);
    r.per_vertex[v] = sum.norm();
    r.max = std::max(r.max, r.per_vertex[v]);
  }
  return r;
}

std::optional<double> lemma61_residual(Complex ga, Complex gb, Complex q, const CVec3& dF) {
  if (q == Complex{}) return std::nullopt;
  const Vec3 na = pseudo_normal(ga);
  const Vec3 nb = pseudo_normal(gb);
  const double c = (1.0 + std::norm(ga)) * (1.0 + std::norm(gb)) / std::norm(gb - ga);
  const Vec3 cross = na.cross(nb);
  const Vec3 diff = nb - na;
  CVec3 lhs;
  for (int i = 0; i < 3; ++i) lhs[i] = c * Complex(cross[i], diff[i]);
  const CVec3 rhs = 2.0 * dF / q;
  return (lhs - rhs).norm() / rhs.norm();
}

EdgeCheck lemma61_check(const TrivalentGraph& graph, const HoloData& data, const EdgeDifferential& dF) {
  EdgeCheck r;
  for (EdgeId e = 0; e < static_cast<EdgeId>(graph.oriented_edge_count()); ++e) {
    const auto res = lemma61_residual(data.g[graph.tail(e)], data.g[graph.head(e)], data.q(e), dF(e));
    if (!res) {
      ++r.skipped;
      continue;
    }
    ++r.checked;
    r.max = std::max(r.max, *res);
  }
  return r;
}

double normal_component_residual(Complex ga, Complex q, const CVec3& dF) {
  return pseudo_normal(ga).dot(dF.real()) - q.imag();
}

EdgeCheck normal_component_check(const TrivalentGraph& graph, const HoloData& data, const EdgeDifferential& dF) {
  EdgeCheck r;
  for (EdgeId e = 0; e < static_cast<EdgeId>(graph.oriented_edge_count()); ++e) {
    ++r.checked;
    r.max = std::max(r.max, std::abs(normal_component_residual(data.g[graph.tail(e)], data.q(e), dF(e))));
  }
  return r;
}

double tolerance_scale(const TrivalentGraph& graph, const HoloData& data) {
  const double lambda = graph.mean_edge_length();
  double gmax = 0.0;
  for (const auto& g : data.g) gmax = std::max(gmax, std::abs(g));
  const double s = 1.0 + gmax * gmax;
  return lambda * lambda * std::abs(data.nu) * s * s;
}

}  // namespace dharm
