#pragma once

#include <optional>
#include <vector>

#include "dharm/faces.hpp"
#include "dharm/graph.hpp"
#include "dharm/holo.hpp"

namespace dharm {

// (1 - g_a g_b, i (1 + g_a g_b), g_a + g_b)
CVec3 weierstrass_triple(Complex ga, Complex gb);

// dF(e_ab) = (i q / dg) (1 - g_a g_b, i (1 + g_a g_b), g_a + g_b).
// Throws SingularDataError when g_a == g_b.
CVec3 edge_dF(Complex ga, Complex gb, Complex q);

// Stereographic image of g: (g + conj g, i (conj g - g), |g|^2 - 1) / (1 + |g|^2).
Vec3 pseudo_normal(Complex g);

// dF on every edge, stored for the canonical orientation.
struct EdgeDifferential {
  std::vector<CVec3> canonical;
  // max |dF(e) + dF(reverse e)| / |dF(e)| with both orientations evaluated
  // from their own tail.
  double antisymmetry_defect = 0.0;

  CVec3 operator()(EdgeId e) const {
    return is_canonical(e) ? canonical[undirected(e)] : CVec3(-canonical[undirected(e)]);
  }
};

EdgeDifferential compute_dF(const TrivalentGraph& graph, const HoloData& data);

struct DiscreteSurface {
  std::vector<Vec3> X;   // Re F
  std::vector<CVec3> F;
  std::vector<Vec3> N;   // pseudo-normal
  VertexId base = no_vertex;
  CVec3 w0 = CVec3::Zero();
};

// F(base) = w0, F(head) = F(tail) + dF along a spanning tree, X = Re F.
DiscreteSurface integrate_surface(const TrivalentGraph& graph, const HoloData& data, const EdgeDifferential& dF,
                                  VertexId base, const CVec3& w0, TreeOrder order = TreeOrder::breadth_first);

// Integrates e^{i theta} dF with the same base point and base value.
DiscreteSurface associated_family(const TrivalentGraph& graph, const HoloData& data, const EdgeDifferential& dF,
                                  VertexId base, const CVec3& w0, double theta,
                                  TreeOrder order = TreeOrder::breadth_first);

struct FaceResidual {
  std::vector<double> per_face;  // |sum of dF around the face|
  double max = 0.0;
};

FaceResidual closure_residual(const TrivalentGraph& graph, const FaceSet& faces, const EdgeDifferential& dF);

struct VertexResidual {
  std::vector<double> per_vertex;  // 0 at boundary vertices
  double max = 0.0;
};

// |sum_{e in E_v} (X_head - X_tail)| at interior vertices.
VertexResidual balancing_residual(const std::vector<Vec3>& X, const TrivalentGraph& graph);

// |sum_{e in E_v} dF(e)| in C^3 at interior vertices.
VertexResidual star_sum_residual(const TrivalentGraph& graph, const EdgeDifferential& dF);

// |c_ab (N_a x N_b + i (N_b - N_a)) - 2 dF / q| / |2 dF / q| with
// c_ab = (1 + |g_a|^2)(1 + |g_b|^2) / |g_b - g_a|^2. nullopt when q == 0.
std::optional<double> lemma61_residual(Complex ga, Complex gb, Complex q, const CVec3& dF);

struct EdgeCheck {
  double max = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
};

EdgeCheck lemma61_check(const TrivalentGraph& graph, const HoloData& data, const EdgeDifferential& dF);

// <N_a, Re dF(e_ab)> - Im q(e_ab). For g = z the identity holds exactly.
double normal_component_residual(Complex ga, Complex q, const CVec3& dF);

EdgeCheck normal_component_check(const TrivalentGraph& graph, const HoloData& data, const EdgeDifferential& dF);

// lambda^2 |nu| (1 + max |g|^2)^2, lambda = mean edge length. Reference
// magnitude for the closure, balancing and normal-component tolerances.
double tolerance_scale(const TrivalentGraph& graph, const HoloData& data);

}  // namespace dharm
