#include "dharm/subdivision.hpp"

#include <cmath>
#include <string>

#include "dharm/errors.hpp"
#include "dharm/faces.hpp"

namespace dharm {

TrivalentGraph gc_subdivide(const TrivalentGraph& graph, const SubdivisionOptions& options) {
  if (!(options.shrink > 0.0 && options.shrink < 1.0))
    throw ValidationError("inner polygon shrink factor must lie in (0, 1)");
  const FaceSet fs = faces(graph);

  std::vector<std::uint8_t> on_face(graph.vertex_count(), 0);
  for (std::size_t f = 0; f < fs.bounded_count(); ++f)
    for (EdgeId e : fs.edges(f)) on_face[graph.tail(e)] = 1;

  std::vector<VertexId> remap(graph.vertex_count(), no_vertex);
  std::vector<Complex> coords;
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    if (!on_face[v]) continue;
    remap[v] = static_cast<VertexId>(coords.size());
    coords.push_back(graph.z(v));
  }

  std::vector<TrivalentGraph::EdgeEnds> edges;
  for (std::size_t f = 0; f < fs.bounded_count(); ++f) {
    const auto cycle = fs.vertices(graph, f);
    Complex centroid{};
    for (VertexId v : cycle) centroid += graph.z(v);
    centroid /= static_cast<double>(cycle.size());

    const auto first = static_cast<VertexId>(coords.size());
    for (VertexId v : cycle) coords.push_back(centroid + options.shrink * (graph.z(v) - centroid));
    const auto n = static_cast<VertexId>(cycle.size());
    for (VertexId i = 0; i < n; ++i) {
      edges.push_back({remap[cycle[i]], first + i});
      edges.push_back({first + i, first + (i + 1) % n});
    }
  }
  return TrivalentGraph::from_edges(std::move(coords), std::move(edges));
}

LatticeSpec refined_spec(const LatticeSpec& spec, int steps) {
  if (steps < 0) throw ValidationError("refinement steps must be non-negative");
  LatticeSpec out = spec;
  out.edge_length = std::ldexp(spec.edge_length, -2 * steps);
  return out;
}

TrivalentGraph hex_refine(const LatticeSpec& spec, int steps) { return build_hex_lattice(refined_spec(spec, steps)); }

}  // namespace dharm
