#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dharm/types.hpp"

namespace dharm {

enum class LatticeAnchor {
  face,    // a hexagon is centered on the disk center
  vertex,  // a lattice vertex sits on the disk center
};

// Regular hexagonal lattice clipped to a closed disk.
struct LatticeSpec {
  double edge_length = 1.0;
  double radius = 1.0;
  Complex center{0.0, 0.0};
  // Angle of the lattice edge family that points from the face center to a
  // hexagon vertex (face anchor) or from the center vertex outwards (vertex
  // anchor).
  double orientation = 0.0;
  LatticeAnchor anchor = LatticeAnchor::face;

  void validate() const;
  bool operator==(const LatticeSpec&) const = default;
};

// The three neighbors of a vertex in counter-clockwise order. For boundary
// vertices of a lattice graph the missing neighbors are filled in from the
// lattice and carry edge == no_edge.
struct VertexStar {
  std::array<Complex, 3> neighbor_z;
  std::array<EdgeId, 3> edge;
};

// Planar graph with vertex degree <= 3, complex vertex coordinates and a
// rotation system. Immutable once built.
class TrivalentGraph {
 public:
  using EdgeEnds = std::array<VertexId, 2>;

  TrivalentGraph() = default;

  // Rotation system derived from the coordinates: outgoing edges sorted
  // counter-clockwise by arg(dz). A vertex is interior iff it has degree 3.
  static TrivalentGraph from_edges(std::vector<Complex> coords, std::vector<EdgeEnds> edges);

  // Explicit rotation system: rotation[v] lists the undirected edge indices
  // around v counter-clockwise. Throws ValidationError on malformed input.
  static TrivalentGraph from_rotation(std::vector<Complex> coords, std::vector<EdgeEnds> edges,
                                      const std::vector<std::vector<std::int32_t>>& rotation,
                                      const std::vector<bool>& interior);

  std::size_t vertex_count() const { return z_.size(); }
  std::size_t edge_count() const { return ends_.size(); }
  std::size_t oriented_edge_count() const { return 2 * ends_.size(); }

  Complex z(VertexId v) const { return z_[v]; }
  const std::vector<Complex>& coordinates() const { return z_; }
  bool interior(VertexId v) const { return interior_[v] != 0; }
  int degree(VertexId v) const { return degree_[v]; }
  std::size_t interior_count() const;

  VertexId tail(EdgeId e) const { return ends_[e >> 1][e & 1]; }
  VertexId head(EdgeId e) const { return ends_[e >> 1][1 - (e & 1)]; }
  Complex dz(EdgeId e) const { return z_[head(e)] - z_[tail(e)]; }
  const std::vector<EdgeEnds>& edge_ends() const { return ends_; }

  // Outgoing oriented edges, counter-clockwise, starting with the edge whose
  // head has the smallest id.
  std::span<const EdgeId> out_edges(VertexId v) const {
    return {rotation_[v].data(), static_cast<std::size_t>(degree_[v])};
  }

  // Next oriented edge of the face lying to the left of e.
  EdgeId next_in_face(EdgeId e) const;

  // Oriented edge from a to b, or no_edge.
  EdgeId find_edge(VertexId a, VertexId b) const;

  // Full three-neighbor star; nullopt when v has degree < 3 and the graph
  // carries no lattice to complete it from.
  std::optional<VertexStar> star(VertexId v) const;

  const std::optional<LatticeSpec>& lattice() const { return lattice_; }
  void set_lattice(const LatticeSpec& spec) { lattice_ = spec; }

  // Mean length of the undirected edges in the plane.
  double mean_edge_length() const;

  bool operator==(const TrivalentGraph&) const = default;

 private:
  void build_rotation_from_coordinates();
  void canonicalize_rotation(VertexId v);
  void check_coordinates() const;

  std::vector<Complex> z_;
  std::vector<EdgeEnds> ends_;
  std::vector<std::array<EdgeId, 3>> rotation_;
  std::vector<std::uint8_t> degree_;
  std::vector<std::uint8_t> interior_;
  std::optional<LatticeSpec> lattice_;
};

// Hexagonal lattice clipped to the closed disk |z - center| <= radius, with a
// relative slack of 1e-12 so that sites on the circle are kept. Vertex
// ids follow lexicographic order of the axial coordinates (n1, n2, sublattice).
TrivalentGraph build_hex_lattice(const LatticeSpec& spec);

// Breadth-first or depth-first spanning tree.
enum class TreeOrder { breadth_first, depth_first };

struct SpanningTree {
  VertexId root = no_vertex;
  // parent_edge[v] is the oriented edge parent -> v; no_edge for the root.
  std::vector<EdgeId> parent_edge;
  // Vertices in discovery order; every parent precedes its children.
  std::vector<VertexId> order;

  VertexId parent(const TrivalentGraph& g, VertexId v) const {
    return parent_edge[v] == no_edge ? no_vertex : g.tail(parent_edge[v]);
  }
  // Number of tree edges between v and the root.
  std::vector<int> depths(const TrivalentGraph& g) const;
};

// Throws DisconnectedGraphError listing the component sizes when the graph is
// not connected.
SpanningTree spanning_tree(const TrivalentGraph& graph, VertexId root,
                           TreeOrder order = TreeOrder::breadth_first);

// Vertex nearest to p; ties go to the smallest id.
VertexId nearest_vertex(const TrivalentGraph& graph, Complex p);

}  // namespace dharm
