#include "dharm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include "dharm/errors.hpp"

namespace dharm {

void LatticeSpec::validate() const {
  if (!(edge_length > 0.0) || !std::isfinite(edge_length))
    throw ValidationError("lattice edge length must be positive, got " + std::to_string(edge_length));
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ValidationError("lattice radius must be positive, got " + std::to_string(radius));
  if (radius < edge_length)
    throw ValidationError("lattice radius " + std::to_string(radius) + " is smaller than the edge length " +
                          std::to_string(edge_length));
  if (!std::isfinite(center.real()) || !std::isfinite(center.imag()) || !std::isfinite(orientation))
    throw ValidationError("lattice center and orientation must be finite");
}

TrivalentGraph TrivalentGraph::from_edges(std::vector<Complex> coords, std::vector<EdgeEnds> edges) {
  TrivalentGraph g;
  g.z_ = std::move(coords);
  g.ends_ = std::move(edges);
  const auto n = static_cast<VertexId>(g.z_.size());
  g.degree_.assign(n, 0);
  g.rotation_.assign(n, {no_edge, no_edge, no_edge});
  for (std::size_t k = 0; k < g.ends_.size(); ++k) {
    for (int side = 0; side < 2; ++side) {
      const VertexId v = g.ends_[k][side];
      if (v < 0 || v >= n) throw ValidationError("edge " + std::to_string(k) + " references missing vertex");
      if (g.degree_[v] == 3) throw ValidationError("vertex " + std::to_string(v) + " has degree > 3");
      g.rotation_[v][g.degree_[v]++] = static_cast<EdgeId>(2 * k + side);
    }
    if (g.ends_[k][0] == g.ends_[k][1]) throw ValidationError("edge " + std::to_string(k) + " is a loop");
  }
  g.check_coordinates();
  g.build_rotation_from_coordinates();
  g.interior_.resize(n);
  for (VertexId v = 0; v < n; ++v) g.interior_[v] = g.degree_[v] == 3;
  return g;
}

TrivalentGraph TrivalentGraph::from_rotation(std::vector<Complex> coords, std::vector<EdgeEnds> edges,
                                             const std::vector<std::vector<std::int32_t>>& rotation,
                                             const std::vector<bool>& interior) {
  TrivalentGraph g;
  g.z_ = std::move(coords);
  g.ends_ = std::move(edges);
  const auto n = static_cast<VertexId>(g.z_.size());
  if (rotation.size() != g.z_.size() || interior.size() != g.z_.size())
    throw ValidationError("rotation and interior flags must cover every vertex");

  std::vector<int> incidence(n, 0);
  for (std::size_t k = 0; k < g.ends_.size(); ++k) {
    const auto [a, b] = g.ends_[k];
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw ValidationError("edge " + std::to_string(k) + " references missing vertex");
    if (a == b) throw ValidationError("edge " + std::to_string(k) + " is a loop");
    ++incidence[a];
    ++incidence[b];
  }

  g.degree_.assign(n, 0);
  g.rotation_.assign(n, {no_edge, no_edge, no_edge});
  g.interior_.assign(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    const auto& around = rotation[v];
    if (around.size() > 3) throw ValidationError("vertex " + std::to_string(v) + " has degree > 3");
    if (static_cast<int>(around.size()) != incidence[v])
      throw ValidationError("rotation of vertex " + std::to_string(v) + " does not list all incident edges");
    for (std::size_t i = 0; i < around.size(); ++i) {
      const auto k = around[i];
      if (k < 0 || static_cast<std::size_t>(k) >= g.ends_.size())
        throw ValidationError("rotation of vertex " + std::to_string(v) + " names unknown edge");
      const auto [a, b] = g.ends_[k];
      if (a != v && b != v)
        throw ValidationError("rotation of vertex " + std::to_string(v) + " names edge " + std::to_string(k) +
                              " not incident to it");
      for (std::size_t j = 0; j < i; ++j)
        if (around[j] == k) throw ValidationError("rotation of vertex " + std::to_string(v) + " repeats an edge");
      g.rotation_[v][i] = static_cast<EdgeId>(2 * k + (a == v ? 0 : 1));
    }
    g.degree_[v] = static_cast<std::uint8_t>(around.size());
    if (interior[v] && around.size() != 3)
      throw ValidationError("interior vertex " + std::to_string(v) + " must have degree 3");
    g.interior_[v] = interior[v];
    g.canonicalize_rotation(v);
  }
  g.check_coordinates();
  return g;
}

void TrivalentGraph::check_coordinates() const {
  for (std::size_t k = 0; k < ends_.size(); ++k) {
    const auto [a, b] = ends_[k];
    if (!std::isfinite(z_[a].real()) || !std::isfinite(z_[a].imag()))
      throw ValidationError("vertex " + std::to_string(a) + " has a non-finite coordinate");
    if (z_[a] == z_[b])
      throw ValidationError("adjacent vertices " + std::to_string(a) + " and " + std::to_string(b) +
                            " share a coordinate");
  }
}

void TrivalentGraph::build_rotation_from_coordinates() {
  for (VertexId v = 0; v < static_cast<VertexId>(z_.size()); ++v) {
    auto* first = rotation_[v].data();
    std::sort(first, first + degree_[v], [&](EdgeId a, EdgeId b) { return std::arg(dz(a)) < std::arg(dz(b)); });
    canonicalize_rotation(v);
  }
}

void TrivalentGraph::canonicalize_rotation(VertexId v) {
  auto* first = rotation_[v].data();
  auto* last = first + degree_[v];
  auto* lowest = std::min_element(first, last, [&](EdgeId a, EdgeId b) { return head(a) < head(b); });
  std::rotate(first, lowest, last);
}

std::size_t TrivalentGraph::interior_count() const {
  return static_cast<std::size_t>(std::count(interior_.begin(), interior_.end(), std::uint8_t{1}));
}

EdgeId TrivalentGraph::next_in_face(EdgeId e) const {
  const VertexId v = head(e);
  const EdgeId back = reverse(e);
  const int d = degree_[v];
  for (int i = 0; i < d; ++i)
    if (rotation_[v][i] == back) return rotation_[v][(i + d - 1) % d];
  throw StructuralError("edge " + std::to_string(e) + " missing from the rotation of its head");
}

EdgeId TrivalentGraph::find_edge(VertexId a, VertexId b) const {
  for (EdgeId e : out_edges(a))
    if (head(e) == b) return e;
  return no_edge;
}

std::optional<VertexStar> TrivalentGraph::star(VertexId v) const {
  VertexStar s;
  const int d = degree_[v];
  if (d == 3) {
    for (int i = 0; i < 3; ++i) {
      s.edge[i] = rotation_[v][i];
      s.neighbor_z[i] = z_[head(s.edge[i])];
    }
    return s;
  }
  if (!lattice_ || d == 0) return std::nullopt;

  // Regular lattice: the star is the first edge rotated by multiples of 120 degrees.
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const Complex first = dz(rotation_[v][0]);
  const double tol = 1e-9 * std::abs(first);
  std::array<Complex, 3> offsets{first, first * omega, first * omega * omega};
  s.edge = {rotation_[v][0], no_edge, no_edge};
  for (int i = 1; i < d; ++i) {
    const EdgeId e = rotation_[v][i];
    int slot = -1;
    for (int j = 1; j < 3; ++j)
      if (std::abs(dz(e) - offsets[j]) <= tol) slot = j;
    if (slot < 0) return std::nullopt;
    s.edge[slot] = e;
  }
  for (int j = 0; j < 3; ++j) s.neighbor_z[j] = z_[v] + offsets[j];
  for (int j = 0; j < 3; ++j)
    if (s.edge[j] != no_edge) s.neighbor_z[j] = z_[head(s.edge[j])];
  return s;
}

double TrivalentGraph::mean_edge_length() const {
  if (ends_.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [a, b] : ends_) sum += std::abs(z_[b] - z_[a]);
  return sum / static_cast<double>(ends_.size());
}

TrivalentGraph build_hex_lattice(const LatticeSpec& spec) {
  spec.validate();
  const double lambda = spec.edge_length;
  // A-sites sit on a triangular lattice; each A-site is joined to B-sites at
  // offsets delta_j = lambda * e^{i(theta + 2 pi j / 3)}.
  const Complex delta0 = std::polar(lambda, spec.orientation);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const Complex delta1 = delta0 * omega;
  const Complex delta2 = delta0 * omega * omega;
  const Complex a1 = delta0 - delta1;
  const Complex a2 = delta0 - delta2;
  const Complex origin = spec.anchor == LatticeAnchor::face ? spec.center + delta0 : spec.center;

  // |n1 a1 + n2 a2| >= |a| max(|n1|, |n2|) / sqrt(2).
  const auto span = static_cast<int>(std::ceil(std::sqrt(2.0) * (spec.radius + 2.0 * lambda) /
                                               (std::sqrt(3.0) * lambda))) + 1;
  const int width = 2 * span + 1;
  std::vector<VertexId> index(static_cast<std::size_t>(width) * width * 2, no_vertex);
  auto slot = [&](int n1, int n2, int s) {
    return (static_cast<std::size_t>(n1 + span) * width + static_cast<std::size_t>(n2 + span)) * 2 + s;
  };
  auto inside = [&](int n1, int n2) { return n1 >= -span && n1 <= span && n2 >= -span && n2 <= span; };

  // Sites on the circle count as inside despite rounding.
  const double r = spec.radius * (1.0 + 1e-12);
  const double r2 = r * r;
  std::vector<Complex> coords;
  for (int n1 = -span; n1 <= span; ++n1) {
    for (int n2 = -span; n2 <= span; ++n2) {
      for (int s = 0; s < 2; ++s) {
        const Complex p = origin + static_cast<double>(n1) * a1 + static_cast<double>(n2) * a2 +
                          (s == 1 ? delta0 : Complex{});
        if (std::norm(p - spec.center) <= r2) {
          index[slot(n1, n2, s)] = static_cast<VertexId>(coords.size());
          coords.push_back(p);
        }
      }
    }
  }

  // Edges A(n1, n2) -> B(n1, n2), B(n1 - 1, n2), B(n1, n2 - 1), tail = A-site.
  std::vector<TrivalentGraph::EdgeEnds> edges;
  edges.reserve(coords.size() * 3 / 2 + 4);
  for (int n1 = -span; n1 <= span; ++n1) {
    for (int n2 = -span; n2 <= span; ++n2) {
      const VertexId a = index[slot(n1, n2, 0)];
      if (a == no_vertex) continue;
      const std::array<std::array<int, 2>, 3> nb{{{n1, n2}, {n1 - 1, n2}, {n1, n2 - 1}}};
      for (const auto& [m1, m2] : nb) {
        if (!inside(m1, m2)) continue;
        const VertexId b = index[slot(m1, m2, 1)];
        if (b != no_vertex) edges.push_back({a, b});
      }
    }
  }
  if (coords.empty()) throw ValidationError("lattice clipped to an empty vertex set");

  TrivalentGraph g = TrivalentGraph::from_edges(std::move(coords), std::move(edges));
  g.set_lattice(spec);
  return g;
}

std::vector<int> SpanningTree::depths(const TrivalentGraph& g) const {
  std::vector<int> depth(parent_edge.size(), 0);
  for (VertexId v : order)
    if (parent_edge[v] != no_edge) depth[v] = depth[g.tail(parent_edge[v])] + 1;
  return depth;
}

SpanningTree spanning_tree(const TrivalentGraph& graph, VertexId root, TreeOrder order) {
  const auto n = graph.vertex_count();
  if (root < 0 || static_cast<std::size_t>(root) >= n)
    throw ValidationError("spanning tree root " + std::to_string(root) + " is not a vertex");

  SpanningTree tree;
  tree.root = root;
  tree.parent_edge.assign(n, no_edge);
  tree.order.reserve(n);
  std::vector<std::uint8_t> seen(n, 0);
  seen[root] = 1;

  if (order == TreeOrder::breadth_first) {
    std::queue<VertexId> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const VertexId v = frontier.front();
      frontier.pop();
      tree.order.push_back(v);
      for (EdgeId e : graph.out_edges(v)) {
        const VertexId w = graph.head(e);
        if (seen[w]) continue;
        seen[w] = 1;
        tree.parent_edge[w] = e;
        frontier.push(w);
      }
    }
  } else {
    std::vector<VertexId> stack{root};
    std::fill(seen.begin(), seen.end(), 0);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      if (seen[v]) continue;
      seen[v] = 1;
      tree.order.push_back(v);
      const auto out = graph.out_edges(v);
      for (auto it = out.rbegin(); it != out.rend(); ++it) {
        const VertexId w = graph.head(*it);
        if (seen[w]) continue;
        tree.parent_edge[w] = *it;
        stack.push_back(w);
      }
    }
  }

  if (tree.order.size() != n) {
    // Report every component by size.
    std::vector<int> component(n, -1);
    std::vector<std::size_t> sizes;
    for (VertexId s = 0; s < static_cast<VertexId>(n); ++s) {
      if (component[s] >= 0) continue;
      const int c = static_cast<int>(sizes.size());
      sizes.push_back(0);
      std::vector<VertexId> stack{s};
      component[s] = c;
      while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        ++sizes[c];
        for (EdgeId e : graph.out_edges(v)) {
          const VertexId w = graph.head(e);
          if (component[w] < 0) {
            component[w] = c;
            stack.push_back(w);
          }
        }
      }
    }
    std::ostringstream msg;
    msg << "graph is disconnected: " << sizes.size() << " components with sizes";
    for (std::size_t c = 0; c < sizes.size(); ++c) msg << (c ? ", " : " ") << sizes[c];
    throw DisconnectedGraphError(msg.str());
  }
  return tree;
}

VertexId nearest_vertex(const TrivalentGraph& graph, Complex p) {
  VertexId best = no_vertex;
  double best_d = 0.0;
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    const double d = std::norm(graph.z(v) - p);
    if (best == no_vertex || d < best_d) {
      best = v;
      best_d = d;
    }
  }
  return best;
}

}  // namespace dharm
