#include "dharm/faces.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dharm/errors.hpp"

namespace dharm {

namespace {

std::vector<int> component_labels(const TrivalentGraph& g, int& count) {
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::vector<int> label(n, -1);
  count = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e : g.out_edges(v)) {
        const VertexId w = g.head(e);
        if (label[w] < 0) {
          label[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return label;
}

}  // namespace

std::vector<VertexId> FaceSet::vertices(const TrivalentGraph& g, std::size_t f) const {
  std::vector<VertexId> out;
  out.reserve(size(f));
  for (EdgeId e : edges(f)) out.push_back(g.tail(e));
  return out;
}

FaceSet faces(const TrivalentGraph& graph) {
  const std::size_t m = graph.oriented_edge_count();
  int components = 0;
  const auto label = component_labels(graph, components);

  struct Cycle {
    std::size_t begin, end;
    double area;
    int component;
  };
  std::vector<EdgeId> all;
  all.reserve(m);
  std::vector<Cycle> cycles;
  std::vector<std::uint8_t> visited(m, 0);

  for (EdgeId start = 0; start < static_cast<EdgeId>(m); ++start) {
    if (visited[start]) continue;
    Cycle c{all.size(), 0, 0.0, label[graph.tail(start)]};
    EdgeId e = start;
    do {
      if (visited[e]) throw StructuralError("face traversal revisits edge " + std::to_string(e));
      visited[e] = 1;
      all.push_back(e);
      const Complex a = graph.z(graph.tail(e));
      const Complex b = graph.z(graph.head(e));
      c.area += 0.5 * (a.real() * b.imag() - b.real() * a.imag());
      e = graph.next_in_face(e);
    } while (e != start);
    c.end = all.size();
    cycles.push_back(c);
  }

  // The outer face of each component is its face of least signed area.
  std::vector<std::ptrdiff_t> outer_of(components, -1);
  std::vector<std::size_t> face_count(components, 0);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const int comp = cycles[i].component;
    ++face_count[comp];
    if (outer_of[comp] < 0 || cycles[i].area < cycles[outer_of[comp]].area)
      outer_of[comp] = static_cast<std::ptrdiff_t>(i);
  }

  std::vector<std::size_t> vcount(components, 0), ecount(components, 0);
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) ++vcount[label[v]];
  for (const auto& ends : graph.edge_ends()) ++ecount[label[ends[0]]];
  for (int comp = 0; comp < components; ++comp) {
    const auto chi = static_cast<long long>(vcount[comp]) - static_cast<long long>(ecount[comp]) +
                     static_cast<long long>(face_count[comp]);
    if (chi != 2)
      throw StructuralError("rotation system is not planar: component " + std::to_string(comp) +
                            " has Euler characteristic " + std::to_string(chi));
  }

  FaceSet out;
  out.left_.assign(m, -1);
  std::vector<std::uint8_t> mark(graph.vertex_count(), 0);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const auto& c = cycles[i];
    if (static_cast<std::ptrdiff_t>(i) == outer_of[c.component]) {
      out.outer_.emplace_back(all.begin() + static_cast<std::ptrdiff_t>(c.begin),
                              all.begin() + static_cast<std::ptrdiff_t>(c.end));
      continue;
    }
    if (!(c.area > 0.0))
      throw StructuralError("face through edge " + std::to_string(all[c.begin]) +
                            " is not counter-clockwise; rotation system disagrees with coordinates");
    for (std::size_t k = c.begin; k < c.end; ++k) {
      const VertexId v = graph.tail(all[k]);
      if (mark[v]) throw StructuralError("bounded face through vertex " + std::to_string(v) + " is not simple");
      mark[v] = 1;
    }
    const auto f = static_cast<std::int32_t>(out.offsets_.size() - 1);
    for (std::size_t k = c.begin; k < c.end; ++k) {
      mark[graph.tail(all[k])] = 0;
      out.edges_.push_back(all[k]);
      out.left_[all[k]] = f;
    }
    out.offsets_.push_back(out.edges_.size());
  }
  return out;
}

}  // namespace dharm
