#include <cmath>
#include <numbers>

#include "doctest.h"

#include "dharm/errors.hpp"
#include "dharm/faces.hpp"
#include "dharm/graph.hpp"
#include "oracles/bfs_oracle.hpp"
#include "oracles/lattice_oracle.hpp"

using namespace dharm;

namespace {

const double sqrt3 = std::sqrt(3.0);

LatticeSpec spec(double lambda, double radius, LatticeAnchor anchor = LatticeAnchor::face) {
  return {lambda, radius, {0.0, 0.0}, 0.0, anchor};
}

std::vector<std::array<int, 2>> plain_edges(const TrivalentGraph& g) {
  std::vector<std::array<int, 2>> out;
  for (const auto& [a, b] : g.edge_ends()) out.push_back({a, b});
  return out;
}

}  // namespace

TEST_CASE("lattice spec validation") {
  CHECK_THROWS_AS(build_hex_lattice(spec(0.0, 1.0)), ValidationError);
  CHECK_THROWS_AS(build_hex_lattice(spec(-1.0, 1.0)), ValidationError);
  CHECK_THROWS_AS(build_hex_lattice(spec(1.0, 0.0)), ValidationError);
  CHECK_THROWS_AS(build_hex_lattice(spec(1.0, 0.5)), ValidationError);
}

TEST_CASE("unit lattice on the disk of radius sqrt 3 is one hexagon") {
  const auto g = build_hex_lattice(spec(1.0, sqrt3));
  CHECK(g.vertex_count() == 6);
  CHECK(g.edge_count() == 6);
  CHECK(g.interior_count() == 0);
  for (VertexId v = 0; v < 6; ++v) CHECK(std::abs(std::abs(g.z(v)) - 1.0) < 1e-15);
}

TEST_CASE("central vertex has three neighbors 2pi/3 apart") {
  const auto g = build_hex_lattice(spec(1.0, 1.01, LatticeAnchor::vertex));
  const VertexId c = nearest_vertex(g, {0.0, 0.0});
  CHECK(std::abs(g.z(c)) < 1e-15);
  REQUIRE(g.degree(c) == 3);
  CHECK(g.interior(c));
  const auto out = g.out_edges(c);
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(std::abs(g.dz(out[a])) - 1.0) < 1e-14);
    const double turn = std::arg(g.dz(out[(a + 1) % 3]) / g.dz(out[a]));
    CHECK(turn == doctest::Approx(2 * std::numbers::pi / 3).epsilon(1e-14));
  }
}

TEST_CASE("lattice counts match the brute-force enumerator") {
  for (auto anchor : {LatticeAnchor::face, LatticeAnchor::vertex}) {
    for (double radius : {sqrt3, 2.0, 3.0, 5.0, 7.3}) {
      CAPTURE(radius);
      const auto g = build_hex_lattice(spec(1.0, radius, anchor));
      const auto o = oracle::enumerate_lattice(1.0, radius, anchor == LatticeAnchor::face);
      CHECK(g.vertex_count() == o.vertices);
      CHECK(g.edge_count() == o.edges);
      CHECK(faces(g).bounded_count() == o.faces);
    }
  }
  // rotated and scaled
  const LatticeSpec s{0.3, 2.0, {0.0, 0.0}, 0.4, LatticeAnchor::face};
  const auto g = build_hex_lattice(s);
  const auto o = oracle::enumerate_lattice(0.3, 2.0, true, 0.4);
  CHECK(g.vertex_count() == o.vertices);
  CHECK(g.edge_count() == o.edges);
}

TEST_CASE("oriented edges") {
  const auto g = build_hex_lattice(spec(1.0, 5.0));
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.oriented_edge_count()); ++e) {
    CHECK(g.dz(e) + g.dz(reverse(e)) == Complex{});
    CHECK(g.tail(reverse(e)) == g.head(e));
    CHECK(std::abs(std::abs(g.dz(e)) - 1.0) < 1e-12);
  }
}

TEST_CASE("interior flag, degree and rotation order") {
  const auto g = build_hex_lattice(spec(1.0, 5.0, LatticeAnchor::vertex));
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    CHECK(g.interior(v) == (g.degree(v) == 3));
    CHECK(g.degree(v) >= 1);
    const auto out = g.out_edges(v);
    for (std::size_t a = 1; a < out.size(); ++a) CHECK(g.head(out[0]) < g.head(out[a]));
    if (out.size() == 3) {
      // counter-clockwise: each turn is a left turn of 2 pi / 3
      for (int a = 0; a < 3; ++a) {
        const double turn = std::arg(g.dz(out[(a + 1) % 3]) / g.dz(out[a]));
        CHECK(turn > 0.0);
      }
    }
  }
}

TEST_CASE("lattice construction is deterministic") {
  const auto s = spec(0.25, 3.0, LatticeAnchor::vertex);
  CHECK(build_hex_lattice(s) == build_hex_lattice(s));
}

TEST_CASE("lattice ids follow axial order") {
  // ids are dense and assigned once; the first vertex has the lexicographically smallest axial coordinates
  const auto g = build_hex_lattice(spec(1.0, 3.0));
  CHECK(g.vertex_count() == oracle::enumerate_lattice(1.0, 3.0, true).vertices);
  CHECK(g.lattice().has_value());
}

TEST_CASE("boundary stars are completed from the lattice") {
  const auto g = build_hex_lattice(spec(1.0, 3.0));
  int checked = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
    const auto s = g.star(v);
    REQUIRE(s.has_value());
    int real = 0;
    for (int a = 0; a < 3; ++a) {
      CHECK(std::abs(std::abs(s->neighbor_z[a] - g.z(v)) - 1.0) < 1e-12);
      const double turn = std::arg((s->neighbor_z[(a + 1) % 3] - g.z(v)) / (s->neighbor_z[a] - g.z(v)));
      CHECK(turn == doctest::Approx(2 * std::numbers::pi / 3).epsilon(1e-12));
      if (s->edge[a] != no_edge) {
        ++real;
        CHECK(g.tail(s->edge[a]) == v);
        CHECK(std::abs(g.z(g.head(s->edge[a])) - s->neighbor_z[a]) < 1e-12);
      }
    }
    CHECK(real == g.degree(v));
    checked += g.interior(v) ? 0 : 1;
  }
  CHECK(checked > 0);
}

TEST_CASE("explicit graphs without a lattice have no boundary star") {
  auto g = TrivalentGraph::from_edges({{0, 0}, {1, 0}}, {{0, 1}});
  CHECK_FALSE(g.star(0).has_value());
}

TEST_CASE("coordinates of adjacent vertices must differ") {
  CHECK_THROWS_AS(TrivalentGraph::from_edges({{0, 0}, {0, 0}}, {{0, 1}}), ValidationError);
}

TEST_CASE("degree above three is rejected") {
  CHECK_THROWS_AS(TrivalentGraph::from_edges({{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}),
                  ValidationError);
}

TEST_CASE("malformed explicit rotation is rejected") {
  std::vector<Complex> z{{0, 0}, {1, 0}};
  std::vector<TrivalentGraph::EdgeEnds> e{{0, 1}};
  CHECK_THROWS_AS(TrivalentGraph::from_rotation(z, e, {{0}, {}}, {false, false}), ValidationError);
  CHECK_THROWS_AS(TrivalentGraph::from_rotation(z, e, {{0}, {1}}, {false, false}), ValidationError);
  CHECK_THROWS_AS(TrivalentGraph::from_rotation(z, {{0, 2}}, {{0}, {0}}, {false, false}), ValidationError);
  CHECK_NOTHROW(TrivalentGraph::from_rotation(z, e, {{0}, {0}}, {false, false}));
}

TEST_CASE("spanning tree of a single edge") {
  const auto g = TrivalentGraph::from_edges({{0, 0}, {1, 0}}, {{0, 1}});
  const auto t = spanning_tree(g, 0);
  CHECK(t.parent(g, 1) == 0);
  CHECK(t.parent(g, 0) == no_vertex);
}

TEST_CASE("spanning tree of a hexagon leaves one edge out") {
  const auto g = build_hex_lattice(spec(1.0, sqrt3));
  for (VertexId root = 0; root < 6; ++root) {
    for (auto order : {TreeOrder::breadth_first, TreeOrder::depth_first}) {
      const auto t = spanning_tree(g, root, order);
      int tree_edges = 0;
      for (VertexId v = 0; v < 6; ++v) tree_edges += t.parent_edge[v] != no_edge ? 1 : 0;
      CHECK(tree_edges == 5);
      CHECK(t.order.size() == 6);
      CHECK(t.order.front() == root);
    }
  }
}

TEST_CASE("tree paths are bounded by the graph diameter") {
  const auto g = build_hex_lattice(spec(1.0, 3.0));
  const int diam = oracle::diameter(g.vertex_count(), plain_edges(g));
  for (VertexId root : {VertexId{0}, VertexId{7}, static_cast<VertexId>(g.vertex_count() - 1)}) {
    const auto t = spanning_tree(g, root);
    const auto depth = t.depths(g);
    const auto dist = oracle::bfs_distances(g.vertex_count(), plain_edges(g), root);
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
      CHECK(depth[v] <= diam);
      CHECK(depth[v] == dist[v]);  // breadth-first tree paths are shortest paths
    }
    const auto dfs = spanning_tree(g, root, TreeOrder::depth_first);
    for (VertexId v : dfs.order)
      if (v != root) CHECK(std::find(dfs.order.begin(), dfs.order.end(), dfs.parent(g, v)) < std::find(dfs.order.begin(), dfs.order.end(), v));
  }
}

TEST_CASE("disconnected graph names its components") {
  const auto g = TrivalentGraph::from_edges({{0, 0}, {1, 0}, {5, 0}, {6, 0}, {7, 0}}, {{0, 1}, {2, 3}, {3, 4}});
  try {
    spanning_tree(g, 0);
    FAIL("expected DisconnectedGraphError");
  } catch (const DisconnectedGraphError& e) {
    const std::string what = e.what();
    CHECK(what.find('2') != std::string::npos);
    CHECK(what.find('3') != std::string::npos);
  }
  CHECK_THROWS_AS(spanning_tree(g, 9), ValidationError);
}

TEST_CASE("nearest vertex breaks ties by id") {
  const auto g = TrivalentGraph::from_edges({{-1, 0}, {1, 0}, {0, 5}}, {{0, 1}, {1, 2}});
  CHECK(nearest_vertex(g, {0, 0}) == 0);
  CHECK(nearest_vertex(g, {0.9, 0}) == 1);
  CHECK(nearest_vertex(g, {0, 4}) == 2);
}

TEST_CASE("mean edge length") {
  CHECK(build_hex_lattice(spec(0.5, 3.0)).mean_edge_length() == doctest::Approx(0.5).epsilon(1e-12));
}
