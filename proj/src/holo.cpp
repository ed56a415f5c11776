#include "dharm/holo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "dharm/errors.hpp"

namespace dharm {

namespace {

bool near_zero(Complex x, double magnitude) { return std::abs(x) <= 1e-14 * magnitude; }

std::string format(Complex z) {
  std::ostringstream s;
  s << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  return s.str();
}

}  // namespace

HoloFunction HoloFunction::polynomial(std::vector<Complex> coeffs) {
  if (coeffs.empty()) coeffs.push_back({});
  return HoloFunction(Polynomial{std::move(coeffs)});
}

HoloFunction HoloFunction::mobius(Complex a, Complex b, Complex c, Complex d) {
  const Complex det = a * d - b * c;
  if (det == Complex{} || near_zero(det, std::abs(a * d) + std::abs(b * c)))
    throw ValidationError("Moebius transform requires ad - bc != 0");
  return HoloFunction(Mobius{a, b, c, d});
}

HoloFunction HoloFunction::compose(HoloFunction outer, HoloFunction inner) {
  return HoloFunction(Composition{std::make_shared<const HoloFunction>(std::move(outer)),
                                  std::make_shared<const HoloFunction>(std::move(inner))});
}

std::optional<Complex> HoloFunction::try_evaluate(Complex z) const {
  return std::visit(
      [&](const auto& f) -> std::optional<Complex> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Identity>) {
          return z;
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          Complex acc{};
          for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = acc * z + *it;
          return acc;
        } else if constexpr (std::is_same_v<T, Mobius>) {
          const Complex den = f.c * z + f.d;
          if (den == Complex{} || near_zero(den, std::abs(f.c * z) + std::abs(f.d))) return std::nullopt;
          return (f.a * z + f.b) / den;
        } else {
          const auto w = f.inner->try_evaluate(z);
          if (!w) return std::nullopt;
          return f.outer->try_evaluate(*w);
        }
      },
      f_);
}

std::optional<Complex> HoloFunction::try_derivative(Complex z) const {
  return std::visit(
      [&](const auto& f) -> std::optional<Complex> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Identity>) {
          return Complex{1.0, 0.0};
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          Complex acc{};
          for (std::size_t k = f.coeffs.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * f.coeffs[k];
          return acc;
        } else if constexpr (std::is_same_v<T, Mobius>) {
          const Complex den = f.c * z + f.d;
          if (den == Complex{} || near_zero(den, std::abs(f.c * z) + std::abs(f.d))) return std::nullopt;
          return (f.a * f.d - f.b * f.c) / (den * den);
        } else {
          const auto w = f.inner->try_evaluate(z);
          const auto dw = f.inner->try_derivative(z);
          if (!w || !dw) return std::nullopt;
          const auto douter = f.outer->try_derivative(*w);
          if (!douter) return std::nullopt;
          return *douter * *dw;
        }
      },
      f_);
}

Complex HoloFunction::operator()(Complex z) const {
  if (auto w = try_evaluate(z)) return *w;
  throw SingularDataError(describe() + " has a pole at z = " + format(z));
}

Complex HoloFunction::derivative(Complex z) const {
  if (auto w = try_derivative(z)) return *w;
  throw SingularDataError(describe() + " has a pole at z = " + format(z));
}

std::string HoloFunction::describe() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Identity>) {
          return "identity";
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          return "polynomial of degree " + std::to_string(f.coeffs.size() - 1);
        } else if constexpr (std::is_same_v<T, Mobius>) {
          return "moebius";
        } else {
          return "compose(" + f.outer->describe() + ", " + f.inner->describe() + ")";
        }
      },
      f_);
}

HoloData HoloData::from_q(const TrivalentGraph& graph, std::vector<Complex> g, std::vector<Complex> q_edge,
                          Complex nu) {
  HoloData d;
  d.g = std::move(g);
  d.q_edge = std::move(q_edge);
  d.nu = nu;
  d.tau_edge.resize(graph.edge_count());
  for (std::size_t k = 0; k < graph.edge_count(); ++k) {
    const auto e = static_cast<EdgeId>(2 * k);
    const Complex delta = dg(graph, d, e);
    if (delta == Complex{}) throw SingularDataError("dg = 0 on edge " + std::to_string(k));
    d.tau_edge[k] = std::conj(d.q_edge[k] / (imag_unit * delta));
  }
  return d;
}

std::vector<Complex> evaluate_g(const TrivalentGraph& graph, const HoloFunction& f) {
  std::vector<Complex> g(graph.vertex_count());
  for (VertexId v = 0; v < static_cast<VertexId>(g.size()); ++v) {
    const auto w = f.try_evaluate(graph.z(v));
    if (!w) throw SingularDataError(f.describe() + " has a pole at vertex " + std::to_string(v));
    g[v] = *w;
  }
  for (std::size_t k = 0; k < graph.edge_count(); ++k) {
    const auto [a, b] = graph.edge_ends()[k];
    if (g[a] == g[b] || near_zero(g[b] - g[a], std::abs(g[a]) + std::abs(g[b])))
      throw SingularDataError("dg = 0 on edge " + std::to_string(k) + " (" + std::to_string(a) + ", " +
                              std::to_string(b) + ")");
  }
  return g;
}

std::array<Complex, 3> star_q(Complex g_center, const std::array<Complex, 3>& g_neighbors, Complex nu) {
  const Complex c1 = g_neighbors[0] - g_center;
  const Complex c2 = g_neighbors[1] - g_center;
  const Complex c3 = g_neighbors[2] - g_center;
  return {nu * c1 * (c3 - c2), nu * c2 * (c1 - c3), nu * c3 * (c2 - c1)};
}

namespace {

using NeighborG = std::function<Complex(VertexId v, int slot, const VertexStar& s)>;

HoloData solve_q_impl(const TrivalentGraph& graph, std::vector<Complex> g, Complex nu, bool use_lattice_stars,
                      const NeighborG& neighbor_g) {
  const std::size_t m = graph.edge_count();
  std::vector<Complex> q(m);
  std::vector<std::uint8_t> assigned(m, 0);

  // Stars are visited in vertex order; an edge takes its value from whichever
  // endpoint comes first among (canonical tail, head).
  std::vector<Complex> from_head(m);
  std::vector<std::uint8_t> has_head(m, 0);

  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    if (graph.degree(v) < 3 && !use_lattice_stars) continue;
    const auto s = graph.star(v);
    if (!s) continue;
    std::array<Complex, 3> gn;
    for (int a = 0; a < 3; ++a) {
      gn[a] = neighbor_g(v, a, *s);
      if (gn[a] == g[v] || near_zero(gn[a] - g[v], std::abs(gn[a]) + std::abs(g[v])))
        throw SingularDataError("c_a = 0 in the star of vertex " + std::to_string(v));
    }
    const auto qs = star_q(g[v], gn, nu);
    for (int a = 0; a < 3; ++a) {
      const EdgeId e = s->edge[a];
      if (e == no_edge) continue;
      const auto k = undirected(e);
      if (is_canonical(e)) {
        q[k] = qs[a];
        assigned[k] = 1;
      } else {
        from_head[k] = qs[a];
        has_head[k] = 1;
      }
    }
  }

  for (std::size_t k = 0; k < m; ++k) {
    if (assigned[k] && has_head[k]) {
      const double mag = std::max(std::abs(q[k]), std::abs(from_head[k]));
      if (std::abs(q[k] - from_head[k]) > 1e-10 * mag) {
        std::ostringstream msg;
        msg << "q disagrees between the stars of edge " << k << " (" << graph.edge_ends()[k][0] << ", "
            << graph.edge_ends()[k][1] << "): " << format(q[k]) << " vs " << format(from_head[k]);
        throw InconsistencyError(msg.str());
      }
    } else if (has_head[k]) {
      q[k] = from_head[k];
    } else if (!assigned[k]) {
      throw ValidationError("edge " + std::to_string(k) + " has no complete star at either endpoint");
    }
  }
  return HoloData::from_q(graph, std::move(g), std::move(q), nu);
}

}  // namespace

HoloData solve_q(const TrivalentGraph& graph, const HoloFunction& f, Complex nu) {
  auto g = evaluate_g(graph, f);
  const auto& gv = g;
  return solve_q_impl(graph, g, nu, true, [&](VertexId, int slot, const VertexStar& s) {
    if (s.edge[slot] != no_edge) return gv[graph.head(s.edge[slot])];
    return f(s.neighbor_z[slot]);
  });
}

HoloData solve_q(const TrivalentGraph& graph, std::span<const Complex> g_values, Complex nu) {
  if (g_values.size() != graph.vertex_count()) throw ValidationError("g_values must cover every vertex");
  std::vector<Complex> g(g_values.begin(), g_values.end());
  return solve_q_impl(graph, g, nu, false,
                      [&](VertexId, int slot, const VertexStar& s) { return g_values[graph.head(s.edge[slot])]; });
}

HoloResidual check_holomorphic(const HoloData& data, const TrivalentGraph& graph) {
  HoloResidual r;
  r.q_sum.assign(graph.vertex_count(), 0.0);
  r.tau_sum.assign(graph.vertex_count(), 0.0);
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    if (!graph.interior(v)) continue;
    Complex sq{}, st{};
    for (EdgeId e : graph.out_edges(v)) {
      sq += data.q(e);
      st += data.tau(e);
    }
    r.q_sum[v] = std::abs(sq);
    r.tau_sum[v] = std::abs(st);
    r.max_q = std::max(r.max_q, r.q_sum[v]);
    r.max_tau = std::max(r.max_tau, r.tau_sum[v]);
  }
  return r;
}

MobiusReport mobius_invariance_check(const TrivalentGraph& graph, const HoloFunction& f, const HoloFunction& m,
                                     Complex nu) {
  const HoloData original = solve_q(graph, f, nu);
  auto g_new = evaluate_g(graph, HoloFunction::compose(m, f));

  MobiusReport report;
  report.transformed = HoloData::from_q(graph, std::move(g_new), original.q_edge, nu);
  const HoloData& t = report.transformed;

  // Reference star: the interior vertex closest to the centroid.
  Complex centroid{};
  for (const auto& z : graph.coordinates()) centroid += z;
  centroid /= static_cast<double>(std::max<std::size_t>(graph.vertex_count(), 1));
  double best = 0.0;
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    if (!graph.interior(v)) continue;
    const double d = std::norm(graph.z(v) - centroid);
    if (report.reference_star == no_vertex || d < best) {
      report.reference_star = v;
      best = d;
    }
  }

  if (report.reference_star != no_vertex) {
    const VertexId v = report.reference_star;
    const auto out = graph.out_edges(v);
    std::array<Complex, 3> gn;
    for (int a = 0; a < 3; ++a) gn[a] = t.g[graph.head(out[a])];
    const auto basis = star_q(t.g[v], gn, {1.0, 0.0});
    Complex num{};
    double den = 0.0, norm_q = 0.0;
    for (int a = 0; a < 3; ++a) {
      num += std::conj(basis[a]) * t.q(out[a]);
      den += std::norm(basis[a]);
      norm_q += std::norm(t.q(out[a]));
    }
    report.nu_fit = den > 0.0 ? num / den : Complex{};
    double misfit = 0.0;
    for (int a = 0; a < 3; ++a) misfit += std::norm(t.q(out[a]) - report.nu_fit * basis[a]);
    report.fit_residual = norm_q > 0.0 ? std::sqrt(misfit / norm_q) : std::sqrt(misfit);
  }

  const auto res = check_holomorphic(t, graph);
  report.max_q = res.max_q;
  report.max_tau = res.max_tau;
  for (std::size_t k = 0; k < graph.edge_count(); ++k) {
    report.q_scale = std::max(report.q_scale, std::abs(t.q_edge[k]));
    report.tau_scale = std::max(report.tau_scale, std::abs(t.tau_edge[k]));
  }
  report.passed = report.max_q <= 1e-10 * report.q_scale && report.max_tau <= 1e-10 * report.tau_scale &&
                  report.fit_residual <= 1e-10;
  return report;
}

}  // namespace dharm
