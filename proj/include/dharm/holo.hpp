#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dharm/graph.hpp"

namespace dharm {

// A holomorphic map C -> C: identity, polynomial, Moebius transform, or a
// composition of these.
class HoloFunction {
 public:
  struct Identity {};
  struct Polynomial {
    std::vector<Complex> coeffs;  // coeffs[k] multiplies z^k
  };
  struct Mobius {
    Complex a, b, c, d;  // (a z + b) / (c z + d)
  };
  struct Composition {
    std::shared_ptr<const HoloFunction> outer, inner;  // outer(inner(z))
  };
  using Variant = std::variant<Identity, Polynomial, Mobius, Composition>;

  HoloFunction() : f_(Identity{}) {}

  static HoloFunction identity() { return HoloFunction(Identity{}); }
  static HoloFunction polynomial(std::vector<Complex> coeffs);
  // Throws ValidationError when ad - bc == 0.
  static HoloFunction mobius(Complex a, Complex b, Complex c, Complex d);
  static HoloFunction compose(HoloFunction outer, HoloFunction inner);

  // nullopt at a pole.
  std::optional<Complex> try_evaluate(Complex z) const;
  std::optional<Complex> try_derivative(Complex z) const;

  // Throw SingularDataError at a pole.
  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;

  const Variant& variant() const { return f_; }
  std::string describe() const;

 private:
  explicit HoloFunction(Variant f) : f_(std::move(f)) {}
  Variant f_;
};

// Discrete holomorphic quadratic differential associated with g.
//
// q is stored once per undirected edge. With the per-star solution of the
// holomorphicity equations and a counter-clockwise rotation at every vertex,
// the two endpoint stars assign the same value to both orientations, so
// q(reverse(e)) == q(e); tau = conj(q / (i dg)) is then antisymmetric and so is
// dF. Both accessors below encode this.
struct HoloData {
  std::vector<Complex> g;         // per vertex
  std::vector<Complex> q_edge;    // per undirected edge
  std::vector<Complex> tau_edge;  // per undirected edge, canonical orientation
  Complex nu{1.0, 0.0};

  Complex q(EdgeId e) const { return q_edge[undirected(e)]; }
  Complex tau(EdgeId e) const { return is_canonical(e) ? tau_edge[undirected(e)] : -tau_edge[undirected(e)]; }

  // Rebuilds tau from q and g: tau(e) = conj(q(e) / (i dg(e))).
  static HoloData from_q(const TrivalentGraph& graph, std::vector<Complex> g, std::vector<Complex> q_edge,
                         Complex nu);
};

inline Complex dg(const TrivalentGraph& graph, const HoloData& data, EdgeId e) {
  return data.g[graph.head(e)] - data.g[graph.tail(e)];
}

// g at every vertex. Throws SingularDataError naming the vertex at a pole or
// the edge where dg == 0.
std::vector<Complex> evaluate_g(const TrivalentGraph& graph, const HoloFunction& f);

// Closed-form solution of sum q = 0 and sum q / c = 0 on one star, with
// c_a = g(v_a) - g(v) in counter-clockwise order.
std::array<Complex, 3> star_q(Complex g_center, const std::array<Complex, 3>& g_neighbors, Complex nu);

// Per-star q on every edge. A boundary vertex of a lattice graph contributes
// its lattice-completed star (g evaluated at the missing neighbor). The value
// from the canonical tail's star wins; the other endpoint's star must agree to
// 1e-10 relative or InconsistencyError is thrown.
HoloData solve_q(const TrivalentGraph& graph, const HoloFunction& f, Complex nu = {1.0, 0.0});

// Same, with only the stars of degree-3 vertices available.
HoloData solve_q(const TrivalentGraph& graph, std::span<const Complex> g_values, Complex nu = {1.0, 0.0});

struct HoloResidual {
  std::vector<double> q_sum;    // |sum_{E_v} q| per vertex, 0 at boundary vertices
  std::vector<double> tau_sum;  // |sum_{E_v} tau| per vertex, 0 at boundary vertices
  double max_q = 0.0;
  double max_tau = 0.0;
};

HoloResidual check_holomorphic(const HoloData& data, const TrivalentGraph& graph);

struct MobiusReport {
  Complex nu_fit;              // least-squares scalar on the reference star
  VertexId reference_star = no_vertex;
  double fit_residual = 0.0;   // relative misfit of the transported q on that star
  double max_q = 0.0;          // holomorphicity residuals of the transported data
  double max_tau = 0.0;
  double q_scale = 0.0;        // max |q'| and max |tau'|
  double tau_scale = 0.0;
  bool passed = false;
  HoloData transformed;
};

// The differential q is carried over unchanged to g' = m o f, tau' is rebuilt
// from dg', and sum q' = sum tau' = 0 is checked at interior vertices to
// 1e-10 relative to the largest |q'| and |tau'|.
MobiusReport mobius_invariance_check(const TrivalentGraph& graph, const HoloFunction& f, const HoloFunction& m,
                                     Complex nu = {1.0, 0.0});

}  // namespace dharm
