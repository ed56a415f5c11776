#include "dharm/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "dharm/convergence.hpp"
#include "dharm/curvature.hpp"
#include "dharm/errors.hpp"
#include "dharm/faces.hpp"
#include "dharm/subdivision.hpp"
#include "dharm/weierstrass.hpp"

namespace dharm {

namespace {

std::string sci(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

CheckOutcome bound(std::string name, double value, double limit) {
  return {std::move(name), value <= limit, false, sci(value) + " <= " + sci(limit)};
}

HoloFunction random_mobius(std::mt19937_64& rng, const TrivalentGraph& graph, const HoloFunction& f) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double reach = 0.0;
  for (const auto& z : graph.coordinates()) {
    const auto w = f.try_evaluate(z);
    if (w) reach = std::max(reach, std::abs(*w));
  }
  for (;;) {
    const Complex a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng)), d(u(rng), u(rng));
    if (std::abs(a * d - b * c) < 0.1) continue;
    // keep the pole well away from the values of f
    if (std::abs(c) > 0.0 && std::abs(d / c) < 2.0 * reach + 1.0) continue;
    return HoloFunction::mobius(a, b, c, d);
  }
}

}  // namespace

std::vector<CheckOutcome> run_checks(const TrivalentGraph& graph, const RunConfig& config) {
  std::vector<CheckOutcome> out;
  const auto& tol = config.tolerances;

  const FaceSet face_set = faces(graph);
  out.push_back({"faces", true, false,
                 std::to_string(face_set.bounded_count()) + " bounded faces, Euler characteristic 2"});

  const HoloData holo = solve_q(graph, config.g, config.nu);
  const double scale = tolerance_scale(graph, holo);
  const double lambda = graph.mean_edge_length();

  const HoloResidual hr = check_holomorphic(holo, graph);
  out.push_back(bound("holomorphic sum q", hr.max_q, tol.holomorphic * scale));
  out.push_back(bound("holomorphic sum tau", hr.max_tau, tol.holomorphic * scale));

  const EdgeDifferential dF = compute_dF(graph, holo);
  out.push_back(bound("dF antisymmetry", dF.antisymmetry_defect, 1e-14));
  out.push_back(bound("closure", closure_residual(graph, face_set, dF).max, tol.closure * scale));
  out.push_back(bound("star sum dF", star_sum_residual(graph, dF).max, tol.balancing * scale));

  const EdgeCheck l61 = lemma61_check(graph, holo, dF);
  auto l61_outcome = bound("lemma 6.1 identity", l61.max, tol.lemma61);
  if (l61.skipped) l61_outcome.detail += " (" + std::to_string(l61.skipped) + " edges with q = 0 skipped)";
  out.push_back(l61_outcome);

  if (std::holds_alternative<HoloFunction::Identity>(config.g.variant()))
    out.push_back(bound("normal component", normal_component_check(graph, holo, dF).max, tol.balancing * scale));
  else
    out.push_back({"normal component", true, true, "only defined for g = z"});

  const VertexId base = nearest_vertex(graph, config.basepoint);
  const CVec3 w0 = config.w0.value_or(CVec3::Zero());
  const DiscreteSurface bfs = integrate_surface(graph, holo, dF, base, w0, TreeOrder::breadth_first);
  out.push_back(bound("balancing", balancing_residual(bfs.X, graph).max, tol.balancing * scale));

  double unit = 0.0, min_angle = std::numbers::pi;
  for (const auto& n : bfs.N) unit = std::max(unit, std::abs(n.norm() - 1.0));
  for (const auto& [a, b] : graph.edge_ends())
    min_angle = std::min(min_angle, std::acos(std::clamp(bfs.N[a].dot(bfs.N[b]), -1.0, 1.0)));
  out.push_back(bound("pseudo-normal unit length", unit, 1e-12));
  out.push_back({"pseudo-normal non-degenerate", min_angle > 0.0, false, "min adjacent angle " + sci(min_angle)});

  const DiscreteSurface dfs = integrate_surface(graph, holo, dF, base, w0, TreeOrder::depth_first);
  double path = 0.0;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) path = std::max(path, (bfs.X[v] - dfs.X[v]).norm());
  out.push_back(bound("path independence", path, tol.path * lambda));

  const DiscreteSurface conj = associated_family(graph, holo, dF, base, w0, std::numbers::pi / 2);
  out.push_back(bound("conjugate surface balancing", balancing_residual(conj.X, graph).max, tol.balancing * scale));

  const CurvatureField curv = curvature_field(graph, bfs.X, bfs.N);
  out.push_back({"curvature defined", curv.degenerate == 0, false,
                 std::to_string(curv.degenerate) + " degenerate interior stars"});

  std::mt19937_64 rng(static_cast<std::uint64_t>(config.seed));
  int passed = 0;
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const MobiusReport m = mobius_invariance_check(graph, config.g, random_mobius(rng, graph, config.g), config.nu);
    passed += m.passed ? 1 : 0;
    worst = std::max({worst, m.fit_residual, m.q_scale > 0 ? m.max_q / m.q_scale : 0.0,
                      m.tau_scale > 0 ? m.max_tau / m.tau_scale : 0.0});
  }
  out.push_back({"moebius invariance", passed == 5, false,
                 std::to_string(passed) + "/5 maps, worst relative residual " + sci(worst)});
  return out;
}

int worker_count_from_env() {
  const char* env = std::getenv("DW_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw ValidationError(std::string("DW_THREADS must be a positive integer, got \"") + env + "\"");
  return static_cast<int>(n);
}

namespace {

Complex parse_complex(std::string text, const std::string& what) {
  if (!text.empty() && text.front() != '[' && text.find(',') != std::string::npos) text = "[" + text + "]";
  try {
    return complex_from_json(Json::parse(text), what);
  } catch (const Json::parse_error&) {
    throw ValidationError(what + ": cannot parse \"" + text + "\"");
  }
}

HoloFunction parse_function(const std::string& text) {
  if (text.empty()) throw ValidationError("empty function description");
  if (text.front() == '@') return holo_from_json(read_json(text.substr(1)));
  if (text.front() == '{') {
    try {
      return holo_from_json(Json::parse(text));
    } catch (const Json::parse_error& e) {
      throw ValidationError(std::string("function description: ") + e.what());
    }
  }
  return holo_from_json(Json(text));
}

struct Flags {
  std::optional<std::string> config;
  std::optional<double> lambda, radius, orientation, margin, theta, shrink;
  std::optional<std::string> center, anchor, g, nu, basepoint, tree, out_dir;
  std::optional<int> levels, seed;
  std::string in, out;
  int steps = 1;
};

RunConfig resolve(const Flags& f, LatticeAnchor default_anchor) {
  RunConfig c;
  c.lattice.anchor = default_anchor;
  if (f.config) c = run_config_from_json(read_json(*f.config), c);
  if (f.lambda) c.lattice.edge_length = *f.lambda;
  if (f.radius) c.lattice.radius = *f.radius;
  if (f.orientation) c.lattice.orientation = *f.orientation;
  if (f.center) c.lattice.center = parse_complex(*f.center, "--center");
  if (f.anchor) {
    if (*f.anchor == "face")
      c.lattice.anchor = LatticeAnchor::face;
    else if (*f.anchor == "vertex")
      c.lattice.anchor = LatticeAnchor::vertex;
    else
      throw ValidationError("--anchor must be face or vertex");
  }
  if (f.g) c.g = parse_function(*f.g);
  if (f.nu) c.nu = parse_complex(*f.nu, "--nu");
  if (f.basepoint) c.basepoint = parse_complex(*f.basepoint, "--basepoint");
  if (f.levels) c.levels = *f.levels;
  if (f.seed) c.seed = *f.seed;
  if (f.margin) c.margin_factor = *f.margin;
  if (f.theta) c.theta = *f.theta;
  if (f.out_dir) c.out_dir = *f.out_dir;
  if (f.tree) {
    if (*f.tree == "bfs")
      c.order = TreeOrder::breadth_first;
    else if (*f.tree == "dfs")
      c.order = TreeOrder::depth_first;
    else
      throw ValidationError("--tree must be bfs or dfs");
  }
  c.validate();
  return c;
}

TrivalentGraph load_graph(const Flags& f, const RunConfig& c) {
  if (!f.in.empty()) return graph_from_json(read_json(f.in));
  return build_hex_lattice(c.lattice);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_text(path, text);
}

struct Surfaced {
  TrivalentGraph graph;
  HoloData holo;
  EdgeDifferential dF;
  FaceSet faces;
  VertexId base;
};

Surfaced prepare(const Flags& f, const RunConfig& c, std::ostream& err) {
  Surfaced s{load_graph(f, c), {}, {}, {}, no_vertex};
  s.holo = solve_q(s.graph, c.g, c.nu);
  s.dF = compute_dF(s.graph, s.holo);
  s.faces = faces(s.graph);
  const double closure = closure_residual(s.graph, s.faces, s.dF).max;
  const double limit = c.tolerances.closure * tolerance_scale(s.graph, s.holo);
  if (closure > limit)
    err << "warning: closure residual " << sci(closure) << " above " << sci(limit)
        << "; the surface depends on the integration path\n";
  s.base = nearest_vertex(s.graph, c.basepoint);
  return s;
}

void add_lattice(CLI::App* sub, Flags& f) {
  sub->add_option("--lambda", f.lambda, "lattice edge length");
  sub->add_option("--radius", f.radius, "disk radius");
  sub->add_option("--center", f.center, "disk center re,im");
  sub->add_option("--orientation", f.orientation, "lattice orientation (radians)");
  sub->add_option("--anchor", f.anchor, "face or vertex at the center");
}

void add_data(CLI::App* sub, Flags& f) {
  sub->add_option("--g", f.g, "identity, inline JSON, or @file.json");
  sub->add_option("--nu", f.nu, "scalar nu as re or re,im");
  sub->add_option("--basepoint", f.basepoint, "integration base point re,im");
  sub->add_option("--tree", f.tree, "spanning tree order: bfs or dfs");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete harmonic surfaces on trivalent graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "JSON run configuration");

  auto* build = app.add_subcommand("build", "hexagonal lattice graph as JSON");
  add_lattice(build, f);
  build->add_option("--out", f.out, "output JSON (stdout if omitted)");

  auto* surface = app.add_subcommand("surface", "Weierstrass surface as OBJ");
  add_lattice(surface, f);
  add_data(surface, f);
  surface->add_option("--in", f.in, "graph JSON (lattice from flags if omitted)");
  surface->add_option("--out", f.out, "output OBJ")->required();

  auto* subdivide = app.add_subcommand("subdivide", "Goldberg-Coxeter child graph");
  subdivide->add_option("--in", f.in, "graph JSON")->required();
  subdivide->add_option("--out", f.out, "output JSON (stdout if omitted)");
  subdivide->add_option("--steps", f.steps, "number of subdivision steps")->check(CLI::NonNegativeNumber);
  subdivide->add_option("--shrink", f.shrink, "inner polygon scale in (0, 1)");

  auto* curvature = app.add_subcommand("curvature", "per-vertex H and K as CSV");
  add_lattice(curvature, f);
  add_data(curvature, f);
  curvature->add_option("--in", f.in, "graph JSON (lattice from flags if omitted)");
  curvature->add_option("--out", f.out, "output CSV (stdout if omitted)");

  auto* check = app.add_subcommand("check", "run every invariant suite");
  add_lattice(check, f);
  add_data(check, f);
  check->add_option("--in", f.in, "graph JSON (lattice from flags if omitted)");
  check->add_option("--seed", f.seed, "seed for the random Moebius maps");

  auto* converge = app.add_subcommand("converge", "refinement study: CSV and one OBJ per level");
  add_lattice(converge, f);
  add_data(converge, f);
  converge->add_option("--levels", f.levels, "last level (inclusive)");
  converge->add_option("--margin", f.margin, "error restriction margin in units of the level edge length");
  converge->add_option("--out-dir", f.out_dir, "output directory");

  auto* family = app.add_subcommand("family", "associated family member as OBJ");
  add_lattice(family, f);
  add_data(family, f);
  family->add_option("--in", f.in, "graph JSON (lattice from flags if omitted)");
  family->add_option("--theta", f.theta, "family angle (radians)")->required();
  family->add_option("--out", f.out, "output OBJ")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    worker_count_from_env();
    // The refinement study needs an interior vertex already at level 0.
    const RunConfig c = resolve(f, converge->parsed() ? LatticeAnchor::vertex : LatticeAnchor::face);

    if (build->parsed()) {
      emit(f.out, graph_to_json(build_hex_lattice(c.lattice)).dump(1) + "\n", out);
      return 0;
    }

    if (subdivide->parsed()) {
      SubdivisionOptions opt;
      if (f.shrink) opt.shrink = *f.shrink;
      if (!(opt.shrink > 0.0 && opt.shrink < 1.0)) throw ValidationError("--shrink must lie in (0, 1)");
      TrivalentGraph g = graph_from_json(read_json(f.in));
      for (int i = 0; i < f.steps; ++i) g = gc_subdivide(g, opt);
      emit(f.out, graph_to_json(g).dump(1) + "\n", out);
      return 0;
    }

    if (surface->parsed() || family->parsed()) {
      const Surfaced s = prepare(f, c, err);
      const CVec3 w0 = c.w0.value_or(CVec3::Zero());
      const DiscreteSurface surf = surface->parsed()
                                       ? integrate_surface(s.graph, s.holo, s.dF, s.base, w0, c.order)
                                       : associated_family(s.graph, s.holo, s.dF, s.base, w0, c.theta, c.order);
      export_obj(s.graph, s.faces, surf.X, surf.N, f.out);
      out << "wrote " << f.out << ": " << s.graph.vertex_count() << " vertices, " << s.faces.bounded_count()
          << " faces\n";
      return 0;
    }

    if (curvature->parsed()) {
      const Surfaced s = prepare(f, c, err);
      const DiscreteSurface surf =
          integrate_surface(s.graph, s.holo, s.dF, s.base, c.w0.value_or(CVec3::Zero()), c.order);
      emit(f.out, curvature_csv(s.graph, curvature_field(s.graph, surf.X, surf.N)), out);
      return 0;
    }

    if (check->parsed()) {
      const TrivalentGraph g = load_graph(f, c);
      int failed = 0;
      for (const auto& r : run_checks(g, c)) {
        out << (r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail << "\n";
        failed += r.passed ? 0 : 1;
      }
      if (failed) {
        err << failed << " check(s) failed\n";
        return 2;
      }
      return 0;
    }

    if (converge->parsed()) {
      std::filesystem::create_directories(c.out_dir);
      PipelineConfig p;
      p.spec = c.lattice;
      p.g = c.g;
      p.nu = c.nu;
      p.levels = c.levels;
      p.margin_factor = c.margin_factor;
      p.basepoint = c.basepoint;
      p.closure_tol = c.tolerances.closure;
      p.order = c.order;
      const auto report = run_pipeline(p, [&](const LevelData& d) {
        export_obj(d.graph, d.faces, d.surface.X, d.surface.N,
                   c.out_dir / ("level_" + std::to_string(d.level) + ".obj"));
      });
      write_text(c.out_dir / "convergence.csv", convergence_csv(report));
      out << "calibrated Q = " << format_double(report.calibration.c.real()) << " + "
          << format_double(report.calibration.c.imag()) << "i, fit residual " << sci(report.calibration.residual)
          << "\n";
      for (const auto& r : report.rows)
        out << "level " << r.level << ": " << r.vertices << " vertices, err_X " << sci(r.restricted.x) << ", err_N "
            << sci(r.restricted.n) << ", err_H " << sci(r.restricted.h) << "\n";
      if (report.aborted) {
        err << "aborted: " << report.abort_reason << "\n";
        return 2;
      }
      return 0;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace dharm
