#include "dharm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dharm/errors.hpp"

namespace dharm {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be a JSON object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!keys.contains(key)) throw ValidationError("unknown key \"" + key + "\" in " + where);
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw ValidationError(what + " must be a number");
  return j.get<double>();
}

template <class Int>
Int integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ValidationError(what + " must be an integer");
  return j.get<Int>();
}

const Json& required(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + " is missing \"" + key + "\"");
  return j.at(key);
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ValidationError(what + " must be a number or a [re, im] pair");
}

Json lattice_to_json(const LatticeSpec& spec) {
  Json j;
  j["edge_length"] = spec.edge_length;
  j["radius"] = spec.radius;
  j["center"] = complex_to_json(spec.center);
  j["orientation"] = spec.orientation;
  j["anchor"] = spec.anchor == LatticeAnchor::face ? "face" : "vertex";
  return j;
}

LatticeSpec lattice_from_json(const Json& j) {
  reject_unknown(j, {"edge_length", "radius", "center", "orientation", "anchor"}, "lattice");
  LatticeSpec spec;
  if (j.contains("edge_length")) spec.edge_length = number(j["edge_length"], "lattice.edge_length");
  if (j.contains("radius")) spec.radius = number(j["radius"], "lattice.radius");
  if (j.contains("center")) spec.center = complex_from_json(j["center"], "lattice.center");
  if (j.contains("orientation")) spec.orientation = number(j["orientation"], "lattice.orientation");
  if (j.contains("anchor")) {
    const auto& a = j["anchor"];
    if (a == "face")
      spec.anchor = LatticeAnchor::face;
    else if (a == "vertex")
      spec.anchor = LatticeAnchor::vertex;
    else
      throw ValidationError("lattice.anchor must be \"face\" or \"vertex\"");
  }
  spec.validate();
  return spec;
}

Json graph_to_json(const TrivalentGraph& graph) {
  Json j;
  Json vertices = Json::array();
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    Json vj;
    vj["id"] = v;
    vj["re"] = graph.z(v).real();
    vj["im"] = graph.z(v).imag();
    vj["interior"] = graph.interior(v);
    vertices.push_back(std::move(vj));
  }
  j["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (const auto& [a, b] : graph.edge_ends()) edges.push_back(Json::array({a, b}));
  j["edges"] = std::move(edges);
  Json rotation = Json::object();
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    Json around = Json::array();
    for (EdgeId e : graph.out_edges(v)) around.push_back(undirected(e));
    rotation[std::to_string(v)] = std::move(around);
  }
  j["rotation"] = std::move(rotation);
  if (graph.lattice()) j["lattice"] = lattice_to_json(*graph.lattice());
  return j;
}

TrivalentGraph graph_from_json(const Json& j) {
  reject_unknown(j, {"vertices", "edges", "rotation", "lattice"}, "graph");
  const Json& vertices = required(j, "vertices", "graph");
  const Json& edges = required(j, "edges", "graph");
  const Json& rotation = required(j, "rotation", "graph");
  if (!vertices.is_array() || !edges.is_array() || !rotation.is_object())
    throw ValidationError("graph: vertices and edges must be arrays, rotation an object");

  const std::size_t n = vertices.size();
  std::vector<Complex> coords(n);
  std::vector<bool> interior(n, false);
  std::vector<std::uint8_t> seen(n, 0);
  for (const auto& vj : vertices) {
    reject_unknown(vj, {"id", "re", "im", "interior"}, "vertex");
    const auto id = integer<long long>(required(vj, "id", "vertex"), "vertex id");
    if (id < 0 || static_cast<std::size_t>(id) >= n) throw ValidationError("vertex id " + std::to_string(id) + " out of range");
    if (seen[id]) throw ValidationError("vertex id " + std::to_string(id) + " repeated");
    seen[id] = 1;
    const std::string label = "vertex " + std::to_string(id);
    coords[id] = {number(required(vj, "re", label), label + " re"), number(required(vj, "im", label), label + " im")};
    if (vj.contains("interior")) {
      if (!vj["interior"].is_boolean()) throw ValidationError(label + " interior must be a boolean");
      interior[id] = vj["interior"].get<bool>();
    }
  }

  std::vector<TrivalentGraph::EdgeEnds> ends;
  ends.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& ej = edges[k];
    if (!ej.is_array() || ej.size() != 2) throw ValidationError("edge " + std::to_string(k) + " must be [tail, head]");
    ends.push_back({integer<VertexId>(ej[0], "edge endpoint"), integer<VertexId>(ej[1], "edge endpoint")});
  }

  std::vector<std::vector<std::int32_t>> around(n);
  for (const auto& [key, value] : rotation.items()) {
    std::size_t v = 0;
    const auto res = std::from_chars(key.data(), key.data() + key.size(), v);
    if (res.ec != std::errc{} || res.ptr != key.data() + key.size() || v >= n)
      throw ValidationError("rotation key \"" + key + "\" is not a vertex id");
    if (!value.is_array()) throw ValidationError("rotation of vertex " + key + " must be an array");
    for (const auto& k : value) around[v].push_back(integer<std::int32_t>(k, "rotation entry"));
  }

  TrivalentGraph graph = TrivalentGraph::from_rotation(std::move(coords), std::move(ends), around, interior);
  if (j.contains("lattice")) graph.set_lattice(lattice_from_json(j["lattice"]));
  return graph;
}

Json holo_to_json(const HoloFunction& f) {
  return std::visit(
      [](const auto& h) -> Json {
        using T = std::decay_t<decltype(h)>;
        Json j;
        if constexpr (std::is_same_v<T, HoloFunction::Identity>) {
          j["kind"] = "identity";
        } else if constexpr (std::is_same_v<T, HoloFunction::Polynomial>) {
          j["kind"] = "poly";
          Json coeffs = Json::array();
          for (Complex c : h.coeffs) coeffs.push_back(complex_to_json(c));
          j["coeffs"] = std::move(coeffs);
        } else if constexpr (std::is_same_v<T, HoloFunction::Mobius>) {
          j["kind"] = "mobius";
          j["a"] = complex_to_json(h.a);
          j["b"] = complex_to_json(h.b);
          j["c"] = complex_to_json(h.c);
          j["d"] = complex_to_json(h.d);
        } else {
          j["kind"] = "compose";
          j["outer"] = holo_to_json(*h.outer);
          j["inner"] = holo_to_json(*h.inner);
        }
        return j;
      },
      f.variant());
}

HoloFunction holo_from_json(const Json& j) {
  if (j.is_string()) {
    if (j == "identity" || j == "z") return HoloFunction::identity();
    throw ValidationError("unknown function name \"" + j.get<std::string>() + "\"");
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ValidationError("function description needs a \"kind\"");
  const std::string kind = j["kind"];
  if (kind == "identity") {
    reject_unknown(j, {"kind"}, "identity");
    return HoloFunction::identity();
  }
  if (kind == "poly") {
    reject_unknown(j, {"kind", "coeffs"}, "poly");
    const Json& cj = required(j, "coeffs", "poly");
    if (!cj.is_array()) throw ValidationError("poly coeffs must be an array");
    std::vector<Complex> coeffs;
    for (const auto& c : cj) coeffs.push_back(complex_from_json(c, "poly coefficient"));
    return HoloFunction::polynomial(std::move(coeffs));
  }
  if (kind == "mobius") {
    reject_unknown(j, {"kind", "a", "b", "c", "d"}, "mobius");
    return HoloFunction::mobius(complex_from_json(required(j, "a", "mobius"), "mobius a"),
                                complex_from_json(required(j, "b", "mobius"), "mobius b"),
                                complex_from_json(required(j, "c", "mobius"), "mobius c"),
                                complex_from_json(required(j, "d", "mobius"), "mobius d"));
  }
  if (kind == "compose") {
    reject_unknown(j, {"kind", "outer", "inner"}, "compose");
    return HoloFunction::compose(holo_from_json(required(j, "outer", "compose")),
                                 holo_from_json(required(j, "inner", "compose")));
  }
  throw ValidationError("unknown function kind \"" + kind + "\"");
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
  if (!out) throw ValidationError("write to " + path.string() + " failed");
}

void write_obj(std::ostream& os, const TrivalentGraph& graph, const FaceSet& faces, const std::vector<Vec3>& X,
               const std::vector<Vec3>& N) {
  if (X.size() != graph.vertex_count() || N.size() != graph.vertex_count())
    throw ValidationError("surface does not match the graph");
  os << "# discrete harmonic surface\n";
  os << "# vn lines hold the pseudo-normals N(g) per vertex; they are not surface normals\n";
  os << "# vertices " << graph.vertex_count() << " faces " << faces.bounded_count() << "\n";
  std::string line;
  auto triple = [&](const char* tag, const Vec3& p) {
    line = tag;
    for (int i = 0; i < 3; ++i) {
      line += ' ';
      line += format_double(p[i]);
    }
    line += '\n';
    os << line;
  };
  for (const auto& p : X) triple("v", p);
  for (const auto& n : N) triple("vn", n);
  for (std::size_t f = 0; f < faces.bounded_count(); ++f) {
    line = "f";
    for (EdgeId e : faces.edges(f)) {
      const auto idx = std::to_string(graph.tail(e) + 1);
      line += ' ';
      line += idx;
      line += "//";
      line += idx;
    }
    line += '\n';
    os << line;
  }
}

std::string obj_string(const TrivalentGraph& graph, const FaceSet& faces, const std::vector<Vec3>& X,
                       const std::vector<Vec3>& N) {
  std::ostringstream os;
  write_obj(os, graph, faces, X, N);
  return os.str();
}

void export_obj(const TrivalentGraph& graph, const FaceSet& faces, const std::vector<Vec3>& X,
                const std::vector<Vec3>& N, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  write_obj(out, graph, faces, X, N);
  if (!out) throw ValidationError("write to " + path.string() + " failed");
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::string s = "level,lambda,vertices,err_X,err_N,err_H,err_X_paperformula,closure,balancing,energy,err_K\n";
  for (const auto& r : report.rows) {
    const SupErrors& e = r.restricted;
    s += std::to_string(r.level) + ',' + format_double(r.lambda) + ',' + std::to_string(r.vertices) + ',' +
         format_double(e.x) + ',' + format_double(e.n) + ',' + format_double(e.h) + ',' + format_double(e.x_paper) +
         ',' + format_double(r.closure) + ',' + format_double(r.balancing) + ',' + format_double(r.energy) + ',' +
         format_double(e.k) + '\n';
  }
  return s;
}

std::string curvature_csv(const TrivalentGraph& graph, const CurvatureField& field) {
  std::string s = "vertex,re,im,interior,H,K\n";
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v)
    s += std::to_string(v) + ',' + format_double(graph.z(v).real()) + ',' + format_double(graph.z(v).imag()) + ',' +
         (graph.interior(v) ? "1" : "0") + ',' + format_double(field.H[v]) + ',' + format_double(field.K[v]) + '\n';
  return s;
}

void RunConfig::validate() const {
  lattice.validate();
  if (levels < 0 || levels > max_pipeline_level)
    throw ValidationError("levels must lie in [0, " + std::to_string(max_pipeline_level) + "]");
  if (!(margin_factor >= 0.0)) throw ValidationError("margin must be >= 0");
  if (!std::isfinite(theta)) throw ValidationError("theta must be finite");
  if (!std::isfinite(nu.real()) || !std::isfinite(nu.imag())) throw ValidationError("nu must be finite");
  for (double t : {tolerances.closure, tolerances.balancing, tolerances.holomorphic, tolerances.lemma61,
                   tolerances.path})
    if (!(t > 0.0)) throw ValidationError("tolerances must be positive");
}

RunConfig run_config_from_json(const Json& j, RunConfig c) {
  reject_unknown(j,
                 {"lattice", "g", "nu", "levels", "basepoint", "w0", "out_dir", "tolerances", "margin", "theta",
                  "tree", "seed"},
                 "config");
  if (j.contains("lattice")) {
    Json merged = lattice_to_json(c.lattice);
    reject_unknown(j["lattice"], {"edge_length", "radius", "center", "orientation", "anchor"}, "lattice");
    for (const auto& [key, value] : j["lattice"].items()) merged[key] = value;
    c.lattice = lattice_from_json(merged);
  }
  if (j.contains("g")) c.g = holo_from_json(j["g"]);
  if (j.contains("nu")) c.nu = complex_from_json(j["nu"], "nu");
  if (j.contains("levels")) c.levels = integer<int>(j["levels"], "levels");
  if (j.contains("basepoint")) c.basepoint = complex_from_json(j["basepoint"], "basepoint");
  if (j.contains("w0")) {
    const auto& wj = j["w0"];
    if (!wj.is_array() || wj.size() != 3) throw ValidationError("w0 must hold three complex entries");
    CVec3 w;
    for (int i = 0; i < 3; ++i) w[i] = complex_from_json(wj[i], "w0 entry");
    c.w0 = w;
  }
  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string()) throw ValidationError("out_dir must be a string");
    c.out_dir = j["out_dir"].get<std::string>();
  }
  if (j.contains("tolerances")) {
    const auto& tj = j["tolerances"];
    reject_unknown(tj, {"closure", "balancing", "holomorphic", "normal_identity", "lemma61", "path"}, "tolerances");
    if (tj.contains("closure")) c.tolerances.closure = number(tj["closure"], "tolerances.closure");
    if (tj.contains("balancing")) c.tolerances.balancing = number(tj["balancing"], "tolerances.balancing");
    if (tj.contains("holomorphic")) c.tolerances.holomorphic = number(tj["holomorphic"], "tolerances.holomorphic");
    // older key kept as an alias
    if (tj.contains("lemma61")) c.tolerances.lemma61 = number(tj["lemma61"], "tolerances.lemma61");
    if (tj.contains("normal_identity"))
      c.tolerances.lemma61 = number(tj["normal_identity"], "tolerances.normal_identity");
    if (tj.contains("path")) c.tolerances.path = number(tj["path"], "tolerances.path");
  }
  if (j.contains("margin")) c.margin_factor = number(j["margin"], "margin");
  if (j.contains("theta")) c.theta = number(j["theta"], "theta");
  if (j.contains("tree")) {
    if (j["tree"] == "bfs")
      c.order = TreeOrder::breadth_first;
    else if (j["tree"] == "dfs")
      c.order = TreeOrder::depth_first;
    else
      throw ValidationError("tree must be \"bfs\" or \"dfs\"");
  }
  if (j.contains("seed")) c.seed = integer<int>(j["seed"], "seed");
  c.validate();
  return c;
}

}  // namespace dharm
