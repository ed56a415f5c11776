#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dharm/convergence.hpp"
#include "dharm/curvature.hpp"
#include "dharm/faces.hpp"
#include "dharm/graph.hpp"
#include "dharm/holo.hpp"
#include "dharm/weierstrass.hpp"

namespace dharm {

using Json = nlohmann::ordered_json;

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

// {"vertices": [{"id", "re", "im", "interior"}], "edges": [[tail, head]],
//  "rotation": {"<id>": [undirected edge indices ccw]}, "lattice": {...}}
Json graph_to_json(const TrivalentGraph& graph);
TrivalentGraph graph_from_json(const Json& j);

Json lattice_to_json(const LatticeSpec& spec);
LatticeSpec lattice_from_json(const Json& j);

// {"kind": "identity"} | {"kind": "poly", "coeffs": [[re, im], ...]} |
// {"kind": "mobius", "a": [re, im], "b": ..., "c": ..., "d": ...} |
// {"kind": "compose", "outer": {...}, "inner": {...}}
Json holo_to_json(const HoloFunction& f);
HoloFunction holo_from_json(const Json& j);

// A complex number as [re, im] or a bare real.
Complex complex_from_json(const Json& j, const std::string& what);
Json complex_to_json(Complex z);

Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

// OBJ with a header comment, "v" per vertex, "vn" per vertex (pseudo-normals)
// and "f a//a b//b ..." per bounded face, counter-clockwise, 1-based.
void write_obj(std::ostream& os, const TrivalentGraph& graph, const FaceSet& faces, const std::vector<Vec3>& X,
               const std::vector<Vec3>& N);
std::string obj_string(const TrivalentGraph& graph, const FaceSet& faces, const std::vector<Vec3>& X,
                       const std::vector<Vec3>& N);
void export_obj(const TrivalentGraph& graph, const FaceSet& faces, const std::vector<Vec3>& X,
                const std::vector<Vec3>& N, const std::filesystem::path& path);

// level,lambda,vertices,err_X,err_N,err_H,err_X_paperformula,closure,balancing,energy,err_K
std::string convergence_csv(const ConvergenceReport& report);

// vertex,re,im,interior,H,K
std::string curvature_csv(const TrivalentGraph& graph, const CurvatureField& field);

// Everything a run may be configured with. Unknown keys are rejected.
struct Tolerances {
  double closure = 1e-12;    // relative to tolerance_scale
  double balancing = 1e-12;  // relative to tolerance_scale
  double holomorphic = 1e-12;
  double lemma61 = 1e-11;
  double path = 1e-10;  // relative to the edge length
};

struct RunConfig {
  LatticeSpec lattice{1.0, 1.7320508075688772, {0.0, 0.0}, 0.0, LatticeAnchor::face};
  HoloFunction g = HoloFunction::identity();
  Complex nu{1.0, 0.0};
  int levels = 5;
  Complex basepoint{0.0, 0.0};
  std::optional<CVec3> w0;
  std::filesystem::path out_dir = ".";
  Tolerances tolerances;
  double margin_factor = 0.5;
  double theta = 0.0;
  TreeOrder order = TreeOrder::breadth_first;
  int seed = 1;

  void validate() const;
};

// Overlays the keys present in j onto base. Throws ValidationError on an
// unknown key or a malformed value.
RunConfig run_config_from_json(const Json& j, RunConfig base = {});

}  // namespace dharm
