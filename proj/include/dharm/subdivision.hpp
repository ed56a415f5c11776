#pragma once

#include "dharm/graph.hpp"

namespace dharm {

struct SubdivisionOptions {
  // Inner polygon vertex = centroid + shrink * (original vertex - centroid).
  double shrink = 0.5;
};

// Goldberg-Coxeter step: an inner n-gon inside every bounded n-gon face, each
// inner vertex joined to its original vertex, all original edges removed.
//
// Only bounded faces are subdivided. An original vertex keeps one spoke per
// bounded face it lies on, so vertices on the outer boundary end up with
// degree 1 or 2 and vertices on no bounded face are dropped. Output ids: kept
// original vertices in their old order, then inner vertices face by face.
// Throws ValidationError on a vertex of degree > 3 and StructuralError on an
// inconsistent rotation system.
TrivalentGraph gc_subdivide(const TrivalentGraph& graph, const SubdivisionOptions& options = {});

// The level-n hexagonal lattice: edge length 4^-n lambda over the same disk.
TrivalentGraph hex_refine(const LatticeSpec& spec, int steps);

LatticeSpec refined_spec(const LatticeSpec& spec, int steps);

}  // namespace dharm
