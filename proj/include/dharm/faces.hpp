#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dharm/graph.hpp"

namespace dharm {

// Faces of the planar embedding stored as oriented edge cycles (face on the
// left of every edge) in compressed-row form. Bounded faces are traversed
// counter-clockwise; unbounded faces (one per connected component) are kept
// separately.
class FaceSet {
 public:
  std::size_t bounded_count() const { return offsets_.size() - 1; }
  std::size_t unbounded_count() const { return outer_.size(); }

  std::span<const EdgeId> edges(std::size_t f) const {
    return {edges_.data() + offsets_[f], offsets_[f + 1] - offsets_[f]};
  }
  std::size_t size(std::size_t f) const { return offsets_[f + 1] - offsets_[f]; }
  std::vector<VertexId> vertices(const TrivalentGraph& g, std::size_t f) const;

  const std::vector<std::vector<EdgeId>>& unbounded() const { return outer_; }

  // Bounded face index to the left of oriented edge e, or -1 for unbounded.
  std::int32_t face_of(EdgeId e) const { return left_[e]; }

 private:
  friend FaceSet faces(const TrivalentGraph& graph);

  std::vector<EdgeId> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::vector<EdgeId>> outer_;
  std::vector<std::int32_t> left_;
};

// Traverses the rotation system. Throws StructuralError when the rotation
// system is not a planar embedding consistent with the coordinates: a face
// with non-positive area that is not the outer face of its component, a
// bounded face that is not a simple cycle, or an Euler characteristic != 2
// per component.
FaceSet faces(const TrivalentGraph& graph);

}  // namespace dharm
