#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dharm {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

// Dense vertex index.
using VertexId = std::int32_t;

// Oriented edge index. Undirected edge k owns the pair (2k, 2k+1); the reverse
// of e is e ^ 1.
using EdgeId = std::int32_t;

inline constexpr VertexId no_vertex = -1;
inline constexpr EdgeId no_edge = -1;

inline constexpr Complex imag_unit{0.0, 1.0};

inline EdgeId reverse(EdgeId e) { return e ^ 1; }
inline std::int32_t undirected(EdgeId e) { return e >> 1; }
inline bool is_canonical(EdgeId e) { return (e & 1) == 0; }

}  // namespace dharm
