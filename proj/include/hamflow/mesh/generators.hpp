#pragma once

#include "hamflow/mesh/surface.hpp"

namespace hamflow {

inline constexpr int kMaxIcosphereSubdivisions = 8;

/// Unit sphere from an icosahedron with two vertices on the z-axis, refined by
/// 4-to-1 subdivision with projection back to the sphere. Vertex normals are exact.
Surface gen_icosphere(int subdivisions);

/// Flat torus [0,1)^2 on an n x m grid, each cell split along its (i,j)-(i+1,j+1) diagonal.
/// Vertex (i, j) has index i + n * j and chart point (i/n, j/m).
Surface gen_flat_torus(int n, int m);

/// Flat torus whose grid points are moved by the periodic map
/// (x, y) -> (x + a sin(2 pi y) / 2 pi, y + a sin(2 pi x) / 2 pi), |a| < 1.
/// The metric stays flat; only the triangulation becomes irregular.
Surface gen_warped_flat_torus(int n, int m, double amplitude);

/// Torus of revolution about the z-axis; vertex (i, j) sits at longitude 2 pi i / n and
/// meridian angle 2 pi j / m. Vertex normals are exact.
Surface gen_revolution_torus(int n, int m, double major_radius = 2.0, double minor_radius = 1.0);

}  // namespace hamflow
