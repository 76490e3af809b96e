#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace hamflow {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Triangle = std::array<int, 3>;

/// How the metric of a surface is specified.
enum class GeometryKind {
  /// Vertices carry 3D positions; the metric is the one induced by the embedding.
  Embedded,
  /// Vertices carry points of a flat periodic chart; triangles carry unwrapped corners.
  Chart,
  /// Only edge lengths are known; each triangle is laid out in its own plane.
  Intrinsic,
};

/// Grid metadata retained by the flat torus generator.
struct TorusGrid {
  int n = 0;
  int m = 0;
  bool uniform = true;
};

/// Per-triangle geometry. Corners are in ambient (or chart) coordinates; `local`
/// holds the same corners in the orthonormal frame (e1, e2) of the triangle plane,
/// with e1 x e2 = normal matching the triangle's vertex order.
struct TriangleGeometry {
  std::array<Vec3, 3> corner;
  std::array<Vec2, 3> local;
  Vec3 e1;
  Vec3 e2;
  Vec3 normal;
  double area = 0.0;
};

/// Closed, oriented, triangulated 2-manifold (possibly disconnected).
///
/// Edges are canonically oriented from the lower to the higher vertex index.
/// Triangle side k runs from corner k to corner (k + 1) % 3.
/// Instances are immutable and validated at construction.
class Surface {
 public:
  static Surface embedded(std::vector<Vec3> positions, std::vector<Triangle> triangles,
                          std::string name = "embedded");

  /// Flat chart surface. `points` are one chart point per vertex, and
  /// `corners[t][k]` is the unwrapped chart position of corner k of triangle t.
  static Surface chart(std::vector<Vec3> points, std::vector<Triangle> triangles,
                       std::vector<std::array<Vec3, 3>> corners, std::string name = "chart");

  /// Metric from edge lengths only. `lengths` is keyed by canonical edge (lo, hi).
  static Surface intrinsic(int num_vertices, std::vector<Triangle> triangles,
                           const std::vector<std::pair<std::array<int, 2>, double>>& lengths,
                           std::string name = "intrinsic");

  int num_vertices() const { return static_cast<int>(vertex_tris_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_simplices(int degree) const;

  GeometryKind geometry_kind() const { return kind_; }
  /// True when tangent vectors can be expressed in a global frame (embedded or chart).
  bool has_ambient_frame() const { return kind_ != GeometryKind::Intrinsic; }
  const std::string& name() const { return name_; }

  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  /// Ambient position (embedded) or chart point (chart) per vertex; empty for intrinsic.
  const std::vector<Vec3>& points() const { return points_; }
  const std::vector<Vec3>& vertex_normals() const { return vertex_normals_; }

  /// Canonical edge index of the unordered pair {a, b}, or -1.
  int edge_index(int a, int b) const;
  /// Edge indices of the three sides of triangle t.
  const std::array<int, 3>& triangle_edges(int t) const { return tri_edges_[t]; }
  /// +1 where side k of triangle t agrees with the canonical edge orientation.
  const std::array<int, 3>& triangle_edge_signs(int t) const { return tri_signs_[t]; }
  const std::array<int, 2>& edge_triangles(int e) const { return edge_tris_[e]; }
  const std::vector<int>& vertex_triangles(int v) const { return vertex_tris_[v]; }

  const TriangleGeometry& triangle_geometry(int t) const { return geometry_[t]; }
  double triangle_area(int t) const { return geometry_[t].area; }
  double edge_length(int e) const { return edge_lengths_[e]; }
  /// Edge vector from the lower to the higher endpoint, in ambient/chart coordinates,
  /// taken from the first incident triangle.
  Vec3 edge_vector(int e) const;
  /// Barycentric dual area: one third of the incident triangle areas.
  double dual_area(int v) const { return dual_areas_[v]; }
  const std::vector<double>& dual_areas() const { return dual_areas_; }
  double total_area() const;
  double max_edge_length() const;

  int num_components() const { return num_components_; }
  const std::vector<int>& vertex_component() const { return vertex_component_; }
  int euler_characteristic() const { return num_vertices() - num_edges() + num_triangles(); }
  /// Sum of the genera of all components.
  int genus() const { return (2 * num_components_ - euler_characteristic()) / 2; }

  const std::optional<TorusGrid>& torus_grid() const { return torus_grid_; }
  /// Used by the torus generator to attach grid metadata.
  Surface with_torus_grid(TorusGrid grid) const;
  /// Exact per-vertex normals (e.g. the radial field of a sphere), replacing area-weighted ones.
  Surface with_vertex_normals(std::vector<Vec3> normals) const;

 private:
  Surface() = default;
  void build(std::vector<std::array<Vec3, 3>> corners);

  GeometryKind kind_ = GeometryKind::Embedded;
  std::string name_;
  std::vector<Vec3> points_;
  std::vector<Triangle> triangles_;
  std::vector<std::array<int, 2>> edges_;
  std::unordered_map<long long, int> edge_lookup_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<std::array<int, 3>> tri_signs_;
  std::vector<std::array<int, 2>> edge_tris_;
  std::vector<std::vector<int>> vertex_tris_;
  std::vector<TriangleGeometry> geometry_;
  std::vector<double> edge_lengths_;
  std::vector<double> dual_areas_;
  std::vector<Vec3> vertex_normals_;
  std::vector<int> vertex_component_;
  int num_components_ = 0;
  std::optional<TorusGrid> torus_grid_;
};

using SurfacePtr = std::shared_ptr<const Surface>;

inline SurfacePtr share(Surface s) { return std::make_shared<const Surface>(std::move(s)); }

/// Disjoint union; vertex indices of `b` are shifted by a.num_vertices().
/// Both operands must have the same geometry kind.
Surface disjoint_union(const Surface& a, const Surface& b);

/// 4-to-1 midpoint subdivision of an embedded or chart surface.
Surface subdivide(const Surface& s);

}  // namespace hamflow
