#include "hamflow/mesh/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include <Eigen/Geometry>

#include "hamflow/error.hpp"

namespace hamflow {

namespace {

long long edge_key(int a, int b, int nv) {
  if (a > b) std::swap(a, b);
  return static_cast<long long>(a) * nv + b;
}

[[noreturn]] void fail(const std::string& what, int index = -1, const char* kind = nullptr) {
  std::ostringstream os;
  os << what;
  if (kind != nullptr) os << " (" << kind << " " << index << ")";
  throw InputError(os.str());
}

}  // namespace

int Surface::num_simplices(int degree) const {
  switch (degree) {
    case 0: return num_vertices();
    case 1: return num_edges();
    case 2: return num_triangles();
    default: throw InputError("simplex degree must be 0, 1 or 2");
  }
}

Surface Surface::embedded(std::vector<Vec3> positions, std::vector<Triangle> triangles,
                          std::string name) {
  Surface s;
  s.kind_ = GeometryKind::Embedded;
  s.name_ = std::move(name);
  s.triangles_ = std::move(triangles);
  std::vector<std::array<Vec3, 3>> corners(s.triangles_.size());
  const int nv = static_cast<int>(positions.size());
  for (std::size_t t = 0; t < s.triangles_.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int v = s.triangles_[t][k];
      if (v < 0 || v >= nv) fail("vertex index out of range", static_cast<int>(t), "triangle");
      corners[t][k] = positions[v];
    }
  }
  s.points_ = std::move(positions);
  s.vertex_tris_.resize(nv);
  s.build(std::move(corners));
  return s;
}

Surface Surface::chart(std::vector<Vec3> points, std::vector<Triangle> triangles,
                       std::vector<std::array<Vec3, 3>> corners, std::string name) {
  if (corners.size() != triangles.size()) fail("chart corners do not match triangle count");
  Surface s;
  s.kind_ = GeometryKind::Chart;
  s.name_ = std::move(name);
  s.triangles_ = std::move(triangles);
  s.vertex_tris_.resize(points.size());
  s.points_ = std::move(points);
  s.build(std::move(corners));
  return s;
}

Surface Surface::intrinsic(int num_vertices, std::vector<Triangle> triangles,
                           const std::vector<std::pair<std::array<int, 2>, double>>& lengths,
                           std::string name) {
  std::unordered_map<long long, double> table;
  for (const auto& [e, l] : lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) fail("edge lengths must be positive and finite");
    table[edge_key(e[0], e[1], num_vertices)] = l;
  }
  std::vector<std::array<Vec3, 3>> corners(triangles.size());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    std::array<double, 3> l{};
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      if (a < 0 || a >= num_vertices || b < 0 || b >= num_vertices)
        fail("vertex index out of range", static_cast<int>(t), "triangle");
      auto it = table.find(edge_key(a, b, num_vertices));
      if (it == table.end()) fail("missing edge length", static_cast<int>(t), "triangle");
      l[k] = it->second;
    }
    // Side 0: corner0->corner1, side 1: corner1->corner2, side 2: corner2->corner0.
    const double x = (l[0] * l[0] + l[2] * l[2] - l[1] * l[1]) / (2.0 * l[0]);
    const double y2 = l[2] * l[2] - x * x;
    if (!(y2 > 0.0)) fail("edge lengths violate the triangle inequality", static_cast<int>(t), "triangle");
    corners[t] = {Vec3(0, 0, 0), Vec3(l[0], 0, 0), Vec3(x, std::sqrt(y2), 0)};
  }
  Surface s;
  s.kind_ = GeometryKind::Intrinsic;
  s.name_ = std::move(name);
  s.triangles_ = std::move(triangles);
  s.vertex_tris_.resize(num_vertices);
  s.build(std::move(corners));
  return s;
}

void Surface::build(std::vector<std::array<Vec3, 3>> corners) {
  const int nv = num_vertices();
  const int nt = num_triangles();
  if (nt == 0) fail("surface has no triangles");

  // Sides grouped by unordered vertex pair.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> sides;  // (tri, side)
  for (int t = 0; t < nt; ++t) {
    const auto& tri = triangles_[t];
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      fail("triangle with repeated vertex", t, "triangle");
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      sides[{std::min(a, b), std::max(a, b)}].push_back({t, k});
      vertex_tris_[a].push_back(t);
    }
  }

  edges_.reserve(sides.size());
  edge_tris_.reserve(sides.size());
  tri_edges_.assign(nt, {-1, -1, -1});
  tri_signs_.assign(nt, {0, 0, 0});
  for (const auto& [pair, list] : sides) {
    const int e = static_cast<int>(edges_.size());
    if (list.size() == 1) fail("open boundary", e, "edge");
    if (list.size() > 2) fail("non-manifold edge", e, "edge");
    edges_.push_back({pair.first, pair.second});
    edge_lookup_[edge_key(pair.first, pair.second, nv)] = e;
    int dir_sum = 0;
    for (const auto& [t, k] : list) {
      const int sign = triangles_[t][k] < triangles_[t][(k + 1) % 3] ? 1 : -1;
      tri_edges_[t][k] = e;
      tri_signs_[t][k] = sign;
      dir_sum += sign;
    }
    if (dir_sum != 0) fail("inconsistent orientation", e, "edge");
    edge_tris_.push_back({list[0].first, list[1].first});
  }

  for (int v = 0; v < nv; ++v) {
    if (vertex_tris_[v].empty()) fail("isolated vertex", v, "vertex");
    // The link of v must be a single cycle: follow next-corner -> prev-corner links.
    std::unordered_map<int, int> next;
    for (int t : vertex_tris_[v]) {
      const auto& tri = triangles_[t];
      const int k = tri[0] == v ? 0 : (tri[1] == v ? 1 : 2);
      next[tri[(k + 1) % 3]] = tri[(k + 2) % 3];
    }
    if (next.size() != vertex_tris_[v].size()) fail("non-manifold vertex", v, "vertex");
    int start = next.begin()->first;
    int cur = start;
    std::size_t steps = 0;
    do {
      auto it = next.find(cur);
      if (it == next.end()) fail("non-manifold vertex", v, "vertex");
      cur = it->second;
      ++steps;
    } while (cur != start && steps <= next.size());
    if (steps != next.size()) fail("non-manifold vertex", v, "vertex");
  }

  geometry_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    auto& g = geometry_[t];
    g.corner = corners[t];
    const Vec3 u = g.corner[1] - g.corner[0];
    const Vec3 w = g.corner[2] - g.corner[0];
    const Vec3 c = u.cross(w);
    const double scale = std::max({u.squaredNorm(), w.squaredNorm(), (w - u).squaredNorm()});
    g.area = 0.5 * c.norm();
    if (!(g.area > 1e-14 * scale) || !std::isfinite(g.area)) fail("degenerate triangle", t, "triangle");
    g.normal = c.normalized();
    g.e1 = u.normalized();
    g.e2 = g.normal.cross(g.e1);
    for (int k = 0; k < 3; ++k) {
      const Vec3 r = g.corner[k] - g.corner[0];
      g.local[k] = Vec2(r.dot(g.e1), r.dot(g.e2));
    }
  }

  edge_lengths_.resize(edges_.size());
  for (int e = 0; e < num_edges(); ++e) {
    const Vec3 first = edge_vector(e);
    edge_lengths_[e] = first.norm();
    // The second incident triangle must agree on the metric.
    const int t = edge_tris_[e][1];
    for (int k = 0; k < 3; ++k) {
      if (tri_edges_[t][k] != e) continue;
      const Vec3 d = geometry_[t].corner[(k + 1) % 3] - geometry_[t].corner[k];
      const Vec3 other = tri_signs_[t][k] > 0 ? d : Vec3(-d);
      const bool ok = kind_ == GeometryKind::Chart
                          ? (other - first).norm() <= 1e-9 * first.norm()
                          : std::abs(other.norm() - first.norm()) <= 1e-9 * first.norm();
      if (!ok) fail("incident triangles disagree on edge geometry", e, "edge");
    }
  }

  dual_areas_.assign(nv, 0.0);
  for (int t = 0; t < nt; ++t)
    for (int v : triangles_[t]) dual_areas_[v] += geometry_[t].area / 3.0;

  if (kind_ == GeometryKind::Embedded) {
    vertex_normals_.assign(nv, Vec3::Zero());
    for (int t = 0; t < nt; ++t)
      for (int v : triangles_[t]) vertex_normals_[v] += geometry_[t].area * geometry_[t].normal;
    for (auto& n : vertex_normals_) n.normalize();
  } else if (kind_ == GeometryKind::Chart) {
    vertex_normals_.assign(nv, Vec3::UnitZ());
  }

  vertex_component_.assign(nv, -1);
  num_components_ = 0;
  for (int s = 0; s < nv; ++s) {
    if (vertex_component_[s] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    vertex_component_[s] = num_components_;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int t : vertex_tris_[v])
        for (int w : triangles_[t])
          if (vertex_component_[w] < 0) {
            vertex_component_[w] = num_components_;
            q.push(w);
          }
    }
    ++num_components_;
  }
  const int twice_genus = 2 * num_components_ - euler_characteristic();
  if (twice_genus < 0 || twice_genus % 2 != 0)
    fail("Euler characteristic is inconsistent with a closed orientable surface");
}

int Surface::edge_index(int a, int b) const {
  const int nv = num_vertices();
  if (a < 0 || b < 0 || a >= nv || b >= nv || a == b) return -1;
  auto it = edge_lookup_.find(edge_key(a, b, nv));
  return it == edge_lookup_.end() ? -1 : it->second;
}

Vec3 Surface::edge_vector(int e) const {
  const int t = edge_tris_[e][0];
  for (int k = 0; k < 3; ++k) {
    if (tri_edges_[t][k] != e) continue;
    const Vec3 d = geometry_[t].corner[(k + 1) % 3] - geometry_[t].corner[k];
    return tri_signs_[t][k] > 0 ? d : Vec3(-d);
  }
  return Vec3::Zero();
}

double Surface::total_area() const {
  double a = 0.0;
  for (const auto& g : geometry_) a += g.area;
  return a;
}

double Surface::max_edge_length() const {
  return edge_lengths_.empty() ? 0.0 : *std::max_element(edge_lengths_.begin(), edge_lengths_.end());
}

Surface Surface::with_torus_grid(TorusGrid grid) const {
  Surface s = *this;
  s.torus_grid_ = grid;
  return s;
}

Surface Surface::with_vertex_normals(std::vector<Vec3> normals) const {
  if (static_cast<int>(normals.size()) != num_vertices()) throw InputError("normal count mismatch");
  Surface s = *this;
  s.vertex_normals_ = std::move(normals);
  return s;
}

Surface disjoint_union(const Surface& a, const Surface& b) {
  if (a.geometry_kind() != b.geometry_kind())
    throw InputError("disjoint union requires surfaces of the same geometry kind");
  const int shift = a.num_vertices();
  std::vector<Triangle> tris = a.triangles();
  for (auto t : b.triangles()) tris.push_back({t[0] + shift, t[1] + shift, t[2] + shift});
  const std::string name = a.name() + "+" + b.name();
  switch (a.geometry_kind()) {
    case GeometryKind::Embedded: {
      std::vector<Vec3> pts = a.points();
      pts.insert(pts.end(), b.points().begin(), b.points().end());
      std::vector<Vec3> normals = a.vertex_normals();
      normals.insert(normals.end(), b.vertex_normals().begin(), b.vertex_normals().end());
      return Surface::embedded(std::move(pts), std::move(tris), name).with_vertex_normals(std::move(normals));
    }
    case GeometryKind::Chart: {
      std::vector<Vec3> pts = a.points();
      pts.insert(pts.end(), b.points().begin(), b.points().end());
      std::vector<std::array<Vec3, 3>> corners;
      for (int t = 0; t < a.num_triangles(); ++t) corners.push_back(a.triangle_geometry(t).corner);
      for (int t = 0; t < b.num_triangles(); ++t) corners.push_back(b.triangle_geometry(t).corner);
      return Surface::chart(std::move(pts), std::move(tris), std::move(corners), name);
    }
    case GeometryKind::Intrinsic: {
      std::vector<std::pair<std::array<int, 2>, double>> lengths;
      for (int e = 0; e < a.num_edges(); ++e) lengths.push_back({a.edges()[e], a.edge_length(e)});
      for (int e = 0; e < b.num_edges(); ++e)
        lengths.push_back({{b.edges()[e][0] + shift, b.edges()[e][1] + shift}, b.edge_length(e)});
      return Surface::intrinsic(a.num_vertices() + b.num_vertices(), std::move(tris), lengths, name);
    }
  }
  throw InputError("unknown geometry kind");
}

Surface subdivide(const Surface& s) {
  if (s.geometry_kind() == GeometryKind::Intrinsic)
    throw InputError("subdivision needs embedded or chart geometry");
  const int nv = s.num_vertices();
  std::vector<Vec3> pts = s.points();
  pts.reserve(nv + s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e) {
    const auto [a, b] = s.edges()[e];
    // Chart points are periodic; the unwrapped midpoint comes from the edge vector.
    pts.push_back(s.points()[a] + 0.5 * s.edge_vector(e));
  }
  std::vector<Triangle> tris;
  std::vector<std::array<Vec3, 3>> corners;
  tris.reserve(4 * s.num_triangles());
  for (int t = 0; t < s.num_triangles(); ++t) {
    const auto& tri = s.triangles()[t];
    const auto& te = s.triangle_edges(t);
    const auto& c = s.triangle_geometry(t).corner;
    const int m0 = nv + te[0], m1 = nv + te[1], m2 = nv + te[2];
    const Vec3 c01 = 0.5 * (c[0] + c[1]), c12 = 0.5 * (c[1] + c[2]), c20 = 0.5 * (c[2] + c[0]);
    tris.push_back({tri[0], m0, m2});
    corners.push_back({c[0], c01, c20});
    tris.push_back({m0, tri[1], m1});
    corners.push_back({c01, c[1], c12});
    tris.push_back({m2, m1, tri[2]});
    corners.push_back({c20, c12, c[2]});
    tris.push_back({m0, m1, m2});
    corners.push_back({c01, c12, c20});
  }
  if (s.geometry_kind() == GeometryKind::Embedded)
    return Surface::embedded(std::move(pts), std::move(tris), s.name() + "/sub");
  return Surface::chart(std::move(pts), std::move(tris), std::move(corners), s.name() + "/sub");
}

}  // namespace hamflow
