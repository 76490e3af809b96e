#include "hamflow/mesh/generators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "hamflow/error.hpp"

namespace hamflow {

Surface gen_icosphere(int subdivisions) {
  if (subdivisions < 0 || subdivisions > kMaxIcosphereSubdivisions)
    throw InputError("icosphere subdivisions must lie in [0, " +
                     std::to_string(kMaxIcosphereSubdivisions) + "]");
  const double pi = std::numbers::pi;
  const double z = 1.0 / std::sqrt(5.0);
  const double r = 2.0 / std::sqrt(5.0);
  std::vector<Vec3> pts;
  pts.emplace_back(0, 0, 1);
  for (int k = 0; k < 5; ++k) pts.emplace_back(r * std::cos(2 * pi * k / 5), r * std::sin(2 * pi * k / 5), z);
  for (int k = 0; k < 5; ++k)
    pts.emplace_back(r * std::cos(2 * pi * k / 5 + pi / 5), r * std::sin(2 * pi * k / 5 + pi / 5), -z);
  pts.emplace_back(0, 0, -1);
  std::vector<Triangle> tris;
  for (int k = 0; k < 5; ++k) {
    const int u0 = 1 + k, u1 = 1 + (k + 1) % 5;
    const int l0 = 6 + k, l1 = 6 + (k + 1) % 5;
    tris.push_back({0, u0, u1});
    tris.push_back({u0, l0, u1});
    tris.push_back({u1, l0, l1});
    tris.push_back({11, l1, l0});
  }
  for (auto& t : tris) {
    const Vec3 n = (pts[t[1]] - pts[t[0]]).cross(pts[t[2]] - pts[t[0]]);
    if (n.dot(pts[t[0]] + pts[t[1]] + pts[t[2]]) < 0) std::swap(t[1], t[2]);
  }
  Surface s = Surface::embedded(pts, tris, "icosphere");
  for (int level = 0; level < subdivisions; ++level) {
    Surface fine = subdivide(s);
    std::vector<Vec3> p = fine.points();
    for (auto& x : p) x.normalize();
    s = Surface::embedded(std::move(p), fine.triangles(), "icosphere");
  }
  std::vector<Vec3> normals = s.points();
  return s.with_vertex_normals(std::move(normals));
}

namespace {

Surface torus_impl(int n, int m, double a, const std::string& name) {
  if (n < 3 || m < 3) throw InputError("flat torus needs n, m >= 3");
  if (!(std::abs(a) < 1.0)) throw InputError("warp amplitude must satisfy |a| < 1");
  const double two_pi = 2.0 * std::numbers::pi;
  auto warp = [&](int i, int j) {
    const double x = static_cast<double>(i) / n;
    const double y = static_cast<double>(j) / m;
    return Vec3(x + a * std::sin(two_pi * y) / two_pi, y + a * std::sin(two_pi * x) / two_pi, 0.0);
  };
  auto id = [&](int i, int j) { return ((i % n) + n) % n + n * (((j % m) + m) % m); };
  std::vector<Vec3> pts(static_cast<std::size_t>(n) * m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) pts[id(i, j)] = warp(i, j);
  std::vector<Triangle> tris;
  std::vector<std::array<Vec3, 3>> corners;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      corners.push_back({warp(i, j), warp(i + 1, j), warp(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      corners.push_back({warp(i, j), warp(i + 1, j + 1), warp(i, j + 1)});
    }
  }
  Surface s = Surface::chart(std::move(pts), std::move(tris), std::move(corners), name);
  return s.with_torus_grid(TorusGrid{n, m, a == 0.0});
}

}  // namespace

Surface gen_flat_torus(int n, int m) { return torus_impl(n, m, 0.0, "flat_torus"); }

Surface gen_warped_flat_torus(int n, int m, double amplitude) {
  return torus_impl(n, m, amplitude, "warped_flat_torus");
}

Surface gen_revolution_torus(int n, int m, double major_radius, double minor_radius) {
  if (n < 3 || m < 3) throw InputError("torus of revolution needs n, m >= 3");
  if (!(minor_radius > 0.0 && major_radius > minor_radius))
    throw InputError("torus of revolution needs 0 < minor radius < major radius");
  const double two_pi = 2.0 * std::numbers::pi;
  auto id = [&](int i, int j) { return (i % n) + n * (j % m); };
  std::vector<Vec3> pts(static_cast<std::size_t>(n) * m), normals(pts.size());
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      const double u = two_pi * i / n, v = two_pi * j / m;
      const double rho = major_radius + minor_radius * std::cos(v);
      pts[id(i, j)] = Vec3(rho * std::cos(u), rho * std::sin(u), minor_radius * std::sin(v));
      normals[id(i, j)] = Vec3(std::cos(v) * std::cos(u), std::cos(v) * std::sin(u), std::sin(v));
    }
  }
  std::vector<Triangle> tris;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  Surface s = Surface::embedded(std::move(pts), std::move(tris), "revolution_torus");
  return s.with_vertex_normals(std::move(normals));
}

}  // namespace hamflow
