#include "hamflow/action/action.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <Eigen/Geometry>

#include "hamflow/error.hpp"

namespace hamflow {

GeneratorSet::GeneratorSet(std::vector<TangentField> f, std::vector<std::string> l)
    : fields(std::move(f)), labels(std::move(l)) {
  if (fields.empty()) throw InputError("generator set needs at least one field");
  if (labels.size() != fields.size()) throw InputError("generator labels do not match fields");
  for (const auto& x : fields)
    if (x.surface() != fields.front().surface()) throw InputError("generators live on different surfaces");
}

double TorusPotential::value(const Vec3& p) const {
  return amplitude * std::cos(2.0 * std::numbers::pi * (k1 * p.x() + k2 * p.y()) + phase);
}

Vec3 TorusPotential::gradient(const Vec3& p) const {
  const double two_pi = 2.0 * std::numbers::pi;
  const double s = -amplitude * two_pi * std::sin(two_pi * (k1 * p.x() + k2 * p.y()) + phase);
  return {s * k1, s * k2, 0.0};
}

namespace {

void require_torus_chart(const Surface& s, const char* what) {
  if (s.geometry_kind() != GeometryKind::Chart)
    throw InputError(std::string(what) + " needs a flat torus (chart) surface");
}

}  // namespace

TangentField builtin_field(const BuiltinField& spec, const SurfacePtr& surface) {
  return std::visit(
      [&](const auto& f) -> TangentField {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SphereRotation>) {
          if (surface->geometry_kind() != GeometryKind::Embedded)
            throw InputError("sphere rotation needs an embedded surface");
          const Vec3 axis = f.axis;
          return TangentField::from_function(surface, [axis](const Vec3& x) { return Vec3(axis.cross(x)); });
        } else if constexpr (std::is_same_v<T, TorusTranslation>) {
          require_torus_chart(*surface, "torus translation");
          const Vec3 v(f.a, f.b, 0.0);
          return TangentField::from_function(surface, [v](const Vec3&) { return v; });
        } else {
          require_torus_chart(*surface, "torus Hamiltonian field");
          const TorusPotential h = f.potential;
          return TangentField::from_function(surface, [h](const Vec3& x) {
            const Vec3 g = h.gradient(x);
            return Vec3(g.y(), -g.x(), 0.0);
          });
        }
      },
      spec);
}

std::string builtin_label(const BuiltinField& spec) {
  std::ostringstream os;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SphereRotation>) {
          os << "rotation(" << f.axis.x() << "," << f.axis.y() << "," << f.axis.z() << ")";
        } else if constexpr (std::is_same_v<T, TorusTranslation>) {
          os << "translation(" << f.a << "," << f.b << ")";
        } else {
          os << "hamiltonian(" << f.potential.amplitude << "*cos(2pi(" << f.potential.k1 << "x+" << f.potential.k2
             << "y)+" << f.potential.phase << "))";
        }
      },
      spec);
  return os.str();
}

namespace {

/// Smallest norm over the triangle spanned by three 2D points.
double min_norm_in_triangle(const Vec2& a, const Vec2& b, const Vec2& c) {
  auto cross = [](const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); };
  const double s1 = cross(b - a, -a), s2 = cross(c - b, -b), s3 = cross(a - c, -c);
  if ((s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0)) return 0.0;
  auto seg = [](const Vec2& p, const Vec2& q) {
    const Vec2 d = q - p;
    const double len2 = d.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp(-p.dot(d) / len2, 0.0, 1.0) : 0.0;
    return (p + t * d).norm();
  };
  return std::min({seg(a, b), seg(b, c), seg(c, a)});
}

}  // namespace

FixedPointSet fixed_points(const TangentField& xi, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InputError("fixed-point tolerance must lie in (0, 1)");
  const Surface& s = *xi.surface();
  FixedPointSet out;
  out.rel_tol = rel_tol;
  const double scale = xi.max_norm();
  out.threshold = rel_tol * scale;
  out.has_fixed_point.assign(s.num_components(), false);
  out.margin.assign(s.num_components(), scale == 0.0 ? 0.0 : 1.0);
  std::vector<char> fixed(s.num_vertices(), 0);
  for (int v = 0; v < s.num_vertices(); ++v) {
    const double n = xi[v].norm();
    const int c = s.vertex_component()[v];
    if (scale > 0.0) out.margin[c] = std::min(out.margin[c], n / scale);
    if (n <= out.threshold) {
      out.vertices.push_back(v);
      out.has_fixed_point[c] = true;
      fixed[v] = 1;
    }
  }
  if (scale > 0.0) {
    for (int t = 0; t < s.num_triangles(); ++t) {
      const auto& tri = s.triangles()[t];
      if (fixed[tri[0]] || fixed[tri[1]] || fixed[tri[2]]) continue;
      const auto& g = s.triangle_geometry(t);
      auto local = [&](int v) { return Vec2(xi[v].dot(g.e1), xi[v].dot(g.e2)); };
      if (min_norm_in_triangle(local(tri[0]), local(tri[1]), local(tri[2])) <= out.threshold)
        out.interior_warnings.push_back(t);
    }
  }
  return out;
}

TangentField load_field_csv(const SurfacePtr& surface, const std::filesystem::path& path, double tangency_tol) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open field file " + path.string());
  const int nv = surface->num_vertices();
  std::vector<Vec3> values(nv, Vec3::Zero());
  std::vector<char> seen(nv, 0);
  std::string line;
  int lineno = 0, count = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    long v = 0;
    double x = 0, y = 0, z = 0;
    if (!(row >> v >> x >> y >> z)) {
      if (count == 0 && lineno == 1) continue;  // header
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected 'vertex,x,y,z'");
    }
    std::string extra;
    if (row >> extra) throw InputError(path.string() + ":" + std::to_string(lineno) + ": trailing data");
    if (v < 0 || v >= nv) throw InputError(path.string() + ":" + std::to_string(lineno) + ": vertex out of range");
    if (seen[v]) throw InputError(path.string() + ":" + std::to_string(lineno) + ": duplicate vertex");
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": non-finite component");
    seen[v] = 1;
    values[v] = Vec3(x, y, z);
    ++count;
  }
  if (count != nv)
    throw InputError(path.string() + ": expected " + std::to_string(nv) + " vertices, got " + std::to_string(count));
  return TangentField(surface, std::move(values), {}, tangency_tol);
}

void write_field_csv(const TangentField& xi, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "vertex,x,y,z\n" << std::setprecision(17);
  for (int v = 0; v < xi.surface()->num_vertices(); ++v)
    out << v << ',' << xi[v].x() << ',' << xi[v].y() << ',' << xi[v].z() << '\n';
}

std::vector<SimplicialAutomorphism> lattice_translations(const Surface& torus) {
  if (!torus.torus_grid() || !torus.torus_grid()->uniform)
    throw InputError("surface is not a generated (uniform) flat torus");
  const auto& g = *torus.torus_grid();
  std::vector<SimplicialAutomorphism> out;
  out.reserve(static_cast<std::size_t>(g.n) * g.m);
  for (int q = 0; q < g.m; ++q)
    for (int p = 0; p < g.n; ++p) out.push_back(torus_translation(torus, p, q));
  return out;
}

}  // namespace hamflow
