#include "hamflow/forms/operators.hpp"

#include <fstream>
#include <iomanip>

#include <Eigen/Geometry>

#include "hamflow/error.hpp"

namespace hamflow {

namespace {

void require_frame(const Surface& s, const char* what) {
  if (!s.has_ambient_frame()) throw InputError(std::string(what) + " needs an embedded or chart surface");
}

void require_same_surface(const SurfacePtr& a, const SurfacePtr& b) {
  if (a != b) throw InputError("inputs live on different surfaces");
}

/// Fraction of an edge value contributed by triangle t.
double area_share(const Surface& s, int t, int e) {
  const auto& et = s.edge_triangles(e);
  return s.triangle_area(t) / (s.triangle_area(et[0]) + s.triangle_area(et[1]));
}

}  // namespace

Cochain d(const Cochain& c) {
  const SurfacePtr& sp = c.surface();
  const Surface& s = *sp;
  const auto& v = c.values();
  if (c.degree() == 0) {
    Eigen::VectorXd out(s.num_edges());
    for (int e = 0; e < s.num_edges(); ++e) out[e] = v[s.edges()[e][1]] - v[s.edges()[e][0]];
    return {sp, 1, std::move(out)};
  }
  if (c.degree() == 1) {
    Eigen::VectorXd out(s.num_triangles());
    for (int t = 0; t < s.num_triangles(); ++t) {
      const auto& te = s.triangle_edges(t);
      const auto& ts = s.triangle_edge_signs(t);
      out[t] = ts[0] * v[te[0]] + ts[1] * v[te[1]] + ts[2] * v[te[2]];
    }
    return {sp, 2, std::move(out)};
  }
  throw InputError("exterior derivative of a 2-cochain on a surface is not defined here");
}

Cochain de_rham(const AnalyticForm& form, const SurfacePtr& surface, int quadrature_order) {
  const Surface& s = *surface;
  require_frame(s, "de Rham map");
  if (!form.field) throw InputError("analytic form has no expression");
  if (form.degree == 0) throw InputError("de Rham map of a 0-form: sample at vertices instead");
  if (form.degree == 1) {
    const auto& rule = segment_rule(quadrature_order);
    Eigen::VectorXd out(s.num_edges());
    for (int e = 0; e < s.num_edges(); ++e) {
      const int t = s.edge_triangles(e)[0];
      const auto& tri = s.triangles()[t];
      const auto& geo = s.triangle_geometry(t);
      const int k = tri[0] == s.edges()[e][0] ? 0 : (tri[1] == s.edges()[e][0] ? 1 : 2);
      const Vec3 start = geo.corner[k];
      const Vec3 vec = s.edge_vector(e);
      double acc = 0.0;
      for (std::size_t q = 0; q < rule.points.size(); ++q)
        acc += rule.weights[q] * form.field(start + rule.points[q] * vec).dot(vec);
      out[e] = acc;
    }
    return {surface, 1, std::move(out)};
  }
  if (form.degree == 2) {
    const auto& rule = triangle_rule(quadrature_order);
    Eigen::VectorXd out(s.num_triangles());
    for (int t = 0; t < s.num_triangles(); ++t) {
      const auto& geo = s.triangle_geometry(t);
      double acc = 0.0;
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const auto& b = rule.points[q];
        const Vec3 x = b[0] * geo.corner[0] + b[1] * geo.corner[1] + b[2] * geo.corner[2];
        acc += rule.weights[q] * form.field(x).dot(geo.normal);
      }
      out[t] = acc * geo.area;
    }
    return {surface, 2, std::move(out)};
  }
  throw InputError("analytic form degree must be 1 or 2");
}

double inner(const Cochain& a, const Cochain& b, const CompatibleTriple& triple) {
  if (!a.compatible(b)) throw InputError("inner product: degree/surface mismatch");
  require_same_surface(a.surface(), triple.surface());
  const SparseMatrix& m = triple.mass(a.degree());
  const double ab = a.values().dot(m * b.values());
  const double ba = b.values().dot(m * a.values());
  return 0.5 * (ab + ba);
}

double norm(const Cochain& c, const CompatibleTriple& triple) { return std::sqrt(std::max(0.0, inner(c, c, triple))); }

Cochain codifferential(const Cochain& c, const CompatibleTriple& triple) {
  require_same_surface(c.surface(), triple.surface());
  if (c.degree() == 1) {
    const Eigen::VectorXd r = triple.d(0).transpose() * (triple.mass(1) * c.values());
    return {c.surface(), 0, r.cwiseQuotient(triple.diagonal_mass(0))};
  }
  if (c.degree() == 2) {
    const Eigen::VectorXd r = triple.d(1).transpose() * c.values().cwiseProduct(triple.diagonal_mass(2));
    return {c.surface(), 1, triple.solve_mass1(r)};
  }
  throw InputError("codifferential of a 0-cochain is not defined");
}

Cochain flat(const TangentField& xi, const CompatibleTriple& triple) {
  require_same_surface(xi.surface(), triple.surface());
  const Surface& s = *triple.surface();
  Eigen::VectorXd out(s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e) {
    const auto [a, b] = s.edges()[e];
    out[e] = 0.5 * (xi[a] + xi[b]).dot(s.edge_vector(e));
  }
  return {triple.surface(), 1, std::move(out)};
}

Cochain j_apply(const Cochain& c, const CompatibleTriple& triple) {
  if (c.degree() != 1) throw InputError("J acts on 1-cochains");
  require_same_surface(c.surface(), triple.surface());
  return {c.surface(), 1, triple.j_matrix() * c.values()};
}

Cochain contract_omega(const TangentField& xi, const CompatibleTriple& triple, ContractionMode mode,
                       int quadrature_order) {
  require_same_surface(xi.surface(), triple.surface());
  if (mode == ContractionMode::ViaJ) return -j_apply(flat(xi, triple), triple);

  const Surface& s = *triple.surface();
  const auto& rule = segment_rule(quadrature_order);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(s.num_edges());
  for (int t = 0; t < s.num_triangles(); ++t) {
    const auto& geo = s.triangle_geometry(t);
    const auto& tri = s.triangles()[t];
    const auto& te = s.triangle_edges(t);
    const auto& ts = s.triangle_edge_signs(t);
    Vec2 proxy = Vec2::Zero();
    if (!xi.has_analytic()) {
      const Vec3 mean = (xi[tri[0]] + xi[tri[1]] + xi[tri[2]]) / 3.0;
      proxy = Vec2(-mean.dot(geo.e2), mean.dot(geo.e1));
    }
    for (int k = 0; k < 3; ++k) {
      double value = 0.0;
      if (xi.has_analytic()) {
        const Vec3 start = geo.corner[k];
        const Vec3 vec = geo.corner[(k + 1) % 3] - start;
        for (std::size_t q = 0; q < rule.points.size(); ++q)
          value += rule.weights[q] * geo.normal.cross(xi.analytic()(start + rule.points[q] * vec)).dot(vec);
      } else {
        value = proxy.dot(geo.local[(k + 1) % 3] - geo.local[k]);
      }
      out[te[k]] += area_share(s, t, te[k]) * ts[k] * value;
    }
  }
  return {triple.surface(), 1, std::move(out)};
}

Cochain pullback(const Cochain& c, const SimplicialAutomorphism& phi) {
  const Surface& s = *c.surface();
  if (static_cast<int>(phi.vertex_map().size()) != s.num_vertices() ||
      static_cast<int>(phi.edge_map().size()) != s.num_edges() ||
      static_cast<int>(phi.triangle_map().size()) != s.num_triangles())
    throw InputError("automorphism does not act on this surface");
  Eigen::VectorXd out(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const int idx = static_cast<int>(i);
    out[i] = phi.sign(c.degree(), idx) * c[phi.image(c.degree(), idx)];
  }
  return {c.surface(), c.degree(), std::move(out)};
}

void write_cochain_csv(const Cochain& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "index,value\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < c.size(); ++i) out << i << ',' << c[i] << '\n';
}

}  // namespace hamflow
