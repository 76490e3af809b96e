#include "hamflow/mesh/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hamflow/error.hpp"

namespace hamflow {

double IntegralPair::relative_difference() const {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? std::abs(lhs - rhs) : std::abs(lhs - rhs) / scale;
}

QuotientCover build_quotient(SurfacePtr total, std::vector<SimplicialAutomorphism> deck) {
  const Surface& s = *total;
  if (deck.empty()) throw InputError("deck group is empty");
  std::set<std::vector<int>> members;
  for (const auto& g : deck) members.insert(g.vertex_map());
  if (members.size() != deck.size()) throw InputError("not a group: repeated deck element");
  if (!members.count(SimplicialAutomorphism::identity(s).vertex_map()))
    throw InputError("not a group: identity missing");
  for (const auto& a : deck)
    for (const auto& b : deck)
      if (!members.count(a.compose(s, b).vertex_map())) throw InputError("not a group: closure failure");
  for (const auto& g : deck)
    if (!g.is_identity() && g.fixes_a_simplex()) throw InputError("action not free");

  QuotientCover cover;
  cover.total = total;
  auto orbits = [&](int degree, std::vector<int>& proj, std::vector<int>& reps) {
    const int count = s.num_simplices(degree);
    proj.assign(count, -1);
    for (int i = 0; i < count; ++i) {
      if (proj[i] >= 0) continue;
      const int id = static_cast<int>(reps.size());
      reps.push_back(i);
      for (const auto& g : deck) proj[g.image(degree, i)] = id;
    }
  };
  std::vector<int> vreps, ereps, treps;
  orbits(0, cover.vertex_projection, vreps);
  orbits(1, cover.edge_projection, ereps);
  orbits(2, cover.triangle_projection, treps);
  cover.fundamental_domain = treps;

  std::vector<Triangle> qtris;
  std::vector<std::array<Vec3, 3>> corners;
  for (int t : treps) {
    const auto& tri = s.triangles()[t];
    qtris.push_back({cover.vertex_projection[tri[0]], cover.vertex_projection[tri[1]],
                     cover.vertex_projection[tri[2]]});
    corners.push_back(s.triangle_geometry(t).corner);
  }
  const int qv = static_cast<int>(vreps.size());
  const std::string name = s.name() + "/quotient";
  auto as_intrinsic = [&] {
    std::map<std::array<int, 2>, double> lengths;
    for (int t : treps) {
      const auto& tri = s.triangles()[t];
      for (int k = 0; k < 3; ++k) {
        int a = cover.vertex_projection[tri[k]], b = cover.vertex_projection[tri[(k + 1) % 3]];
        if (a > b) std::swap(a, b);
        lengths[{a, b}] = s.edge_length(s.triangle_edges(t)[k]);
      }
    }
    return Surface::intrinsic(qv, qtris, {lengths.begin(), lengths.end()}, name);
  };
  try {
    if (s.geometry_kind() == GeometryKind::Chart) {
      std::vector<Vec3> pts;
      for (int v : vreps) pts.push_back(s.points()[v]);
      try {
        cover.quotient = share(Surface::chart(pts, qtris, corners, name));
      } catch (const InputError&) {
        cover.quotient = share(as_intrinsic());
      }
    } else {
      cover.quotient = share(as_intrinsic());
    }
  } catch (const InputError& err) {
    throw InputError(std::string("quotient is not a simplicial surface: ") + err.what());
  }
  const Surface& q = *cover.quotient;
  if (q.num_edges() != static_cast<int>(ereps.size()))
    throw InputError("quotient is not a simplicial surface: edge orbits do not match quotient edges");

  cover.edge_projection_sign.resize(s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e) {
    const int a = cover.vertex_projection[s.edges()[e][0]];
    const int b = cover.vertex_projection[s.edges()[e][1]];
    const int qe = q.edge_index(a, b);
    if (qe < 0) throw InputError("quotient is not a simplicial surface: missing projected edge");
    cover.edge_projection[e] = qe;
    cover.edge_projection_sign[e] = a < b ? 1 : -1;
  }
  cover.deck = std::move(deck);
  return cover;
}

IntegralPair quotient_integral_check(const QuotientCover& cover, const Eigen::VectorXd& f,
                                     const Eigen::VectorXd& density) {
  const Surface& q = *cover.quotient;
  const Surface& s = *cover.total;
  if (f.size() != q.num_vertices()) throw InputError("function must live on quotient vertices");
  if (density.size() != 0 && density.size() != q.num_vertices())
    throw InputError("density must live on quotient vertices");
  auto weight = [&](int qv) { return density.size() == 0 ? 1.0 : density[qv]; };
  IntegralPair out;
  for (int v = 0; v < q.num_vertices(); ++v) out.lhs += f[v] * weight(v) * q.dual_area(v);
  for (int t : cover.fundamental_domain) {
    double corner_sum = 0.0;
    for (int v : s.triangles()[t]) {
      const int qv = cover.vertex_projection[v];
      corner_sum += f[qv] * weight(qv);
    }
    out.rhs += s.triangle_area(t) / 3.0 * corner_sum;
  }
  return out;
}

IntegralPair product_integral_check(const Surface& m1, const QuotientCover& cover2, const Eigen::MatrixXd& f,
                                    double independence_tol) {
  const Surface& s2 = *cover2.total;
  const Surface& q2 = *cover2.quotient;
  if (f.rows() != m1.num_vertices() || f.cols() != s2.num_vertices())
    throw InputError("product function has wrong shape");
  for (int i = 0; i < f.rows(); ++i) {
    const double spread = f.row(i).maxCoeff() - f.row(i).minCoeff();
    const double scale = std::max(1.0, f.row(i).cwiseAbs().maxCoeff());
    if (spread > independence_tol * scale) throw InputError("function depends on the second factor");
  }
  // Representative total vertex for each quotient vertex.
  std::vector<int> rep(q2.num_vertices(), -1);
  for (int v = 0; v < s2.num_vertices(); ++v)
    if (rep[cover2.vertex_projection[v]] < 0) rep[cover2.vertex_projection[v]] = v;

  IntegralPair out;
  for (int i = 0; i < m1.num_vertices(); ++i) {
    double inner = 0.0;
    for (int qv = 0; qv < q2.num_vertices(); ++qv) inner += f(i, rep[qv]) * q2.dual_area(qv);
    out.lhs += inner * m1.dual_area(i);
  }
  double fd_measure = 0.0;
  for (int t : cover2.fundamental_domain) fd_measure += s2.triangle_area(t);
  double integral1 = 0.0;
  for (int i = 0; i < m1.num_vertices(); ++i) integral1 += f(i, 0) * m1.dual_area(i);
  out.rhs = fd_measure * integral1;
  return out;
}

}  // namespace hamflow
