#include "hamflow/forms/triple.hpp"

#include <vector>

#include "hamflow/error.hpp"

namespace hamflow {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }

}  // namespace

std::array<Vec2, 3> barycentric_gradients(const std::array<Vec2, 3>& p, double area) {
  std::array<Vec2, 3> g;
  for (int i = 0; i < 3; ++i) g[i] = perp(p[(i + 2) % 3] - p[(i + 1) % 3]) / (2.0 * area);
  return g;
}

CompatibleTriple::CompatibleTriple(SurfacePtr surface, MeasureDensity density)
    : surface_(std::move(surface)), density_(std::move(density)), omega_(surface_, 2) {
  if (density_.surface() != surface_) throw InputError("density lives on a different surface");
  const Surface& s = *surface_;
  const int nv = s.num_vertices(), ne = s.num_edges(), nt = s.num_triangles();
  h_ = s.max_edge_length();

  Triplets trip;
  for (int e = 0; e < ne; ++e) {
    trip.emplace_back(e, s.edges()[e][0], -1.0);
    trip.emplace_back(e, s.edges()[e][1], 1.0);
  }
  d0_.resize(ne, nv);
  d0_.setFromTriplets(trip.begin(), trip.end());

  trip.clear();
  for (int t = 0; t < nt; ++t)
    for (int k = 0; k < 3; ++k) trip.emplace_back(t, s.triangle_edges(t)[k], s.triangle_edge_signs(t)[k]);
  d1_.resize(nt, ne);
  d1_.setFromTriplets(trip.begin(), trip.end());

  m0_.resize(nv);
  for (int v = 0; v < nv; ++v) m0_[v] = density_.vertex_weight(v) * s.dual_area(v);
  m2_.resize(nt);
  Eigen::VectorXd omega(nt);
  for (int t = 0; t < nt; ++t) {
    m2_[t] = density_.triangle_weight(t) / s.triangle_area(t);
    omega[t] = s.triangle_area(t);
  }
  omega_ = Cochain(surface_, 2, std::move(omega));
  auto diag = [](const Eigen::VectorXd& d) {
    SparseMatrix m(d.size(), d.size());
    m.reserve(Eigen::VectorXi::Constant(d.size(), 1));
    for (Eigen::Index i = 0; i < d.size(); ++i) m.insert(i, i) = d[i];
    m.makeCompressed();
    return m;
  };
  mass_[0] = diag(m0_);
  mass_[2] = diag(m2_);

  grads_.resize(nt);
  trip.clear();
  Triplets jtrip;
  for (int t = 0; t < nt; ++t) {
    const auto& geo = s.triangle_geometry(t);
    const double area = geo.area;
    const auto& g = grads_[t] = barycentric_gradients(geo.local, area);
    const auto& te = s.triangle_edges(t);
    const auto& ts = s.triangle_edge_signs(t);
    const double w = density_.triangle_weight(t);
    auto integral = [area](int p, int q) { return area * (p == q ? 2.0 : 1.0) / 12.0; };
    auto gg = [&g](int p, int q) { return g[p].dot(g[q]); };
    for (int a = 0; a < 3; ++a) {
      const int i = a, j = (a + 1) % 3;
      for (int b = 0; b < 3; ++b) {
        const int k = b, l = (b + 1) % 3;
        const double m = integral(i, k) * gg(j, l) - integral(i, l) * gg(j, k) - integral(j, k) * gg(i, l) +
                         integral(j, l) * gg(i, k);
        trip.emplace_back(te[a], te[b], w * ts[a] * ts[b] * m);
      }
    }
    // J: constant proxy from side b, rotated, integrated over side a, area-weighted to the edge.
    for (int a = 0; a < 3; ++a) {
      const auto& et = s.edge_triangles(te[a]);
      const double share = area / (s.triangle_area(et[0]) + s.triangle_area(et[1]));
      const Vec2 side = geo.local[(a + 1) % 3] - geo.local[a];
      for (int b = 0; b < 3; ++b) {
        const Vec2 proxy = (g[(b + 1) % 3] - g[b]) / 3.0;
        const Vec2 rotated(proxy.y(), -proxy.x());
        jtrip.emplace_back(te[a], te[b], share * ts[a] * ts[b] * rotated.dot(side));
      }
    }
  }
  mass_[1].resize(ne, ne);
  mass_[1].setFromTriplets(trip.begin(), trip.end());
  j_.resize(ne, ne);
  j_.setFromTriplets(jtrip.begin(), jtrip.end());

  m1_factor_ = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix>>(mass_[1]);
  if (m1_factor_->info() != Eigen::Success) throw NumericalError("Whitney mass matrix is not positive definite");

  lap0_ = SparseMatrix(d0_.transpose() * mass_[1] * d0_);
}

std::shared_ptr<const CompatibleTriple> CompatibleTriple::make(SurfacePtr surface) {
  auto density = MeasureDensity::uniform(surface);
  return std::make_shared<const CompatibleTriple>(std::move(surface), std::move(density));
}

std::shared_ptr<const CompatibleTriple> CompatibleTriple::make(MeasureDensity density) {
  auto surface = density.surface();
  return std::make_shared<const CompatibleTriple>(std::move(surface), std::move(density));
}

Eigen::VectorXd CompatibleTriple::solve_mass1(const Eigen::VectorXd& rhs) const { return m1_factor_->solve(rhs); }

Vec2 CompatibleTriple::whitney_constant(const Eigen::VectorXd& c, int t) const {
  const auto& te = surface_->triangle_edges(t);
  const auto& ts = surface_->triangle_edge_signs(t);
  const auto& g = grads_[t];
  Vec2 v = Vec2::Zero();
  for (int k = 0; k < 3; ++k) v += ts[k] * c[te[k]] * (g[(k + 1) % 3] - g[k]) / 3.0;
  return v;
}

}  // namespace hamflow
