#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>

#include <Eigen/Geometry>

#include "files.hpp"
#include "hamflow/action/action.hpp"
#include "hamflow/error.hpp"
#include "hamflow/forms/operators.hpp"
#include "hamflow/mesh/generators.hpp"
#include "oracles.hpp"

using namespace hamflow;

namespace {

AnalyticForm constant_covector(double p, double q) {
  return {1, [p, q](const Vec3&) { return Vec3(p, q, 0.0); }};
}

/// Tangential part of e_z on the unit sphere: the covector of dz.
AnalyticForm sphere_dz() {
  return {1, [](const Vec3& x) { return Vec3(Vec3::UnitZ() - x.z() * x); }};
}

AnalyticForm smooth_torus_form() {
  return {1, [](const Vec3& x) { return Vec3(std::sin(2 * M_PI * x.y()), std::cos(2 * M_PI * x.x()), 0.0); }};
}

/// Wrapped chart increment of coordinate k along each canonical edge.
Eigen::VectorXd coordinate_increments(const Surface& s, int k) {
  Eigen::VectorXd out(s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e) {
    double v = s.points()[s.edges()[e][1]][k] - s.points()[s.edges()[e][0]][k];
    v -= std::round(v);
    out[e] = v;
  }
  return out;
}

}  // namespace

TEST_CASE("d: d o d = 0 exactly, constants are closed, degree 2 rejected") {
  oracle::Random rng(1);
  for (const SurfacePtr& s : {share(gen_icosphere(2)), share(gen_flat_torus(5, 7))}) {
    for (int trial = 0; trial < 5; ++trial) {
      // Integer values keep every sum exact; general values cancel to round-off.
      const Eigen::VectorXd r = rng.vector(s->num_vertices());
      const Cochain fi(s, 0, (1000.0 * r).array().round().matrix());
      CHECK(d(d(fi)).values().cwiseAbs().maxCoeff() == 0.0);
      const Cochain f(s, 0, r);
      CHECK(d(d(f)).values().cwiseAbs().maxCoeff() <= 4 * std::numeric_limits<double>::epsilon() * r.cwiseAbs().maxCoeff());
    }
    const Cochain c(s, 0, Eigen::VectorXd::Constant(s->num_vertices(), 3.5));
    CHECK(d(c).values().cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(d(Cochain(s, 2)), InputError);
  }
}

TEST_CASE("d theta1 by edge increments mod 1 is closed and not exact") {
  const SurfacePtr s = share(gen_flat_torus(4, 4));
  const Cochain t1(s, 1, coordinate_increments(*s, 0));
  CHECK(d(t1).values().cwiseAbs().maxCoeff() == 0.0);
  const Cochain dr = de_rham(constant_covector(1, 0), s);
  CHECK((dr - t1).values().cwiseAbs().maxCoeff() < 1e-15);
  // Not exact: a loop in the theta1 direction integrates to 1.
  double loop = 0.0;
  for (int i = 0; i < 4; ++i) {
    const int a = i, b = (i + 1) % 4;
    const int e = s->edge_index(a, b);
    loop += (a < b ? 1.0 : -1.0) * t1[e];
  }
  CHECK(loop == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("de Rham map") {
  const SurfacePtr sphere = share(gen_icosphere(3));
  const Cochain area = de_rham({2, [](const Vec3& x) { return Vec3(x.normalized()); }}, sphere, 3);
  // Inscribed polyhedron: -0.57% at this resolution.
  CHECK(std::abs(area.values().sum() / (4 * M_PI) - 1.0) < 1e-2);
  const Cochain zero = de_rham({1, [](const Vec3&) { return Vec3(Vec3::Zero()); }}, sphere);
  CHECK(zero.values().cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(de_rham({0, [](const Vec3&) { return Vec3(Vec3::Zero()); }}, sphere), InputError);
  CHECK_THROWS_AS(de_rham(constant_covector(1, 0), sphere, 0), InputError);
  CHECK_THROWS_AS(de_rham(constant_covector(1, 0), sphere, 6), InputError);

  // Order n Gauss is exact for the cubic x^2 dx along straight edges: compare to x^3/3.
  const SurfacePtr torus = share(gen_flat_torus(5, 3));
  const Cochain c = de_rham({1, [](const Vec3& x) { return Vec3(x.x() * x.x(), 0.0, 0.0); }}, torus, 2);
  for (int e = 0; e < torus->num_edges(); ++e) {
    const int t = torus->edge_triangles(e)[0];
    const auto& g = torus->triangle_geometry(t);
    const auto& tri = torus->triangles()[t];
    const int k = tri[0] == torus->edges()[e][0] ? 0 : (tri[1] == torus->edges()[e][0] ? 1 : 2);
    const double x0 = g.corner[k].x(), x1 = x0 + torus->edge_vector(e).x();
    CHECK(c[e] == doctest::Approx((x1 * x1 * x1 - x0 * x0 * x0) / 3.0).epsilon(1e-13));
  }
}

TEST_CASE("quadrature rules integrate polynomials to their degree") {
  for (int n = 1; n <= 5; ++n) {
    const auto& r = segment_rule(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double acc = 0.0;
      for (std::size_t q = 0; q < r.points.size(); ++q) acc += r.weights[q] * std::pow(r.points[q], p);
      CHECK(acc == doctest::Approx(1.0 / (p + 1)).epsilon(1e-14));
    }
    const auto& t = triangle_rule(n);
    // Mean of l1^a l2^b over the triangle: 2 a! b! / (a + b + 2)!.
    auto fact = [](int k) { return std::tgamma(k + 1.0); };
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b) {
        double acc = 0.0;
        for (std::size_t q = 0; q < t.points.size(); ++q)
          acc += t.weights[q] * std::pow(t.points[q][0], a) * std::pow(t.points[q][1], b);
        CHECK(acc == doctest::Approx(2.0 * fact(a) * fact(b) / fact(a + b + 2)).epsilon(1e-13));
      }
  }
  CHECK_THROWS_AS(segment_rule(0), InputError);
  CHECK_THROWS_AS(triangle_rule(6), InputError);
}

TEST_CASE("mass matrices: diagonal entries, SPD, constant-form oracle") {
  oracle::Random rng(2);
  const SurfacePtr s = share(gen_flat_torus(3, 3));
  const MeasureDensity lam = rng.density(s, 50.0);
  const CompatibleTriple tr(s, lam);
  for (int v = 0; v < s->num_vertices(); ++v)
    CHECK(tr.diagonal_mass(0)[v] == doctest::Approx(lam.vertex_weight(v) * s->dual_area(v)).epsilon(1e-15));
  for (int t = 0; t < s->num_triangles(); ++t)
    CHECK(tr.diagonal_mass(2)[t] == doctest::Approx(lam.triangle_weight(t) / s->triangle_area(t)).epsilon(1e-15));
  const Eigen::MatrixXd m1 = oracle::dense(tr.mass(1));
  CHECK((m1 - m1.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m1).eigenvalues().minCoeff() > 0.0);
  // A constant form has a constant Whitney proxy: |a|_M1^2 = sum_t w_t A_t |p|^2.
  const Eigen::VectorXd c = oracle::constant_form(*s, 0.3, -1.7);
  double expect = 0.0;
  for (int t = 0; t < s->num_triangles(); ++t) expect += lam.triangle_weight(t) * s->triangle_area(t) * (0.09 + 2.89);
  CHECK(c.dot(m1 * c) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(tr.omega().values().minCoeff() > 0.0);
}

TEST_CASE("inner product") {
  oracle::Random rng(3);
  const SurfacePtr s = share(gen_icosphere(1));
  const CompatibleTriple tr(s, rng.density(s, 100.0));
  for (int k = 0; k < 3; ++k) {
    const Cochain a = rng.cochain(s, k), b = rng.cochain(s, k);
    CHECK(inner(a, a, tr) > 0.0);
    CHECK(inner(a, b, tr) == inner(b, a, tr));
    const Eigen::MatrixXd m = oracle::dense(tr.mass(k));
    CHECK(inner(a, b, tr) == doctest::Approx(a.values().dot(m * b.values())).epsilon(1e-13));
  }
  CHECK_THROWS_AS(inner(rng.cochain(s, 0), rng.cochain(s, 1), tr), InputError);
  const SurfacePtr other = share(gen_icosphere(1));
  CHECK_THROWS_AS(inner(rng.cochain(other, 1), rng.cochain(other, 1), tr), InputError);

  const SurfacePtr t = share(gen_flat_torus(3, 3));
  const auto ttr = CompatibleTriple::make(t);
  const Cochain d1(t, 1, oracle::constant_form(*t, 1, 0)), d2(t, 1, oracle::constant_form(*t, 0, 1));
  CHECK(std::abs(inner(d1, d2, *ttr)) < 1e-10);
  const Eigen::MatrixXd m1 = oracle::dense(ttr->mass(1));
  CHECK(std::abs(d1.values().dot(m1 * d2.values())) < 1e-10);
  CHECK(inner(d1, d1, *ttr) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("codifferential: adjointness, zero, harmonic d theta1") {
  oracle::Random rng(4);
  for (const SurfacePtr& s : {share(gen_icosphere(2)), share(gen_flat_torus(6, 5)), share(gen_revolution_torus(9, 7))}) {
    for (int trial = 0; trial < 5; ++trial) {
      const CompatibleTriple tr(s, rng.density(s, 1e3));
      for (int k = 0; k < 2; ++k) {
        const Cochain a = rng.cochain(s, k), b = rng.cochain(s, k + 1);
        const double lhs = inner(d(a), b, tr), rhs = inner(a, codifferential(b, tr), tr);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * norm(a, tr) * norm(b, tr));
      }
    }
    const auto tr = CompatibleTriple::make(s);
    CHECK(codifferential(Cochain(s, 1), *tr).values().cwiseAbs().maxCoeff() == 0.0);
    CHECK(codifferential(Cochain(s, 2), *tr).values().cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(codifferential(Cochain(s, 0), *tr), InputError);
  }
  const SurfacePtr t = share(gen_flat_torus(4, 4));
  const auto tr = CompatibleTriple::make(t);
  const Cochain t1(t, 1, oracle::constant_form(*t, 1, 0));
  CHECK(norm(codifferential(t1, *tr), *tr) < 1e-10);
  // Dense null-space oracle: d theta1 lies in ker d intersect ker delta.
  const Eigen::MatrixXd h = oracle::dense_harmonic_space(*tr);
  CHECK(h.cols() == 2);
  const Eigen::VectorXd p = oracle::dense_project(*tr, h, t1.values());
  CHECK((p - t1.values()).norm() < 1e-10 * t1.values().norm());
}

TEST_CASE("flat") {
  const SurfacePtr t = share(gen_flat_torus(8, 6));
  const auto tr = CompatibleTriple::make(t);
  CHECK(flat(TangentField::zero(t), *tr).values().cwiseAbs().maxCoeff() == 0.0);
  const TangentField d1 = builtin_field(TorusTranslation{1, 0}, t);
  CHECK((flat(d1, *tr) - de_rham(constant_covector(1, 0), t)).values().cwiseAbs().maxCoeff() < 1e-15);

  // Sphere rotation: d(flat xi) converges to the de Rham image of 2 z omega.
  double prev = 1.0;
  for (int sub = 2; sub <= 4; ++sub) {
    const SurfacePtr s = share(gen_icosphere(sub));
    const auto st = CompatibleTriple::make(s);
    const Cochain target = de_rham({2, [](const Vec3& x) { return Vec3(2 * x.z() * x.normalized()); }}, s);
    const double err = norm(d(flat(builtin_field(SphereRotation{}, s), *st)) - target, *st) / norm(target, *st);
    CHECK(err < prev);
    CHECK(err < 0.05);
    prev = err;
  }
}

TEST_CASE("tangent fields") {
  const SurfacePtr s = share(gen_icosphere(1));
  CHECK_THROWS_WITH_AS(TangentField(s, std::vector<Vec3>(s->num_vertices(), Vec3::UnitZ())),
                       doctest::Contains("tangency"), InputError);
  CHECK_THROWS_AS(TangentField(s, std::vector<Vec3>(3, Vec3::Zero())), InputError);
  const TangentField a = builtin_field(SphereRotation{Vec3::UnitZ()}, s), b = builtin_field(SphereRotation{Vec3::UnitX()}, s);
  const double coeffs[] = {2.0, -1.0};
  const TangentField fields[] = {a, b};
  const TangentField c = linear_combination(coeffs, fields);
  CHECK(c.has_analytic());
  const Vec3 p(0.3, -0.4, 0.5);
  CHECK((c.analytic()(p) - (2.0 * Vec3::UnitZ() - Vec3::UnitX()).cross(p)).norm() < 1e-15);
  for (int v = 0; v < s->num_vertices(); ++v) CHECK((c[v] - (2.0 * a[v] - b[v])).norm() < 1e-15);
  const TangentField sampled(s, a.values());
  const TangentField mixed[] = {a, sampled};
  CHECK_FALSE(linear_combination(coeffs, mixed).has_analytic());
  const SurfacePtr intr = share(Surface::intrinsic(4, {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}},
                                                   {{{0, 1}, 1.0}, {{0, 2}, 1.0}, {{0, 3}, 1.0}, {{1, 2}, 1.0}, {{1, 3}, 1.0}, {{2, 3}, 1.0}}));
  CHECK_THROWS_AS(TangentField::zero(intr), InputError);
}

TEST_CASE("J on the flat torus") {
  const SurfacePtr t = share(gen_flat_torus(8, 8));
  const auto tr = CompatibleTriple::make(t);
  const Cochain t1(t, 1, oracle::constant_form(*t, 1, 0)), t2(t, 1, oracle::constant_form(*t, 0, 1));
  // (J beta)(X) = beta(J X) with J the +90 degree rotation: J dtheta1 = -dtheta2, J dtheta2 = dtheta1.
  CHECK((j_apply(t1, *tr) + t2).values().cwiseAbs().maxCoeff() < 1e-10);
  CHECK((j_apply(t2, *tr) - t1).values().cwiseAbs().maxCoeff() < 1e-10);
  CHECK(j_apply(Cochain(t, 1), *tr).values().cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(j_apply(Cochain(t, 0), *tr), InputError);

  // Single-cell oracle: lower triangle (0,0),(h,0),(h,h) alone carries the constant proxy
  // of a generic form; rotating it by hand gives the same edge values.
  const auto& g = t->triangle_geometry(0);
  const Vec2 b(0.7, -1.3), jb(b.y(), -b.x());
  const Cochain c(t, 1, oracle::constant_form(*t, b.x(), b.y()));
  const Cochain jc = j_apply(c, *tr);
  for (int k = 0; k < 3; ++k) {
    const int e = t->triangle_edges(0)[k];
    const double side = jb.dot(g.local[(k + 1) % 3] - g.local[k]);
    CHECK(t->triangle_edge_signs(0)[k] * jc[e] == doctest::Approx(side).epsilon(1e-12));
  }
}

TEST_CASE("J squared and J norm on smooth cochains approach -I and 1 as O(h)") {
  double prev = 1.0;
  for (int n : {8, 16, 32}) {
    const SurfacePtr t = share(gen_flat_torus(n, n));
    const auto tr = CompatibleTriple::make(t);
    const Cochain c = de_rham(smooth_torus_form(), t);
    const double h = tr->mesh_size();
    const double jj = norm(j_apply(j_apply(c, *tr), *tr) + c, *tr) / norm(c, *tr);
    const double ratio = norm(j_apply(c, *tr), *tr) / norm(c, *tr);
    CHECK(jj < prev);
    CHECK(jj <= 1.0 * h);
    CHECK(std::abs(ratio - 1.0) <= 1.0 * h);
    prev = jj;
  }
  prev = 1.0;
  for (int sub = 2; sub <= 4; ++sub) {
    const SurfacePtr s = share(gen_icosphere(sub));
    const auto tr = CompatibleTriple::make(s);
    const Cochain c = de_rham(sphere_dz(), s);
    const double jj = norm(j_apply(j_apply(c, *tr), *tr) + c, *tr) / norm(c, *tr);
    CHECK(jj < prev);
    CHECK(jj <= 0.1 * tr->mesh_size());
    prev = jj;
  }
}

TEST_CASE("contraction with omega") {
  const SurfacePtr t = share(gen_flat_torus(8, 8));
  const auto tr = CompatibleTriple::make(t);
  const Cochain t1(t, 1, oracle::constant_form(*t, 1, 0)), t2(t, 1, oracle::constant_form(*t, 0, 1));
  for (auto mode : {ContractionMode::Direct, ContractionMode::ViaJ}) {
    CHECK((contract_omega(builtin_field(TorusTranslation{0, 1}, t), *tr, mode) + t1).values().cwiseAbs().maxCoeff() < 1e-14);
    CHECK((contract_omega(builtin_field(TorusTranslation{1, 0}, t), *tr, mode) - t2).values().cwiseAbs().maxCoeff() < 1e-14);
    CHECK(contract_omega(TangentField::zero(t), *tr, mode).values().cwiseAbs().maxCoeff() == 0.0);
  }
  // Sampled constant field: the per-triangle proxy is exact.
  const TangentField sampled(t, builtin_field(TorusTranslation{0, 1}, t).values());
  CHECK((contract_omega(sampled, *tr) + t1).values().cwiseAbs().maxCoeff() < 1e-14);

  // Hamiltonian field: direct contraction is the de Rham image of dH.
  const TorusPotential h{0.8, 1, 2, 0.3};
  const Cochain a = contract_omega(builtin_field(TorusHamiltonian{h}, t), *tr);
  Eigen::VectorXd hv(t->num_vertices());
  for (int v = 0; v < t->num_vertices(); ++v) hv[v] = h.value(t->points()[v]);
  const Cochain dh = d(Cochain(t, 0, hv));
  // Only the edge quadrature separates them.
  CHECK(norm(a - dh, *tr) / norm(dh, *tr) < 1e-4);
  const Cochain a5 = contract_omega(builtin_field(TorusHamiltonian{h}, t), *tr, ContractionMode::Direct, 5);
  CHECK(norm(a5 - dh, *tr) / norm(dh, *tr) < 1e-7);

  double prev = 1.0;
  for (int sub = 2; sub <= 4; ++sub) {
    const SurfacePtr s = share(gen_icosphere(sub));
    const auto st = CompatibleTriple::make(s);
    const TangentField xi = builtin_field(SphereRotation{}, s);
    const Cochain dir = contract_omega(xi, *st), via = contract_omega(xi, *st, ContractionMode::ViaJ);
    const double gap = norm(dir - via, *st) / norm(dir, *st);
    CHECK(gap < prev);
    CHECK(gap <= st->mesh_size());
    prev = gap;
    // Direct contraction of the rotation approaches dz.
    Eigen::VectorXd z(s->num_vertices());
    for (int v = 0; v < s->num_vertices(); ++v) z[v] = s->points()[v].z();
    CHECK(norm(dir - d(Cochain(s, 0, z)), *st) / norm(dir, *st) < 0.05 * st->mesh_size());
  }
}

TEST_CASE("pullback") {
  oracle::Random rng(6);
  const SurfacePtr t = share(gen_flat_torus(8, 8));
  const auto id = SimplicialAutomorphism::identity(*t);
  const auto phi = torus_translation(*t, 1, 0);
  for (int k = 0; k < 3; ++k) {
    const Cochain c = rng.cochain(t, k);
    CHECK((pullback(c, id) - c).values().cwiseAbs().maxCoeff() == 0.0);
  }
  const Cochain f = rng.cochain(t, 0);
  CHECK((pullback(d(f), phi) - d(pullback(f, phi))).values().cwiseAbs().maxCoeff() == 0.0);
  const Cochain a = rng.cochain(t, 1);
  CHECK((pullback(d(a), phi) - d(pullback(a, phi))).values().cwiseAbs().maxCoeff() == 0.0);
  const Cochain pf = pullback(f, phi);
  for (int v = 0; v < t->num_vertices(); ++v) CHECK(pf[v] == f[phi.vertex_map()[v]]);
  const Cochain t1 = de_rham(constant_covector(1, 0), t);
  CHECK((pullback(t1, phi) - t1).values().cwiseAbs().maxCoeff() == 0.0);
  const SurfacePtr other = share(gen_flat_torus(4, 4));
  CHECK_THROWS_AS(pullback(rng.cochain(other, 1), phi), InputError);
}

TEST_CASE("density") {
  const SurfacePtr s = share(gen_icosphere(1));
  CHECK_THROWS_AS(MeasureDensity(s, Eigen::VectorXd::Zero(s->num_vertices())), InputError);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(s->num_vertices());
  w[3] = std::nan("");
  CHECK_THROWS_AS(MeasureDensity(s, w), InputError);
  CHECK_THROWS_AS(MeasureDensity(s, Eigen::VectorXd::Ones(5)), InputError);
  Eigen::VectorXd u(s->num_vertices());
  for (int v = 0; v < s->num_vertices(); ++v) u[v] = s->points()[v].z();
  const MeasureDensity lam = MeasureDensity::from_potential(s, u);
  CHECK(lam.condition_ratio() == doctest::Approx(std::exp(2.0)).epsilon(1e-12));
  const int e = 7;
  CHECK(lam.edge_weight(e) ==
        doctest::Approx(0.5 * (lam.vertex_weight(s->edges()[e][0]) + lam.vertex_weight(s->edges()[e][1]))));
  CHECK(MeasureDensity::uniform(s).is_uniform());
}

TEST_CASE("cochain CSV export") {
  const SurfacePtr s = share(gen_flat_torus(3, 3));
  const Cochain c(s, 1, Eigen::VectorXd::LinSpaced(s->num_edges(), 0.0, 1.0));
  const auto p = testfs::scratch("c.csv");
  write_cochain_csv(c, p);
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  CHECK(line == "index,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == s->num_edges());
}
