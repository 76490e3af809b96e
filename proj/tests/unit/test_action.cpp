#include <doctest.h>

#include <cmath>
#include <fstream>

#include <Eigen/Geometry>

#include "files.hpp"
#include "hamflow/action/action.hpp"
#include "hamflow/error.hpp"
#include "hamflow/forms/operators.hpp"
#include "hamflow/hodge/hodge.hpp"
#include "hamflow/mesh/generators.hpp"
#include "oracles.hpp"

using namespace hamflow;

TEST_CASE("builtin fields") {
  const SurfacePtr s = share(gen_icosphere(2));
  const TangentField rot = builtin_field(SphereRotation{}, s);
  for (int v = 0; v < s->num_vertices(); ++v) {
    const Vec3& p = s->points()[v];
    CHECK((rot[v] - Vec3(-p.y(), p.x(), 0.0)).norm() < 1e-15);
  }
  CHECK(builtin_label(SphereRotation{Vec3(1, 0, 0)}) == "rotation(1,0,0)");
  CHECK(builtin_label(TorusTranslation{1, 0}) == "translation(1,0)");
  CHECK_THROWS_AS(builtin_field(TorusTranslation{1, 0}, s), InputError);

  const SurfacePtr t = share(gen_flat_torus(10, 10));
  CHECK_THROWS_AS(builtin_field(SphereRotation{}, t), InputError);
  const TorusPotential h{0.7, 2, -1, 0.4};
  const TangentField xi = builtin_field(TorusHamiltonian{h}, t);
  const double eps = 1e-6;
  for (int v = 0; v < t->num_vertices(); v += 7) {
    const Vec3& p = t->points()[v];
    const double hx = (h.value(p + eps * Vec3::UnitX()) - h.value(p - eps * Vec3::UnitX())) / (2 * eps);
    const double hy = (h.value(p + eps * Vec3::UnitY()) - h.value(p - eps * Vec3::UnitY())) / (2 * eps);
    CHECK((h.gradient(p) - Vec3(hx, hy, 0)).norm() < 1e-7);
    // omega(xi, .) = dH with omega = dx ^ dy: xi = (H_y, -H_x).
    CHECK((xi[v] - Vec3(hy, -hx, 0)).norm() < 1e-7);
  }
}

TEST_CASE("generator sets validate their inputs") {
  const SurfacePtr a = share(gen_flat_torus(4, 4)), b = share(gen_flat_torus(4, 4));
  const TangentField fa = builtin_field(TorusTranslation{1, 0}, a), fb = builtin_field(TorusTranslation{1, 0}, b);
  CHECK(GeneratorSet({fa, fa}, {"x", "y"}).size() == 2);
  CHECK_THROWS_AS(GeneratorSet({}, {}), InputError);
  CHECK_THROWS_AS(GeneratorSet({fa}, {"x", "y"}), InputError);
  CHECK_THROWS_AS(GeneratorSet({fa, fb}, {"x", "y"}), InputError);
}

TEST_CASE("fixed points") {
  const SurfacePtr s = share(gen_icosphere(3));
  const auto poles = fixed_points(builtin_field(SphereRotation{}, s), kAnalyticFixedPointTol);
  REQUIRE(poles.vertices.size() == 2);
  for (int v : poles.vertices) CHECK(std::abs(std::abs(s->points()[v].z()) - 1.0) < 1e-15);
  CHECK(poles.has_fixed_point == std::vector<bool>{true});
  CHECK(poles.margin[0] == 0.0);
  CHECK(poles.interior_warnings.empty());

  // Tilted axis: no vertex lies on it, but the triangles around the axis dip to zero.
  const auto tilted = fixed_points(builtin_field(SphereRotation{Vec3(0.3, 0.5, 0.8).normalized()}, s), kAnalyticFixedPointTol);
  CHECK(tilted.empty());
  CHECK(tilted.has_fixed_point == std::vector<bool>{false});
  CHECK(tilted.margin[0] > 0.0);
  CHECK(tilted.interior_warnings.size() >= 2);

  const SurfacePtr t = share(gen_flat_torus(16, 16));
  const auto none = fixed_points(builtin_field(TorusTranslation{0, 1}, t), kAnalyticFixedPointTol);
  CHECK(none.empty());
  CHECK(none.margin[0] == doctest::Approx(1.0));
  const auto lines = fixed_points(builtin_field(TorusHamiltonian{{1.0, 1, 0, 0.0}}, t), kAnalyticFixedPointTol);
  CHECK(lines.vertices.size() == 32);
  for (int v : lines.vertices) CHECK(std::abs(std::sin(2 * M_PI * t->points()[v].x())) < 1e-12);
  CHECK(fixed_points(TangentField::zero(t), 0.5).vertices.size() == 256);
  CHECK_THROWS_AS(fixed_points(TangentField::zero(t), 0.0), InputError);
  CHECK_THROWS_AS(fixed_points(TangentField::zero(t), 1.0), InputError);

  const SurfacePtr two = share(disjoint_union(gen_icosphere(2), gen_icosphere(1)));
  const auto split = fixed_points(builtin_field(SphereRotation{}, two), kAnalyticFixedPointTol);
  CHECK(split.has_fixed_point == std::vector<bool>{true, true});
  CHECK(split.vertices.size() == 4);
}

TEST_CASE("field CSV round trip and errors") {
  const SurfacePtr s = share(gen_icosphere(1));
  const TangentField xi = builtin_field(SphereRotation{Vec3(0, 1, 0)}, s);
  const auto p = testfs::scratch("field.csv");
  write_field_csv(xi, p);
  const TangentField back = load_field_csv(s, p);
  CHECK_FALSE(back.has_analytic());
  for (int v = 0; v < s->num_vertices(); ++v) CHECK(back[v] == xi[v]);

  auto rows = [&](auto edit) {
    std::string text = "vertex,x,y,z\n";
    for (int v = 0; v < s->num_vertices(); ++v) {
      std::ostringstream line;
      line.precision(17);
      line << v << ',' << xi[v].x() << ',' << xi[v].y() << ',' << xi[v].z();
      text += edit(v, line.str()) + "\n";
    }
    return text;
  };
  CHECK(load_field_csv(s, testfs::write("ok.csv", rows([](int, std::string l) { return l; }))).values().size() == 42);
  CHECK_THROWS_AS(load_field_csv(s, testfs::write("dup.csv", rows([](int v, std::string l) {
                                   return v == 5 ? "4,0,0,0" : l;
                                 }))),
                  InputError);
  CHECK_THROWS_AS(load_field_csv(s, testfs::write("short.csv", "vertex,x,y,z\n0,0,0,0\n")), InputError);
  CHECK_THROWS_AS(load_field_csv(s, testfs::write("junk.csv", rows([](int v, std::string l) {
                                   return v == 3 ? "3,a,b,c" : l;
                                 }))),
                  InputError);
  CHECK_THROWS_AS(load_field_csv(s, testfs::write("range.csv", rows([](int v, std::string l) {
                                   return v == 3 ? "99,0,0,0" : l;
                                 }))),
                  InputError);
  CHECK_THROWS_WITH_AS(load_field_csv(s, testfs::write("normal.csv", rows([&](int v, std::string l) {
                         if (v != 2) return l;
                         const Vec3 n = s->points()[2].normalized();
                         return "2," + std::to_string(n.x()) + "," + std::to_string(n.y()) + "," + std::to_string(n.z());
                       }))),
                       doctest::Contains("tangen"), InputError);
  CHECK_THROWS_AS(load_field_csv(s, testfs::scratch("missing.csv")), InputError);
}

TEST_CASE("lattice translations") {
  const SurfacePtr t = share(gen_flat_torus(16, 16));
  const auto group = lattice_translations(*t);
  REQUIRE(group.size() == 256);
  const auto expect = torus_translation(*t, 3, 5);
  CHECK(group[3 + 16 * 5].vertex_map() == expect.vertex_map());
  CHECK_THROWS_AS(lattice_translations(gen_warped_flat_torus(8, 8, 0.05)), InputError);
  CHECK_THROWS_AS(lattice_translations(gen_icosphere(1)), InputError);
}

TEST_CASE("lattice translations commute with the codifferential and fix the harmonic basis") {
  oracle::Random rng(21);
  const SurfacePtr t = share(gen_flat_torus(16, 16));
  const TriplePtr tr = CompatibleTriple::make(t);
  const auto basis = harmonic_basis(tr);
  const Cochain a = rng.cochain(t, 1), b = rng.cochain(t, 2);
  const double na = norm(codifferential(a, *tr), *tr), nb = norm(codifferential(b, *tr), *tr);
  double worst_delta = 0.0, worst_basis = 0.0;
  for (const auto& phi : lattice_translations(*t)) {
    worst_delta = std::max(worst_delta, norm(pullback(codifferential(a, *tr), phi) - codifferential(pullback(a, phi), *tr), *tr) / na);
    worst_delta = std::max(worst_delta, norm(pullback(codifferential(b, *tr), phi) - codifferential(pullback(b, phi), *tr), *tr) / nb);
    for (const auto& chi : basis.elements) worst_basis = std::max(worst_basis, norm(pullback(chi, phi) - chi, *tr));
  }
  CHECK(worst_delta <= 1e-10);
  CHECK(worst_basis <= 1e-9);
}
