#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "hamflow/forms/tangent_field.hpp"
#include "hamflow/mesh/automorphism.hpp"

namespace hamflow {

/// Images xi_M of a Lie-algebra basis e_1..e_r under the action.
struct GeneratorSet {
  std::vector<TangentField> fields;
  std::vector<std::string> labels;

  GeneratorSet() = default;
  GeneratorSet(std::vector<TangentField> fields, std::vector<std::string> labels);
  int size() const { return static_cast<int>(fields.size()); }
  const SurfacePtr& surface() const { return fields.front().surface(); }
};

/// Rotation x -> axis x x of an embedded surface (the polar rotation for axis e_z).
struct SphereRotation {
  Vec3 axis = Vec3::UnitZ();
};

/// Constant chart field (a, b) on a flat torus.
struct TorusTranslation {
  double a = 0.0;
  double b = 0.0;
};

/// H(x, y) = amplitude * cos(2 pi (k1 x + k2 y) + phase) on the flat torus.
struct TorusPotential {
  double amplitude = 1.0;
  int k1 = 1;
  int k2 = 0;
  double phase = 0.0;

  double value(const Vec3& p) const;
  Vec3 gradient(const Vec3& p) const;
};

/// Symplectic gradient of H: the field xi with omega(xi, .) = dH, i.e. the
/// gradient rotated by -90 degrees.
struct TorusHamiltonian {
  TorusPotential potential;
};

using BuiltinField = std::variant<SphereRotation, TorusTranslation, TorusHamiltonian>;

TangentField builtin_field(const BuiltinField& spec, const SurfacePtr& surface);
std::string builtin_label(const BuiltinField& spec);

struct FixedPointSet {
  std::vector<int> vertices;
  /// Per connected component.
  std::vector<bool> has_fixed_point;
  /// Per component: min |xi(v)| / max |xi| (0 when a vertex is exactly fixed).
  std::vector<double> margin;
  double rel_tol = 0.0;
  double threshold = 0.0;
  /// Triangles without fixed corners whose linear interpolant dips below threshold.
  std::vector<int> interior_warnings;

  bool empty() const { return vertices.empty(); }
};

inline constexpr double kAnalyticFixedPointTol = 1e-6;
inline constexpr double kSampledFixedPointTol = 1e-3;

/// Vertices with |xi(v)| <= rel_tol * max |xi|.
FixedPointSet fixed_points(const TangentField& xi, double rel_tol);

inline constexpr double kImportTangencyTol = 1e-3;

/// Reads "vertex,x,y,z" rows (an optional header line is skipped); every vertex exactly once.
TangentField load_field_csv(const SurfacePtr& surface, const std::filesystem::path& path,
                            double tangency_tol = kImportTangencyTol);
void write_field_csv(const TangentField& xi, const std::filesystem::path& path);

/// All n * m grid translations of a uniform generated flat torus; element p + n * q
/// translates by (p, q) grid steps.
std::vector<SimplicialAutomorphism> lattice_translations(const Surface& torus);

}  // namespace hamflow
