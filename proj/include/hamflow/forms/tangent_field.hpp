#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hamflow/mesh/surface.hpp"

namespace hamflow {

/// Ambient (or chart) vector field evaluated at an ambient (or chart) point.
using VectorFunction = std::function<Vec3(const Vec3&)>;

/// Per-vertex tangent vectors in the global frame of an embedded or chart surface.
/// An analytic expression, when present, lets contractions be integrated along
/// edges instead of interpolated from vertex samples.
class TangentField {
 public:
  /// Throws InputError when a vector leaves its vertex tangent plane by more than
  /// `tangency_tol` times the largest vector norm.
  TangentField(SurfacePtr surface, std::vector<Vec3> values, VectorFunction analytic = {},
               double tangency_tol = 1e-10);

  /// Samples `analytic` at the vertices and keeps it for quadrature.
  static TangentField from_function(SurfacePtr surface, VectorFunction analytic, double tangency_tol = 1e-10);
  static TangentField zero(SurfacePtr surface);

  const SurfacePtr& surface() const { return surface_; }
  const std::vector<Vec3>& values() const { return values_; }
  const Vec3& operator[](int v) const { return values_[v]; }
  bool has_analytic() const { return static_cast<bool>(analytic_); }
  const VectorFunction& analytic() const { return analytic_; }
  double max_norm() const;
  /// Largest |xi . n| / max|xi| over vertices.
  double tangency_defect() const;

 private:
  SurfacePtr surface_;
  std::vector<Vec3> values_;
  VectorFunction analytic_;
};

/// sum_i coefficients[i] * fields[i]; the analytic part is kept only when all inputs have one.
TangentField linear_combination(std::span<const double> coefficients, std::span<const TangentField> fields);

}  // namespace hamflow
