#pragma once

#include <Eigen/Core>

#include "hamflow/mesh/surface.hpp"

namespace hamflow {

/// Strictly positive per-vertex weight w = exp(-U) of a measure relative to the
/// Riemannian measure. Edge and triangle weights are incident-vertex means.
class MeasureDensity {
 public:
  MeasureDensity(SurfacePtr surface, Eigen::VectorXd vertex_weights);

  static MeasureDensity uniform(SurfacePtr surface);
  /// w_i = exp(-U_i).
  static MeasureDensity from_potential(SurfacePtr surface, const Eigen::VectorXd& potential);

  const SurfacePtr& surface() const { return surface_; }
  const Eigen::VectorXd& vertex_weights() const { return weights_; }
  double vertex_weight(int v) const { return weights_[v]; }
  double edge_weight(int e) const;
  double triangle_weight(int t) const;
  double min_weight() const { return min_; }
  double max_weight() const { return max_; }
  /// max w / min w.
  double condition_ratio() const { return max_ / min_; }
  bool is_uniform() const { return max_ == min_; }

 private:
  SurfacePtr surface_;
  Eigen::VectorXd weights_;
  double min_ = 1.0;
  double max_ = 1.0;
};

}  // namespace hamflow
