#include "hamflow/forms/density.hpp"

#include <cmath>

#include "hamflow/error.hpp"

namespace hamflow {

MeasureDensity::MeasureDensity(SurfacePtr surface, Eigen::VectorXd vertex_weights)
    : surface_(std::move(surface)), weights_(std::move(vertex_weights)) {
  if (!surface_) throw InputError("density needs a surface");
  if (weights_.size() != surface_->num_vertices()) throw InputError("density needs one weight per vertex");
  for (Eigen::Index i = 0; i < weights_.size(); ++i)
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw InputError("density must be strictly positive and finite at every vertex");
  min_ = weights_.minCoeff();
  max_ = weights_.maxCoeff();
}

MeasureDensity MeasureDensity::uniform(SurfacePtr surface) {
  const int n = surface->num_vertices();
  return {std::move(surface), Eigen::VectorXd::Ones(n)};
}

MeasureDensity MeasureDensity::from_potential(SurfacePtr surface, const Eigen::VectorXd& potential) {
  return {std::move(surface), (-potential.array()).exp().matrix()};
}

double MeasureDensity::edge_weight(int e) const {
  const auto& edge = surface_->edges()[e];
  return 0.5 * (weights_[edge[0]] + weights_[edge[1]]);
}

double MeasureDensity::triangle_weight(int t) const {
  const auto& tri = surface_->triangles()[t];
  return (weights_[tri[0]] + weights_[tri[1]] + weights_[tri[2]]) / 3.0;
}

}  // namespace hamflow
