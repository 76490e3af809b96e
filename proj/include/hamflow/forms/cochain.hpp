#pragma once

#include <Eigen/Core>

#include "hamflow/mesh/surface.hpp"

namespace hamflow {

/// Real values on the oriented k-simplices of a surface (k = 0, 1, 2).
/// Edge values refer to the canonical lower-to-higher orientation and triangle
/// values to the triangle's vertex order.
class Cochain {
 public:
  Cochain(SurfacePtr surface, int degree);
  Cochain(SurfacePtr surface, int degree, Eigen::VectorXd values);

  int degree() const { return degree_; }
  const SurfacePtr& surface() const { return surface_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }

  /// Same surface and degree.
  bool compatible(const Cochain& other) const;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  Cochain operator*(double a) const;
  friend Cochain operator*(double a, const Cochain& c) { return c * a; }

 private:
  SurfacePtr surface_;
  int degree_;
  Eigen::VectorXd values_;
};

}  // namespace hamflow
