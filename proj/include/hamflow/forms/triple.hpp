#pragma once

#include <array>
#include <memory>

#include <Eigen/Core>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "hamflow/forms/cochain.hpp"
#include "hamflow/forms/density.hpp"
#include "hamflow/mesh/surface.hpp"

namespace hamflow {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Discrete compatible triple (omega, g, J) on a surface together with the
/// density-weighted mass matrices of the measure lambda.
///
///  - M0: diagonal, w_v * (barycentric dual area of v)
///  - M1: Galerkin Whitney 1-form mass matrix, triangle weight = vertex mean
///  - M2: diagonal, w_t / area_t
///  - omega: per-triangle area (independent of lambda)
///  - J: per-triangle rotation of the Whitney constant proxy, averaged to edges
///    with area weights; (J beta)(X) = beta(J X) with J the +90 degree rotation
///    of tangent vectors, so J dtheta1 = -dtheta2 on the flat torus.
class CompatibleTriple {
 public:
  CompatibleTriple(SurfacePtr surface, MeasureDensity density);

  static std::shared_ptr<const CompatibleTriple> make(SurfacePtr surface);
  static std::shared_ptr<const CompatibleTriple> make(MeasureDensity density);

  const SurfacePtr& surface() const { return surface_; }
  const MeasureDensity& density() const { return density_; }

  /// Exterior derivative on k-cochains (k = 0: E x V, k = 1: F x E).
  const SparseMatrix& d(int k) const { return k == 0 ? d0_ : d1_; }
  /// Mass matrix on k-cochains.
  const SparseMatrix& mass(int k) const { return mass_[k]; }
  /// Diagonal of M0 (k = 0) or M2 (k = 2).
  const Eigen::VectorXd& diagonal_mass(int k) const { return k == 0 ? m0_ : m2_; }
  Eigen::VectorXd solve_mass1(const Eigen::VectorXd& rhs) const;
  /// Weighted 0-Laplacian d0^T M1 d0.
  const SparseMatrix& laplacian0() const { return lap0_; }
  const SparseMatrix& j_matrix() const { return j_; }
  const Cochain& omega() const { return omega_; }
  /// Largest edge length.
  double mesh_size() const { return h_; }

  /// Constant part (value at the centroid) of the Whitney interpolant of the
  /// 1-cochain `c` on triangle t, in the triangle's local frame.
  Vec2 whitney_constant(const Eigen::VectorXd& c, int t) const;

 private:
  SurfacePtr surface_;
  MeasureDensity density_;
  SparseMatrix d0_;
  SparseMatrix d1_;
  std::array<SparseMatrix, 3> mass_;
  Eigen::VectorXd m0_;
  Eigen::VectorXd m2_;
  SparseMatrix lap0_;
  SparseMatrix j_;
  Cochain omega_;
  double h_ = 0.0;
  std::shared_ptr<Eigen::SimplicialLDLT<SparseMatrix>> m1_factor_;
  std::vector<std::array<Vec2, 3>> grads_;  // barycentric gradients per triangle
};

using TriplePtr = std::shared_ptr<const CompatibleTriple>;

/// Gradients of the barycentric coordinates of a triangle given by local corners.
std::array<Vec2, 3> barycentric_gradients(const std::array<Vec2, 3>& p, double area);

}  // namespace hamflow
