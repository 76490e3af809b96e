#pragma once

// Independent reference computations for the test suites. Everything here is dense,
// brute force, or closed form, and shares no code path with the sparse pipeline
// beyond the surface and the triple's assembled matrices.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hamflow/forms/cochain.hpp"
#include "hamflow/forms/density.hpp"
#include "hamflow/forms/triple.hpp"
#include "hamflow/mesh/quotient.hpp"

namespace oracle {

using hamflow::Cochain;
using hamflow::CompatibleTriple;
using hamflow::SurfacePtr;

Eigen::MatrixXd dense(const hamflow::SparseMatrix& m);

/// Null space of [d1; d0^T M1] by full SVD; columns are an orthonormal (Euclidean) basis.
Eigen::MatrixXd dense_harmonic_space(const CompatibleTriple& triple, double rel_tol = 1e-10);

/// Dense Hodge split of a closed alpha: minimizer f of ||alpha - d f||_M1 by pseudo-inverse.
struct DenseSplit {
  Eigen::VectorXd f;
  Eigen::VectorXd chi;
};
DenseSplit dense_decompose(const CompatibleTriple& triple, const Eigen::VectorXd& alpha);

/// M1-orthogonal projection of alpha onto span(columns of basis).
Eigen::VectorXd dense_project(const CompatibleTriple& triple, const Eigen::MatrixXd& basis,
                              const Eigen::VectorXd& alpha);

/// Sine of the largest M1 principal angle between two column spans.
double dense_subspace_angle(const CompatibleTriple& triple, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Edge integrals of the constant covector (p, q) on a chart surface: exactly p dx + q dy
/// along each edge vector.
Eigen::VectorXd constant_form(const hamflow::Surface& chart, double p, double q);

/// Affine fit a*f + b of `values` to `target`; returns the max abs residual.
double affine_calibration_error(const Eigen::VectorXd& values, const Eigen::VectorXd& target);

/// Weighted mean-zero gauge done by hand: subtract sum(m0 f)/sum(m0).
Eigen::VectorXd gauge(const CompatibleTriple& triple, Eigen::VectorXd f);

/// Orbit-sum reference for the quotient integral: (1/|G|) * integral of f o p over the total space.
double orbit_average_integral(const hamflow::QuotientCover& cover, const Eigen::VectorXd& f_quotient,
                              const Eigen::VectorXd& density_quotient = {});

/// Fubini reference: (1/|G|) * double sum over M1 x total M2 of f(i) dA1(i) dA2(v).
double fubini_integral(const hamflow::Surface& m1, const hamflow::QuotientCover& cover2, const Eigen::VectorXd& f1);

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi);
  Eigen::VectorXd vector(Eigen::Index n, double lo = -1.0, double hi = 1.0);
  Cochain cochain(const SurfacePtr& s, int degree);
  /// Positive vertex weights with max/min exactly `ratio` (ratio >= 1).
  hamflow::MeasureDensity density(const SurfacePtr& s, double ratio);

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
