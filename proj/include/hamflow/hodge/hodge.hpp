#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "hamflow/forms/cochain.hpp"
#include "hamflow/forms/triple.hpp"

namespace hamflow {

/// Tie-breaking for the spanning trees of the tree-cotree construction.
enum class TreeOrder { Ascending, Descending };

/// Integer-valued closed 1-cochains, one per edge outside a primal spanning
/// forest and a dual spanning forest of the non-forest edges. Their classes form
/// a basis of H^1, so there are exactly 2 * genus of them.
std::vector<Cochain> cohomology_generators(const SurfacePtr& surface, TreeOrder order = TreeOrder::Ascending);

/// Scale-free closedness measure ||d alpha||_2 * sqrt(area) / ||alpha||_1 (0 for alpha = 0).
double closedness_defect(const Cochain& alpha, const CompatibleTriple& triple);

struct PoissonOptions {
  double tolerance = 1e-12;
  /// Maximum CG iterations as a multiple of the vertex count.
  int max_iterations_per_vertex = 10;
};

/// Solves d0^T M1 d0 f = rhs (rhs orthogonal to per-component constants) by
/// Jacobi-preconditioned conjugate gradients; f has zero weighted mean per component.
Eigen::VectorXd solve_poisson(const CompatibleTriple& triple, const Eigen::VectorXd& rhs,
                              const PoissonOptions& options = {});

struct DecompositionResult {
  Cochain f;
  Cochain chi;
  double d_chi_norm = 0.0;
  double delta_chi_norm = 0.0;
  /// <d f, chi>_lambda.
  double cross_term = 0.0;
  double input_norm = 0.0;
};

/// alpha = d f + chi with chi harmonic, orthogonal in L^2_lambda.
/// Throws InputError when closedness_defect(alpha) > closed_tol.
DecompositionResult decompose_closed(const Cochain& alpha, const CompatibleTriple& triple, double closed_tol = 1e-8,
                                     const PoissonOptions& options = {});

struct HarmonicBasis {
  TriplePtr triple;
  std::vector<Cochain> elements;  // L^2_lambda-orthonormal
  std::vector<double> d_residuals;
  std::vector<double> delta_residuals;
  int dimension() const { return static_cast<int>(elements.size()); }
};

/// Harmonic representatives of the tree-cotree generators, orthonormalized by
/// modified Gram-Schmidt. Retries with the opposite tree order on rank loss.
HarmonicBasis harmonic_basis(const TriplePtr& triple);

struct HarmonicProjection {
  Eigen::VectorXd coefficients;
  Cochain projection;
};

HarmonicProjection harmonic_project(const Cochain& alpha, const HarmonicBasis& basis);

/// max_i ||(I - P_H) J chi_i|| / ||J chi_i||; 0 for an empty basis.
double j_invariance_defect(const HarmonicBasis& basis);

/// Dimension of ker(delta_lambda d) on 0-cochains. Equals the component count;
/// verified by the constants residual and a deflated solve.
int laplacian0_kernel_dim(const CompatibleTriple& triple);

struct KernelIdentityReport {
  struct Element {
    double d_residual = 0.0;
    double delta_residual = 0.0;
    double laplacian_residual = 0.0;
  };
  std::vector<Element> elements;
  /// ||Delta d g|| / ||d g|| for a random non-constant g.
  double exact_separation = 0.0;
  double max_residual() const;
};

/// Weighted Hodge Laplacian Delta = delta d + d delta on a 1-cochain.
Cochain hodge_laplacian1(const Cochain& c, const CompatibleTriple& triple);

KernelIdentityReport kernel_identity_check(const HarmonicBasis& basis, std::uint64_t seed = 1);

/// Largest L^2_lambda distance from a unit vector of span(a) to span(b), i.e. the sine of
/// the largest principal angle. Both spans must have equal dimension.
double subspace_distance(const std::vector<Cochain>& a, const std::vector<Cochain>& b,
                         const CompatibleTriple& triple);

/// Weighted-mean-zero gauge of a 0-cochain on every component.
Eigen::VectorXd remove_component_means(const CompatibleTriple& triple, Eigen::VectorXd f);

}  // namespace hamflow
