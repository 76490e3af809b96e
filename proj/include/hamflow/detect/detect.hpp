#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hamflow/action/action.hpp"
#include "hamflow/forms/operators.hpp"
#include "hamflow/hodge/hodge.hpp"

namespace hamflow {

enum class Verdict { Hamiltonian, NonHamiltonian, Indeterminate };
const char* to_string(Verdict v);

struct DetectOptions {
  double tol_hamiltonian = 1e-6;
  double tol_nonhamiltonian = 1e-2;
  double tol_rank = 1e-8;
  /// Largest closedness defect of i_xi omega accepted as "symplectic".
  double tol_symplectic = 0.5;
  /// Relative fixed-point tolerance; <= 0 picks the analytic or sampled default.
  double fixed_point_tol = 0.0;
  ContractionMode mode = ContractionMode::Direct;
  int quadrature_order = kDefaultQuadratureOrder;
  /// Worker cap; <= 0 reads HAMFLOW_THREADS (default: hardware concurrency).
  int threads = 0;
};

struct Obstruction {
  Cochain contraction;
  double contraction_norm = 0.0;
  double closedness = 0.0;
  Eigen::VectorXd coefficients;
  double rho = 0.0;
};

/// Harmonic part of i_xi omega. Throws InputError "field is not symplectic" when the
/// contraction is not closed within options.tol_symplectic.
Obstruction obstruction(const TangentField& xi, const HarmonicBasis& basis, const DetectOptions& options = {});

struct GeneratorVerdict {
  std::string label;
  double contraction_norm = 0.0;
  double closedness = 0.0;
  Eigen::VectorXd coefficients;
  double rho = 0.0;
  FixedPointSet fixed_points;
  Verdict verdict = Verdict::Indeterminate;
  /// Mean-zero f with i_xi omega = d f + (harmonic); present iff Hamiltonian.
  std::optional<Cochain> momentum;
};

struct GinzburgSplit {
  /// Row i: harmonic coefficients of generator i.
  Eigen::MatrixXd obstruction_matrix;
  Eigen::VectorXd singular_values;
  /// Columns span the Hamiltonian directions (in generator coordinates).
  Eigen::MatrixXd kernel_basis;
  /// Columns span the cohomologically free directions.
  Eigen::MatrixXd complement_basis;
};

/// SVD of O^T: directions with relative singular value <= tol_rank form the kernel.
GinzburgSplit ginzburg_split(const Eigen::MatrixXd& obstruction_matrix, double tol_rank = 1e-8);
GinzburgSplit ginzburg_split(const GeneratorSet& gens, const HarmonicBasis& basis, const DetectOptions& options = {});

struct MeshSummary {
  std::string name;
  int vertices = 0;
  int edges = 0;
  int triangles = 0;
  int components = 0;
  int genus = 0;
  double mesh_size = 0.0;
  double density_condition = 1.0;
};

MeshSummary summarize(const CompatibleTriple& triple);

struct DetectionReport {
  MeshSummary mesh;
  DetectOptions options;
  int harmonic_dimension = 0;
  double j_defect = 0.0;
  std::vector<GeneratorVerdict> generators;
  GinzburgSplit ginzburg;

  bool any_indeterminate() const;
  /// mu^{e_i} for every generator; throws InputError unless all are Hamiltonian.
  std::vector<Cochain> momentum_map() const;
  /// mu^xi for xi = sum_i coefficients[i] e_i.
  Cochain momentum(const Eigen::VectorXd& coefficients) const;
};

DetectionReport detect_hamiltonian(const GeneratorSet& gens, const HarmonicBasis& basis,
                                   const DetectOptions& options = {});

/// max_i ||i_{e_i} omega - d mu^{e_i}|| / ||i_{e_i} omega||.
double momentum_residual(const std::vector<Cochain>& mu, const GeneratorSet& gens, const CompatibleTriple& triple,
                         const DetectOptions& options = {});

/// Effective worker count: `requested` if positive, else HAMFLOW_THREADS, else hardware.
int worker_count(int requested);

}  // namespace hamflow
