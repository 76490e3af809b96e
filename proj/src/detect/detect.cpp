#include "hamflow/detect/detect.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <Eigen/SVD>

#include "hamflow/error.hpp"

namespace hamflow {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Hamiltonian: return "Hamiltonian";
    case Verdict::NonHamiltonian: return "NonHamiltonian";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HAMFLOW_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
    throw InputError(std::string("HAMFLOW_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Obstruction obstruction(const TangentField& xi, const HarmonicBasis& basis, const DetectOptions& options) {
  if (!basis.triple || xi.surface() != basis.triple->surface())
    throw InputError("field and harmonic basis live on different surfaces");
  const CompatibleTriple& triple = *basis.triple;
  Obstruction out{contract_omega(xi, triple, options.mode, options.quadrature_order), 0.0, 0.0, {}, 0.0};
  out.contraction_norm = norm(out.contraction, triple);
  out.closedness = closedness_defect(out.contraction, triple);
  if (out.closedness > options.tol_symplectic) {
    std::ostringstream os;
    os << "field is not symplectic: closedness defect of its contraction " << out.closedness << " exceeds "
       << options.tol_symplectic;
    throw InputError(os.str());
  }
  const HarmonicProjection p = harmonic_project(out.contraction, basis);
  out.coefficients = p.coefficients;
  if (basis.dimension() > 0 && out.contraction_norm > 0.0)
    out.rho = norm(p.projection, triple) / out.contraction_norm;
  return out;
}

GinzburgSplit ginzburg_split(const Eigen::MatrixXd& o, double tol_rank) {
  const Eigen::Index r = o.rows();
  GinzburgSplit out;
  out.obstruction_matrix = o;
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(r, r);
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(r);
  if (o.cols() > 0 && r > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(o, Eigen::ComputeFullU);
    u = svd.matrixU();
    sigma.head(svd.singularValues().size()) = svd.singularValues();
  }
  out.singular_values = sigma.head(std::min<Eigen::Index>(r, o.cols()));
  const double smax = sigma.size() > 0 ? sigma.maxCoeff() : 0.0;
  std::vector<Eigen::Index> kernel, complement;
  for (Eigen::Index i = 0; i < r; ++i) (sigma[i] <= tol_rank * smax ? kernel : complement).push_back(i);
  auto gather = [&](const std::vector<Eigen::Index>& cols) {
    Eigen::MatrixXd m(r, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      Eigen::VectorXd c = u.col(cols[k]);
      Eigen::Index big = 0;
      c.cwiseAbs().maxCoeff(&big);
      if (c[big] < 0) c = -c;
      m.col(static_cast<Eigen::Index>(k)) = c;
    }
    return m;
  };
  out.kernel_basis = gather(kernel);
  out.complement_basis = gather(complement);
  return out;
}

namespace {

/// Runs job(i) for i in [0, n) on up to `threads` workers; rethrows the first failure by index.
template <class Job>
void parallel_for(int n, int threads, Job job) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) job(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          job(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Eigen::MatrixXd stack_rows(const std::vector<Eigen::VectorXd>& rows, int cols) {
  Eigen::MatrixXd o(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) o.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return o;
}

}  // namespace

GinzburgSplit ginzburg_split(const GeneratorSet& gens, const HarmonicBasis& basis, const DetectOptions& options) {
  std::vector<Eigen::VectorXd> rows(gens.size());
  parallel_for(gens.size(), worker_count(options.threads),
               [&](int i) { rows[i] = obstruction(gens.fields[i], basis, options).coefficients; });
  return ginzburg_split(stack_rows(rows, basis.dimension()), options.tol_rank);
}

MeshSummary summarize(const CompatibleTriple& triple) {
  const Surface& s = *triple.surface();
  return MeshSummary{s.name(),          s.num_vertices(), s.num_edges(),      s.num_triangles(),
                     s.num_components(), s.genus(),        triple.mesh_size(), triple.density().condition_ratio()};
}

bool DetectionReport::any_indeterminate() const {
  return std::any_of(generators.begin(), generators.end(),
                     [](const GeneratorVerdict& g) { return g.verdict == Verdict::Indeterminate; });
}

std::vector<Cochain> DetectionReport::momentum_map() const {
  std::vector<Cochain> mu;
  for (const auto& g : generators) {
    if (!g.momentum) throw InputError("no momentum map: generator '" + g.label + "' is not Hamiltonian");
    mu.push_back(*g.momentum);
  }
  return mu;
}

Cochain DetectionReport::momentum(const Eigen::VectorXd& coefficients) const {
  const auto mu = momentum_map();
  if (coefficients.size() != static_cast<Eigen::Index>(mu.size()))
    throw InputError("momentum: coefficient count does not match generators");
  Cochain out(mu.front().surface(), 0);
  for (std::size_t i = 0; i < mu.size(); ++i) out = out + coefficients[static_cast<Eigen::Index>(i)] * mu[i];
  return out;
}

DetectionReport detect_hamiltonian(const GeneratorSet& gens, const HarmonicBasis& basis,
                                   const DetectOptions& options) {
  if (gens.size() == 0) throw InputError("no generators");
  if (!(options.tol_hamiltonian > 0.0 && options.tol_hamiltonian < options.tol_nonhamiltonian))
    throw InputError("thresholds must satisfy 0 < tol_hamiltonian < tol_nonhamiltonian");
  if (!basis.triple || gens.surface() != basis.triple->surface())
    throw InputError("generators and harmonic basis live on different surfaces");
  const CompatibleTriple& triple = *basis.triple;

  DetectionReport report;
  report.mesh = summarize(triple);
  report.options = options;
  report.harmonic_dimension = basis.dimension();
  report.j_defect = j_invariance_defect(basis);
  report.generators.resize(gens.size());

  parallel_for(gens.size(), worker_count(options.threads), [&](int i) {
    const TangentField& xi = gens.fields[i];
    GeneratorVerdict& g = report.generators[i];
    const Obstruction ob = obstruction(xi, basis, options);
    g.label = gens.labels[i];
    g.contraction_norm = ob.contraction_norm;
    g.closedness = ob.closedness;
    g.coefficients = ob.coefficients;
    g.rho = ob.rho;
    const double fp_tol = options.fixed_point_tol > 0.0
                              ? options.fixed_point_tol
                              : (xi.has_analytic() ? kAnalyticFixedPointTol : kSampledFixedPointTol);
    g.fixed_points = fixed_points(xi, fp_tol);
    if (g.rho <= options.tol_hamiltonian) {
      g.verdict = Verdict::Hamiltonian;
      g.momentum = decompose_closed(ob.contraction, triple, options.tol_symplectic).f;
    } else if (g.rho >= options.tol_nonhamiltonian) {
      g.verdict = Verdict::NonHamiltonian;
    } else {
      g.verdict = Verdict::Indeterminate;
    }
  });

  std::vector<Eigen::VectorXd> rows;
  for (const auto& g : report.generators) rows.push_back(g.coefficients);
  report.ginzburg = ginzburg_split(stack_rows(rows, basis.dimension()), options.tol_rank);
  return report;
}

double momentum_residual(const std::vector<Cochain>& mu, const GeneratorSet& gens, const CompatibleTriple& triple,
                         const DetectOptions& options) {
  if (static_cast<int>(mu.size()) != gens.size()) throw InputError("momentum map is missing components");
  double worst = 0.0;
  for (int i = 0; i < gens.size(); ++i) {
    if (mu[i].degree() != 0 || mu[i].surface() != triple.surface())
      throw InputError("momentum component is not a 0-cochain on this surface");
    const Cochain a = contract_omega(gens.fields[i], triple, options.mode, options.quadrature_order);
    const double n = norm(a, triple);
    const double r = norm(a - d(mu[i]), triple);
    worst = std::max(worst, n > 0.0 ? r / n : r);
  }
  return worst;
}

}  // namespace hamflow
