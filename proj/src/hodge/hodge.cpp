#include "hamflow/hodge/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Eigenvalues>

#include "hamflow/error.hpp"
#include "hamflow/forms/operators.hpp"

namespace hamflow {

std::vector<Cochain> cohomology_generators(const SurfacePtr& surface, TreeOrder order) {
  const Surface& s = *surface;
  const int nv = s.num_vertices(), ne = s.num_edges(), nt = s.num_triangles();
  const bool asc = order == TreeOrder::Ascending;

  std::vector<std::vector<int>> vertex_edges(nv);
  for (int e = 0; e < ne; ++e) {
    vertex_edges[s.edges()[e][0]].push_back(e);
    vertex_edges[s.edges()[e][1]].push_back(e);
  }
  for (auto& list : vertex_edges) {
    if (asc) std::sort(list.begin(), list.end());
    else std::sort(list.rbegin(), list.rend());
  }

  // Primal spanning forest.
  std::vector<char> in_tree(ne, 0);
  std::vector<char> seen(nv, 0);
  for (int i = 0; i < nv; ++i) {
    const int root = asc ? i : nv - 1 - i;
    if (seen[root]) continue;
    seen[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int e : vertex_edges[v]) {
        const int w = s.edges()[e][0] == v ? s.edges()[e][1] : s.edges()[e][0];
        if (seen[w]) continue;
        seen[w] = 1;
        in_tree[e] = 1;
        q.push(w);
      }
    }
  }

  // Dual spanning forest across non-tree edges; bfs order and parent edge per triangle.
  std::vector<char> in_cotree(ne, 0);
  std::vector<int> parent_edge(nt, -1);
  std::vector<int> bfs;
  bfs.reserve(nt);
  std::vector<char> tseen(nt, 0);
  for (int i = 0; i < nt; ++i) {
    const int root = asc ? i : nt - 1 - i;
    if (tseen[root]) continue;
    tseen[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int t = q.front();
      q.pop();
      bfs.push_back(t);
      std::array<int, 3> te = s.triangle_edges(t);
      if (asc) std::sort(te.begin(), te.end());
      else std::sort(te.rbegin(), te.rend());
      for (int e : te) {
        if (in_tree[e]) continue;
        const auto& et = s.edge_triangles(e);
        const int u = et[0] == t ? et[1] : et[0];
        if (tseen[u]) continue;
        tseen[u] = 1;
        in_cotree[e] = 1;
        parent_edge[u] = e;
        q.push(u);
      }
    }
  }

  std::vector<int> generator_edges;
  for (int e = 0; e < ne; ++e)
    if (!in_tree[e] && !in_cotree[e]) generator_edges.push_back(e);
  if (!asc) std::reverse(generator_edges.begin(), generator_edges.end());
  if (static_cast<int>(generator_edges.size()) != 2 * s.genus())
    throw NumericalError("tree-cotree produced an unexpected number of generators");

  std::vector<Cochain> out;
  out.reserve(generator_edges.size());
  for (int g : generator_edges) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(ne);
    c[g] = 1.0;
    // Leaves first: every non-root triangle fixes its parent edge from closedness.
    for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
      const int t = *it;
      const int p = parent_edge[t];
      if (p < 0) continue;
      double sum = 0.0;
      int sign_p = 0;
      for (int k = 0; k < 3; ++k) {
        const int e = s.triangle_edges(t)[k];
        if (e == p) sign_p = s.triangle_edge_signs(t)[k];
        else sum += s.triangle_edge_signs(t)[k] * c[e];
      }
      c[p] = -sum / sign_p;
    }
    Cochain cocycle(surface, 1, std::move(c));
    if (d(cocycle).values().cwiseAbs().maxCoeff() != 0.0)
      throw NumericalError("tree-cotree generator is not closed");
    out.push_back(std::move(cocycle));
  }
  return out;
}

double closedness_defect(const Cochain& alpha, const CompatibleTriple& triple) {
  const double n = norm(alpha, triple);
  if (n == 0.0) return 0.0;
  return norm(d(alpha), triple) * std::sqrt(triple.surface()->total_area()) / n;
}

Eigen::VectorXd remove_component_means(const CompatibleTriple& triple, Eigen::VectorXd f) {
  const Surface& s = *triple.surface();
  const auto& m0 = triple.diagonal_mass(0);
  std::vector<double> mass(s.num_components(), 0.0), moment(s.num_components(), 0.0);
  for (int v = 0; v < s.num_vertices(); ++v) {
    mass[s.vertex_component()[v]] += m0[v];
    moment[s.vertex_component()[v]] += m0[v] * f[v];
  }
  for (int v = 0; v < s.num_vertices(); ++v) {
    const int c = s.vertex_component()[v];
    f[v] -= moment[c] / mass[c];
  }
  return f;
}

Eigen::VectorXd solve_poisson(const CompatibleTriple& triple, const Eigen::VectorXd& rhs,
                              const PoissonOptions& options) {
  const int nv = triple.surface()->num_vertices();
  if (rhs.size() != nv) throw InputError("Poisson right-hand side has wrong size");
  if (rhs.squaredNorm() == 0.0) return Eigen::VectorXd::Zero(nv);
  // The residual is measured for M0^{-1} L f = M0^{-1} rhs in the M0 norm, i.e. on the
  // symmetrically scaled system; Jacobi-preconditioned iterates are unaffected by the scaling.
  const Eigen::VectorXd scale = triple.diagonal_mass(0).cwiseSqrt().cwiseInverse();
  const SparseMatrix scaled = scale.asDiagonal() * triple.laplacian0() * scale.asDiagonal();
  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
  cg.setTolerance(options.tolerance);
  cg.setMaxIterations(options.max_iterations_per_vertex * nv);
  cg.compute(scaled);
  auto check = [&cg] {
    if (cg.info() == Eigen::Success) return;
    std::ostringstream os;
    os << "Poisson solve did not converge (iterations " << cg.iterations() << ", relative residual " << cg.error()
       << ")";
    throw NumericalError(os.str());
  };
  // Kernel of the scaled operator: M0^{1/2} times each component indicator.
  const Surface& s = *triple.surface();
  auto deflate = [&](Eigen::VectorXd v) {
    std::vector<double> num(s.num_components(), 0.0), den(s.num_components(), 0.0);
    for (int i = 0; i < nv; ++i) {
      const int c = s.vertex_component()[i];
      num[c] += v[i] / scale[i];
      den[c] += 1.0 / (scale[i] * scale[i]);
    }
    for (int i = 0; i < nv; ++i) {
      const int c = s.vertex_component()[i];
      v[i] -= num[c] / den[c] / scale[i];
    }
    return v;
  };
  const Eigen::VectorXd b = deflate(scale.cwiseProduct(rhs));
  Eigen::VectorXd y = cg.solve(b);
  check();
  // One refinement pass on the true residual.
  const Eigen::VectorXd r = deflate(b - scaled * y);
  if (r.norm() > 0.0) {
    y += cg.solve(r);
    check();
  }
  Eigen::VectorXd f = scale.cwiseProduct(y);
  return remove_component_means(triple, std::move(f));
}

DecompositionResult decompose_closed(const Cochain& alpha, const CompatibleTriple& triple, double closed_tol,
                                     const PoissonOptions& options) {
  if (alpha.degree() != 1) throw InputError("decomposition needs a 1-cochain");
  if (alpha.surface() != triple.surface()) throw InputError("cochain and triple live on different surfaces");
  const double defect = closedness_defect(alpha, triple);
  if (defect > closed_tol) {
    std::ostringstream os;
    os << "input not closed: closedness defect " << defect << " exceeds " << closed_tol;
    throw InputError(os.str());
  }
  const Eigen::VectorXd rhs = triple.d(0).transpose() * (triple.mass(1) * alpha.values());
  Cochain f(alpha.surface(), 0, solve_poisson(triple, rhs, options));
  Cochain df = d(f);
  Cochain chi = alpha - df;
  return DecompositionResult{
      .f = f,
      .chi = chi,
      .d_chi_norm = norm(d(chi), triple),
      .delta_chi_norm = norm(codifferential(chi, triple), triple),
      .cross_term = inner(df, chi, triple),
      .input_norm = norm(alpha, triple),
  };
}

namespace {

/// Modified Gram-Schmidt with one re-orthogonalization pass; returns false on rank loss.
bool orthonormalize(std::vector<Cochain>& vs, const CompatibleTriple& triple, double rank_tol) {
  std::vector<Cochain> out;
  for (const auto& v0 : vs) {
    const double original = norm(v0, triple);
    Cochain v = v0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : out) v = v - inner(v, q, triple) * q;
    const double n = norm(v, triple);
    if (!(n > rank_tol * original)) return false;
    out.push_back(v * (1.0 / n));
  }
  vs = std::move(out);
  return true;
}

HarmonicBasis basis_with_order(const TriplePtr& triple, TreeOrder order) {
  HarmonicBasis basis;
  basis.triple = triple;
  for (const auto& g : cohomology_generators(triple->surface(), order))
    basis.elements.push_back(decompose_closed(g, *triple).chi);
  if (!orthonormalize(basis.elements, *triple, 1e-8)) basis.elements.clear();
  return basis;
}

}  // namespace

HarmonicBasis harmonic_basis(const TriplePtr& triple) {
  const int expected = 2 * triple->surface()->genus();
  HarmonicBasis basis = basis_with_order(triple, TreeOrder::Ascending);
  if (basis.dimension() != expected) basis = basis_with_order(triple, TreeOrder::Descending);
  if (basis.dimension() != expected) throw NumericalError("harmonic basis lost rank after projection");
  for (const auto& chi : basis.elements) {
    basis.d_residuals.push_back(norm(d(chi), *triple));
    basis.delta_residuals.push_back(norm(codifferential(chi, *triple), *triple));
  }
  return basis;
}

HarmonicProjection harmonic_project(const Cochain& alpha, const HarmonicBasis& basis) {
  if (!basis.triple || alpha.surface() != basis.triple->surface() || alpha.degree() != 1)
    throw InputError("harmonic projection: cochain and basis do not match");
  HarmonicProjection out{Eigen::VectorXd::Zero(basis.dimension()), Cochain(alpha.surface(), 1)};
  for (int i = 0; i < basis.dimension(); ++i) {
    out.coefficients[i] = inner(alpha, basis.elements[i], *basis.triple);
    out.projection = out.projection + out.coefficients[i] * basis.elements[i];
  }
  return out;
}

double j_invariance_defect(const HarmonicBasis& basis) {
  double worst = 0.0;
  for (const auto& chi : basis.elements) {
    const Cochain jchi = j_apply(chi, *basis.triple);
    const double n = norm(jchi, *basis.triple);
    if (n == 0.0) continue;
    const Cochain rest = jchi - harmonic_project(jchi, basis).projection;
    worst = std::max(worst, norm(rest, *basis.triple) / n);
  }
  return worst;
}

int laplacian0_kernel_dim(const CompatibleTriple& triple) {
  const Surface& s = *triple.surface();
  const int k = s.num_components();
  const SparseMatrix& lap = triple.laplacian0();
  double scale = 0.0;
  for (int i = 0; i < lap.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(lap, i); it; ++it) scale = std::max(scale, std::abs(it.value()));
  for (int c = 0; c < k; ++c) {
    Eigen::VectorXd ind = Eigen::VectorXd::Zero(s.num_vertices());
    for (int v = 0; v < s.num_vertices(); ++v)
      if (s.vertex_component()[v] == c) ind[v] = 1.0;
    if ((lap * ind).norm() > 1e-10 * scale * ind.norm())
      throw NumericalError("component indicator is not in the Laplacian kernel");
  }
  // Deflated solve: a generic rhs orthogonal to the constants must be solvable and
  // reproduce itself, otherwise the kernel is larger than the component count.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd g(s.num_vertices());
  for (auto& x : g) x = u(rng);
  g = remove_component_means(triple, g);
  const Eigen::VectorXd rhs = lap * g;
  const Eigen::VectorXd f = solve_poisson(triple, rhs);
  if ((lap * f - rhs).norm() > 1e-8 * rhs.norm()) throw NumericalError("deflated Laplacian solve failed");
  return k;
}

double KernelIdentityReport::max_residual() const {
  double m = 0.0;
  for (const auto& e : elements) m = std::max({m, e.d_residual, e.delta_residual, e.laplacian_residual});
  return m;
}

Cochain hodge_laplacian1(const Cochain& c, const CompatibleTriple& triple) {
  if (c.degree() != 1) throw InputError("Hodge Laplacian here acts on 1-cochains");
  return codifferential(d(c), triple) + d(codifferential(c, triple));
}

KernelIdentityReport kernel_identity_check(const HarmonicBasis& basis, std::uint64_t seed) {
  const CompatibleTriple& triple = *basis.triple;
  KernelIdentityReport report;
  for (const auto& chi : basis.elements) {
    const double n = norm(chi, triple);
    report.elements.push_back({norm(d(chi), triple) / n, norm(codifferential(chi, triple), triple) / n,
                               norm(hodge_laplacian1(chi, triple), triple) / n});
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd g(triple.surface()->num_vertices());
  for (auto& x : g) x = u(rng);
  const Cochain dg = d(Cochain(triple.surface(), 0, remove_component_means(triple, g)));
  report.exact_separation = norm(hodge_laplacian1(dg, triple), triple) / norm(dg, triple);
  return report;
}

double subspace_distance(const std::vector<Cochain>& a, const std::vector<Cochain>& b,
                         const CompatibleTriple& triple) {
  if (a.size() != b.size()) return 1.0;
  std::vector<Cochain> qa = a, qb = b;
  if (!orthonormalize(qa, triple, 1e-12) || !orthonormalize(qb, triple, 1e-12))
    throw NumericalError("subspace distance: dependent spanning set");
  if (qa.empty()) return 0.0;
  // Largest singular value of (I - P_b) restricted to span(a), from the Gram matrix of residuals.
  std::vector<Cochain> r;
  for (const auto& v : qa) {
    Cochain res = v;
    for (const auto& q : qb) res = res - inner(v, q, triple) * q;
    r.push_back(std::move(res));
  }
  Eigen::MatrixXd g(r.size(), r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) g(i, j) = inner(r[i], r[j], triple);
  const double top = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues().maxCoeff();
  return std::min(1.0, std::sqrt(std::max(0.0, top)));
}

}  // namespace hamflow
