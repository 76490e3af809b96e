#pragma once

#include <filesystem>
#include <functional>

#include "hamflow/forms/cochain.hpp"
#include "hamflow/forms/quadrature.hpp"
#include "hamflow/forms/tangent_field.hpp"
#include "hamflow/forms/triple.hpp"
#include "hamflow/mesh/automorphism.hpp"

namespace hamflow {

/// Smooth form on the ambient (or chart) space, restricted to the mesh by integration.
///  - degree 1: `field(x)` is the covector a(x) with alpha(v) = a(x) . v
///  - degree 2: `field(x)` is the flux vector B(x) with beta(u, v) = B(x) . (u x v)
struct AnalyticForm {
  int degree = 1;
  VectorFunction field;
};

/// Exterior derivative, exact integer incidence: degree k -> k + 1 for k in {0, 1}.
Cochain d(const Cochain& c);

/// Integrates an analytic 1-form over edges or a 2-form over triangles.
Cochain de_rham(const AnalyticForm& form, const SurfacePtr& surface, int quadrature_order = kDefaultQuadratureOrder);

/// a^T M_k b, evaluated symmetrically so that inner(a, b) == inner(b, a) bitwise.
double inner(const Cochain& a, const Cochain& b, const CompatibleTriple& triple);
double norm(const Cochain& c, const CompatibleTriple& triple);

/// Weighted adjoint of d: for c of degree k + 1 returns M_k^{-1} d_k^T M_{k+1} c.
Cochain codifferential(const Cochain& c, const CompatibleTriple& triple);

/// xi^flat: edge value = mean endpoint vector dotted with the edge vector.
Cochain flat(const TangentField& xi, const CompatibleTriple& triple);

/// Almost complex structure on 1-cochains.
Cochain j_apply(const Cochain& c, const CompatibleTriple& triple);

enum class ContractionMode {
  /// De Rham map of omega(xi, .) in each triangle plane; quadrature of the
  /// analytic field when available, otherwise the per-triangle mean of the samples.
  Direct,
  /// -J(xi^flat).
  ViaJ,
};

/// i_xi omega as a 1-cochain.
Cochain contract_omega(const TangentField& xi, const CompatibleTriple& triple,
                       ContractionMode mode = ContractionMode::Direct,
                       int quadrature_order = kDefaultQuadratureOrder);

/// (phi^* c)(sigma) = sign(phi, sigma) c(phi(sigma)).
Cochain pullback(const Cochain& c, const SimplicialAutomorphism& phi);

/// "index,value" rows.
void write_cochain_csv(const Cochain& c, const std::filesystem::path& path);

}  // namespace hamflow
