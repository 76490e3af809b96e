#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hamflow/mesh/automorphism.hpp"
#include "hamflow/mesh/surface.hpp"

namespace hamflow {

/// Finite free covering p: total -> total / deck.
struct QuotientCover {
  SurfacePtr total;
  std::vector<SimplicialAutomorphism> deck;
  SurfacePtr quotient;
  std::vector<int> vertex_projection;
  std::vector<int> edge_projection;
  /// +1 where the image of a canonical total edge is the canonical quotient edge.
  std::vector<int> edge_projection_sign;
  std::vector<int> triangle_projection;
  /// One total triangle per orbit: the lowest index in each orbit.
  std::vector<int> fundamental_domain;
};

/// Builds the quotient complex. Throws InputError with "action not free" when a
/// non-identity element fixes a simplex, "not a group" when `deck` is not closed
/// under composition, and when the quotient is not a simplicial surface.
QuotientCover build_quotient(SurfacePtr total, std::vector<SimplicialAutomorphism> deck);

/// Vertex weights of a density on the quotient (empty means uniform).
struct IntegralPair {
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_difference() const;
};

/// Discrete form of  int_{M/G} f dm = int_F (f o p) dm  for a 0-cochain f on the quotient.
/// `density` (per quotient vertex) is optional.
IntegralPair quotient_integral_check(const QuotientCover& cover, const Eigen::VectorXd& f,
                                     const Eigen::VectorXd& density = {});

/// Product identity  int_{(M1 x M2)/G} f dq = m2(F) int_{M1} (f o p) dm1  for the deck group
/// acting on the second factor only. `f` holds f o p on M1 x M2 with rows indexed by M1
/// vertices and columns by total M2 vertices; it must not depend on the column.
IntegralPair product_integral_check(const Surface& m1, const QuotientCover& cover2, const Eigen::MatrixXd& f,
                                    double independence_tol = 1e-12);

}  // namespace hamflow
