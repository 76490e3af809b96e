#pragma once

#include <vector>

#include "hamflow/mesh/surface.hpp"

namespace hamflow {

/// Orientation-preserving simplicial automorphism of a surface, stored as the
/// vertex permutation together with the induced edge and triangle permutations.
/// `edge_sign(e)` is +1 when the image of the canonically oriented edge e is
/// canonically oriented.
class SimplicialAutomorphism {
 public:
  /// Induces the edge and triangle maps; throws InputError if `vertex_map` does
  /// not map triangles to triangles or reverses orientation.
  static SimplicialAutomorphism from_vertex_map(const Surface& s, std::vector<int> vertex_map);
  static SimplicialAutomorphism identity(const Surface& s);

  int image(int degree, int index) const;
  int sign(int degree, int index) const;
  const std::vector<int>& vertex_map() const { return vmap_; }
  const std::vector<int>& edge_map() const { return emap_; }
  const std::vector<int>& edge_signs() const { return esign_; }
  const std::vector<int>& triangle_map() const { return tmap_; }

  bool is_identity() const;
  /// True when every edge keeps its length to `rel_tol`.
  bool is_isometry(const Surface& s, double rel_tol = 1e-12) const;
  /// True when some vertex, edge or triangle is mapped to itself.
  bool fixes_a_simplex() const;

  /// (this o other)(x) = this(other(x)).
  SimplicialAutomorphism compose(const Surface& s, const SimplicialAutomorphism& other) const;

  bool operator==(const SimplicialAutomorphism& o) const { return vmap_ == o.vmap_; }

 private:
  std::vector<int> vmap_;
  std::vector<int> emap_;
  std::vector<int> esign_;
  std::vector<int> tmap_;
};

/// Closure of `generators` under composition (includes the identity).
std::vector<SimplicialAutomorphism> generate_group(const Surface& s,
                                                   const std::vector<SimplicialAutomorphism>& generators);

/// Grid translation (i, j) -> (i + di, j + dj) of a generated flat torus.
SimplicialAutomorphism torus_translation(const Surface& torus, int di, int dj);

/// Half turn (i, j) -> (-i, -j) of a generated flat torus; fixes vertex 0.
SimplicialAutomorphism torus_half_turn(const Surface& torus);

}  // namespace hamflow
