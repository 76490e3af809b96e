#include "hamflow/mesh/automorphism.hpp"

#include <algorithm>
#include <map>

#include "hamflow/error.hpp"

namespace hamflow {

SimplicialAutomorphism SimplicialAutomorphism::from_vertex_map(const Surface& s, std::vector<int> vertex_map) {
  const int nv = s.num_vertices();
  if (static_cast<int>(vertex_map.size()) != nv) throw InputError("vertex map has wrong size");
  std::vector<char> seen(nv, 0);
  for (int v : vertex_map) {
    if (v < 0 || v >= nv || seen[v]) throw InputError("vertex map is not a permutation");
    seen[v] = 1;
  }
  SimplicialAutomorphism phi;
  phi.vmap_ = std::move(vertex_map);
  phi.emap_.resize(s.num_edges());
  phi.esign_.resize(s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e) {
    const int a = phi.vmap_[s.edges()[e][0]];
    const int b = phi.vmap_[s.edges()[e][1]];
    const int img = s.edge_index(a, b);
    if (img < 0) throw InputError("vertex map is not simplicial: an edge has no image");
    phi.emap_[e] = img;
    phi.esign_[e] = a < b ? 1 : -1;
  }
  phi.tmap_.resize(s.num_triangles());
  for (int t = 0; t < s.num_triangles(); ++t) {
    const auto& tri = s.triangles()[t];
    const Triangle img{phi.vmap_[tri[0]], phi.vmap_[tri[1]], phi.vmap_[tri[2]]};
    const int e = s.edge_index(img[0], img[1]);
    int found = -1;
    int orientation = 0;
    for (int u : s.edge_triangles(e)) {
      const auto& cand = s.triangles()[u];
      for (int r = 0; r < 3; ++r) {
        if (cand[r] == img[0] && cand[(r + 1) % 3] == img[1] && cand[(r + 2) % 3] == img[2]) {
          found = u;
          orientation = 1;
        } else if (cand[r] == img[0] && cand[(r + 2) % 3] == img[1] && cand[(r + 1) % 3] == img[2]) {
          found = u;
          orientation = -1;
        }
      }
    }
    if (found < 0) throw InputError("vertex map is not simplicial: a triangle has no image");
    if (orientation < 0) throw InputError("vertex map reverses orientation");
    phi.tmap_[t] = found;
  }
  return phi;
}

SimplicialAutomorphism SimplicialAutomorphism::identity(const Surface& s) {
  std::vector<int> v(s.num_vertices());
  for (int i = 0; i < s.num_vertices(); ++i) v[i] = i;
  return from_vertex_map(s, std::move(v));
}

int SimplicialAutomorphism::image(int degree, int index) const {
  switch (degree) {
    case 0: return vmap_[index];
    case 1: return emap_[index];
    case 2: return tmap_[index];
    default: throw InputError("simplex degree must be 0, 1 or 2");
  }
}

int SimplicialAutomorphism::sign(int degree, int index) const { return degree == 1 ? esign_[index] : 1; }

bool SimplicialAutomorphism::is_identity() const {
  for (int i = 0; i < static_cast<int>(vmap_.size()); ++i)
    if (vmap_[i] != i) return false;
  return true;
}

bool SimplicialAutomorphism::is_isometry(const Surface& s, double rel_tol) const {
  for (int e = 0; e < s.num_edges(); ++e) {
    const double a = s.edge_length(e);
    if (std::abs(s.edge_length(emap_[e]) - a) > rel_tol * a) return false;
  }
  return true;
}

bool SimplicialAutomorphism::fixes_a_simplex() const {
  for (int i = 0; i < static_cast<int>(vmap_.size()); ++i)
    if (vmap_[i] == i) return true;
  for (int i = 0; i < static_cast<int>(emap_.size()); ++i)
    if (emap_[i] == i) return true;
  for (int i = 0; i < static_cast<int>(tmap_.size()); ++i)
    if (tmap_[i] == i) return true;
  return false;
}

SimplicialAutomorphism SimplicialAutomorphism::compose(const Surface& s,
                                                       const SimplicialAutomorphism& other) const {
  std::vector<int> v(vmap_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = vmap_[other.vmap_[i]];
  return from_vertex_map(s, std::move(v));
}

std::vector<SimplicialAutomorphism> generate_group(const Surface& s,
                                                   const std::vector<SimplicialAutomorphism>& generators) {
  std::vector<SimplicialAutomorphism> group{SimplicialAutomorphism::identity(s)};
  std::map<std::vector<int>, int> index{{group[0].vertex_map(), 0}};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const auto& g : generators) {
      SimplicialAutomorphism h = g.compose(s, group[i]);
      if (index.emplace(h.vertex_map(), static_cast<int>(group.size())).second) group.push_back(std::move(h));
    }
  }
  return group;
}

namespace {

const TorusGrid& require_torus(const Surface& torus) {
  if (!torus.torus_grid()) throw InputError("surface is not a generated flat torus");
  return *torus.torus_grid();
}

}  // namespace

SimplicialAutomorphism torus_translation(const Surface& torus, int di, int dj) {
  const auto& g = require_torus(torus);
  std::vector<int> v(static_cast<std::size_t>(g.n) * g.m);
  for (int j = 0; j < g.m; ++j)
    for (int i = 0; i < g.n; ++i) {
      const int ii = (((i + di) % g.n) + g.n) % g.n;
      const int jj = (((j + dj) % g.m) + g.m) % g.m;
      v[i + g.n * j] = ii + g.n * jj;
    }
  return SimplicialAutomorphism::from_vertex_map(torus, std::move(v));
}

SimplicialAutomorphism torus_half_turn(const Surface& torus) {
  const auto& g = require_torus(torus);
  std::vector<int> v(static_cast<std::size_t>(g.n) * g.m);
  for (int j = 0; j < g.m; ++j)
    for (int i = 0; i < g.n; ++i) v[i + g.n * j] = ((g.n - i) % g.n) + g.n * ((g.m - j) % g.m);
  return SimplicialAutomorphism::from_vertex_map(torus, std::move(v));
}

}  // namespace hamflow
