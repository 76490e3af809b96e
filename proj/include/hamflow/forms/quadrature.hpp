#pragma once

#include <array>
#include <vector>

namespace hamflow {

struct SegmentRule {
  std::vector<double> points;  // in [0, 1]
  std::vector<double> weights;  // sum to 1
};

struct TriangleRule {
  std::vector<std::array<double, 3>> points;  // barycentric
  std::vector<double> weights;  // sum to 1
};

inline constexpr int kDefaultQuadratureOrder = 3;

/// Gauss-Legendre rule with `order` points (exact for degree 2 * order - 1), order in 1..5.
const SegmentRule& segment_rule(int order);

/// Symmetric Dunavant-type rule exact for polynomials of degree `order`, order in 1..5.
const TriangleRule& triangle_rule(int order);

}  // namespace hamflow
