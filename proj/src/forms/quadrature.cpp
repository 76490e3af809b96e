#include "hamflow/forms/quadrature.hpp"

#include <cmath>

#include "hamflow/error.hpp"

namespace hamflow {

namespace {

void check_order(int order) {
  if (order < 1 || order > 5) throw InputError("quadrature order must lie in 1..5");
}

SegmentRule gauss(const std::vector<double>& x, const std::vector<double>& w) {
  // Map the [-1, 1] rule to [0, 1].
  SegmentRule r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.points.push_back(0.5 * (x[i] + 1.0));
    r.weights.push_back(0.5 * w[i]);
  }
  return r;
}

void add_orbit3(TriangleRule& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  r.points.push_back({b, a, a});
  r.points.push_back({a, b, a});
  r.points.push_back({a, a, b});
  for (int i = 0; i < 3; ++i) r.weights.push_back(w);
}

}  // namespace

const SegmentRule& segment_rule(int order) {
  check_order(order);
  static const std::array<SegmentRule, 5> rules = [] {
    const double s35 = std::sqrt(3.0 / 5.0);
    const double a4 = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double b4 = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double wa4 = (18.0 + std::sqrt(30.0)) / 36.0;
    const double wb4 = (18.0 - std::sqrt(30.0)) / 36.0;
    const double a5 = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double b5 = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double wa5 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
    const double wb5 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    return std::array<SegmentRule, 5>{
        gauss({0.0}, {2.0}),
        gauss({-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)}, {1.0, 1.0}),
        gauss({-s35, 0.0, s35}, {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}),
        gauss({-b4, -a4, a4, b4}, {wb4, wa4, wa4, wb4}),
        gauss({-b5, -a5, 0.0, a5, b5}, {wb5, wa5, 128.0 / 225.0, wa5, wb5}),
    };
  }();
  return rules[order - 1];
}

const TriangleRule& triangle_rule(int order) {
  check_order(order);
  static const std::array<TriangleRule, 5> rules = [] {
    TriangleRule centroid;
    centroid.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    centroid.weights.push_back(1.0);

    TriangleRule deg2;
    add_orbit3(deg2, 1.0 / 6.0, 1.0 / 3.0);

    // Six-point rule, degree 4 (also used for degree 3: keeps weights positive).
    TriangleRule deg4;
    add_orbit3(deg4, 0.445948490915965, 0.223381589678011);
    add_orbit3(deg4, 0.091576213509771, 0.109951743655322);

    TriangleRule deg5;
    deg5.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    deg5.weights.push_back(0.225);
    add_orbit3(deg5, (6.0 + std::sqrt(15.0)) / 21.0, (155.0 + std::sqrt(15.0)) / 1200.0);
    add_orbit3(deg5, (6.0 - std::sqrt(15.0)) / 21.0, (155.0 - std::sqrt(15.0)) / 1200.0);
    double total = 0.0;
    for (double w : deg4.weights) total += w;
    for (double& w : deg4.weights) w /= total;
    return std::array<TriangleRule, 5>{centroid, deg2, deg4, deg4, deg5};
  }();
  return rules[order - 1];
}

}  // namespace hamflow
