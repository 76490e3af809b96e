#include "hamflow/forms/cochain.hpp"

#include <string>

#include "hamflow/error.hpp"

namespace hamflow {

Cochain::Cochain(SurfacePtr surface, int degree)
    : Cochain(surface, degree, Eigen::VectorXd::Zero(surface ? surface->num_simplices(degree) : 0)) {}

Cochain::Cochain(SurfacePtr surface, int degree, Eigen::VectorXd values)
    : surface_(std::move(surface)), degree_(degree), values_(std::move(values)) {
  if (!surface_) throw InputError("cochain needs a surface");
  if (degree_ < 0 || degree_ > 2) throw InputError("cochain degree must be 0, 1 or 2");
  if (values_.size() != surface_->num_simplices(degree_))
    throw InputError("cochain of degree " + std::to_string(degree_) + " needs " +
                     std::to_string(surface_->num_simplices(degree_)) + " values, got " +
                     std::to_string(values_.size()));
}

bool Cochain::compatible(const Cochain& other) const {
  return degree_ == other.degree_ && surface_ == other.surface_;
}

namespace {
void require_compatible(const Cochain& a, const Cochain& b) {
  if (!a.compatible(b)) throw InputError("cochain degree/surface mismatch");
}
}  // namespace

Cochain Cochain::operator+(const Cochain& o) const {
  require_compatible(*this, o);
  return {surface_, degree_, values_ + o.values_};
}

Cochain Cochain::operator-(const Cochain& o) const {
  require_compatible(*this, o);
  return {surface_, degree_, values_ - o.values_};
}

Cochain Cochain::operator-() const { return {surface_, degree_, -values_}; }

Cochain Cochain::operator*(double a) const { return {surface_, degree_, a * values_}; }

}  // namespace hamflow
