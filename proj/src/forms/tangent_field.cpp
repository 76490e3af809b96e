#include "hamflow/forms/tangent_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hamflow/error.hpp"

namespace hamflow {

TangentField::TangentField(SurfacePtr surface, std::vector<Vec3> values, VectorFunction analytic,
                           double tangency_tol)
    : surface_(std::move(surface)), values_(std::move(values)), analytic_(std::move(analytic)) {
  if (!surface_) throw InputError("tangent field needs a surface");
  if (!surface_->has_ambient_frame())
    throw InputError("tangent fields need an embedded or chart surface");
  if (static_cast<int>(values_.size()) != surface_->num_vertices())
    throw InputError("tangent field needs one vector per vertex");
  for (const auto& v : values_)
    if (!v.allFinite()) throw InputError("tangent field has non-finite entries");
  const double defect = tangency_defect();
  if (defect > tangency_tol) {
    std::ostringstream os;
    os << "tangency violated: |xi . n| / max|xi| = " << defect << " exceeds " << tangency_tol;
    throw InputError(os.str());
  }
}

TangentField TangentField::from_function(SurfacePtr surface, VectorFunction analytic, double tangency_tol) {
  std::vector<Vec3> values;
  values.reserve(surface->num_vertices());
  for (const auto& p : surface->points()) values.push_back(analytic(p));
  return {std::move(surface), std::move(values), std::move(analytic), tangency_tol};
}

TangentField TangentField::zero(SurfacePtr surface) {
  const int n = surface->num_vertices();
  return {std::move(surface), std::vector<Vec3>(n, Vec3::Zero()),
          [](const Vec3&) { return Vec3(Vec3::Zero()); }};
}

double TangentField::max_norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, v.norm());
  return m;
}

double TangentField::tangency_defect() const {
  const double scale = max_norm();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  const auto& normals = surface_->vertex_normals();
  for (std::size_t i = 0; i < values_.size(); ++i) worst = std::max(worst, std::abs(values_[i].dot(normals[i])));
  return worst / scale;
}

TangentField linear_combination(std::span<const double> coefficients, std::span<const TangentField> fields) {
  if (coefficients.size() != fields.size() || fields.empty())
    throw InputError("linear combination needs matching, non-empty inputs");
  const SurfacePtr& s = fields[0].surface();
  std::vector<Vec3> values(s->num_vertices(), Vec3::Zero());
  bool analytic = true;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].surface() != s) throw InputError("fields live on different surfaces");
    for (int v = 0; v < s->num_vertices(); ++v) values[v] += coefficients[i] * fields[i][v];
    analytic = analytic && fields[i].has_analytic();
  }
  VectorFunction fn;
  if (analytic) {
    std::vector<double> c(coefficients.begin(), coefficients.end());
    std::vector<VectorFunction> fs;
    for (const auto& f : fields) fs.push_back(f.analytic());
    fn = [c, fs](const Vec3& x) {
      Vec3 out = Vec3::Zero();
      for (std::size_t i = 0; i < c.size(); ++i) out += c[i] * fs[i](x);
      return out;
    };
  }
  // Inputs were already validated; a combination of tangent vectors is tangent.
  return {s, std::move(values), std::move(fn), 1.0};
}

}  // namespace hamflow
