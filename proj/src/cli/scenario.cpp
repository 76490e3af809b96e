#include "hamflow/cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "hamflow/error.hpp"
#include "hamflow/mesh/generators.hpp"
#include "hamflow/mesh/io.hpp"

namespace hamflow::cli {

using nlohmann::json;

namespace {

/// Object view that records consumed keys so leftovers can be rejected.
class Strict {
 public:
  Strict(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) fail("expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) fail("missing key '" + key + "'");
    return j_.at(key);
  }

  template <class T>
  T get(const std::string& key) {
    const json& v = raw(key);
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      fail("key '" + key + "' has the wrong type");
    }
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    if (!has(key)) return fallback;
    return get<T>(key);
  }

  Vec3 vec3(const std::string& key, const Vec3& fallback) {
    if (!has(key)) return fallback;
    const auto v = get<std::vector<double>>(key);
    if (v.size() != 3) fail("key '" + key + "' needs 3 numbers");
    return {v[0], v[1], v[2]};
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) fail("unknown key '" + it.key() + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const { throw InputError("scenario " + where_ + ": " + msg); }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> used_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

MeshSpec parse_mesh(Strict o, const std::filesystem::path& base) {
  MeshSpec m;
  if (o.has("off")) {
    if (o.has("builtin")) o.fail("give either 'builtin' or 'off', not both");
    m.off = resolve(base, o.get<std::string>("off"));
    if (o.has("lengths")) m.lengths = resolve(base, o.get<std::string>("lengths"));
  } else {
    m.builtin = o.get<std::string>("builtin");
    if (m.builtin == "icosphere") {
      m.subdivisions = o.get<int>("subdivisions");
    } else if (m.builtin == "flat_torus" || m.builtin == "warped_flat_torus" || m.builtin == "revolution_torus") {
      m.n = o.get<int>("n");
      m.m = o.get<int>("m");
      if (m.builtin == "warped_flat_torus") m.amplitude = o.get<double>("amplitude");
      if (m.builtin == "revolution_torus") {
        m.major_radius = o.get<double>("major_radius", 2.0);
        m.minor_radius = o.get<double>("minor_radius", 1.0);
      }
    } else {
      o.fail("unknown builtin mesh '" + m.builtin + "'");
    }
  }
  o.finish();
  return m;
}

DensitySpec parse_density(Strict o) {
  DensitySpec d;
  d.kind = o.get<std::string>("kind");
  if (d.kind == "exp_trig") {
    d.amplitude = o.get<double>("amplitude");
    d.k1 = o.get<int>("k1", 1);
    d.k2 = o.get<int>("k2", 0);
    d.phase = o.get<double>("phase", 0.0);
  } else if (d.kind == "radial") {
    d.amplitude = o.get<double>("amplitude");
    d.center = o.vec3("center", Vec3::Zero());
  } else if (d.kind != "uniform") {
    o.fail("unknown density kind '" + d.kind + "'");
  }
  o.finish();
  return d;
}

GeneratorSpec parse_generator(Strict o, const std::filesystem::path& base) {
  GeneratorSpec g;
  g.label = o.get<std::string>("label", "");
  if (o.has("csv")) {
    if (o.has("builtin")) o.fail("give either 'builtin' or 'csv', not both");
    g.csv = resolve(base, o.get<std::string>("csv"));
    if (g.label.empty()) g.label = g.csv.filename().string();
  } else {
    const auto name = o.get<std::string>("builtin");
    if (name == "sphere_polar_rotation") {
      g.builtin = SphereRotation{};
    } else if (name == "sphere_rotation") {
      g.builtin = SphereRotation{o.vec3("axis", Vec3::UnitZ())};
    } else if (name == "torus_translation") {
      g.builtin = TorusTranslation{o.get<double>("a"), o.get<double>("b")};
    } else if (name == "torus_hamiltonian") {
      TorusPotential h;
      h.amplitude = o.get<double>("amplitude", 1.0);
      h.k1 = o.get<int>("k1", 1);
      h.k2 = o.get<int>("k2", 0);
      h.phase = o.get<double>("phase", 0.0);
      g.builtin = TorusHamiltonian{h};
    } else {
      o.fail("unknown builtin field '" + name + "'");
    }
    if (g.label.empty()) g.label = builtin_label(*g.builtin);
  }
  o.finish();
  return g;
}

void parse_tolerances(Strict o, DetectOptions& opt) {
  opt.tol_hamiltonian = o.get<double>("hamiltonian", opt.tol_hamiltonian);
  opt.tol_nonhamiltonian = o.get<double>("nonhamiltonian", opt.tol_nonhamiltonian);
  opt.tol_rank = o.get<double>("rank", opt.tol_rank);
  opt.tol_symplectic = o.get<double>("symplectic", opt.tol_symplectic);
  opt.fixed_point_tol = o.get<double>("fixed_point", opt.fixed_point_tol);
  opt.quadrature_order = o.get<int>("quadrature", opt.quadrature_order);
  o.finish();
}

DeckSpec parse_deck(Strict o) {
  DeckSpec d;
  d.kind = o.get<std::string>("kind");
  if (d.kind == "translation") {
    d.di = o.get<int>("di");
    d.dj = o.get<int>("dj");
  } else if (d.kind != "identity" && d.kind != "half_turn") {
    o.fail("unknown deck kind '" + d.kind + "'");
  }
  o.finish();
  return d;
}

QuotientSpec parse_quotient(Strict o) {
  QuotientSpec q;
  const json& deck = o.raw("deck");
  if (!deck.is_array()) o.fail("'deck' must be an array of generators");
  for (std::size_t i = 0; i < deck.size(); ++i) q.deck.push_back(parse_deck(Strict(deck[i], "quotient.deck[" + std::to_string(i) + "]")));
  if (o.has("product_factor")) {
    const auto nm = o.get<std::vector<int>>("product_factor");
    if (nm.size() != 2) o.fail("'product_factor' needs [n, m]");
    q.product_factor = std::make_pair(nm[0], nm[1]);
  }
  o.finish();
  return q;
}

}  // namespace

Scenario parse_scenario(const json& doc, const std::filesystem::path& base_dir) {
  Strict o(doc, "root");
  Scenario s;
  const auto schema = o.get<std::string>("schema");
  if (schema != kScenarioSchema) o.fail("unsupported schema '" + schema + "' (expected " + kScenarioSchema + ")");
  s.mesh = parse_mesh(Strict(o.raw("mesh"), "mesh"), base_dir);
  if (o.has("density")) s.density = parse_density(Strict(o.raw("density"), "density"));
  if (o.has("generators")) {
    const json& gens = o.raw("generators");
    if (!gens.is_array()) o.fail("'generators' must be an array");
    for (std::size_t i = 0; i < gens.size(); ++i)
      s.generators.push_back(parse_generator(Strict(gens[i], "generators[" + std::to_string(i) + "]"), base_dir));
  }
  if (o.has("tolerances")) parse_tolerances(Strict(o.raw("tolerances"), "tolerances"), s.options);
  if (o.has("contraction")) {
    const auto mode = o.get<std::string>("contraction");
    if (mode == "direct") s.options.mode = ContractionMode::Direct;
    else if (mode == "via_j") s.options.mode = ContractionMode::ViaJ;
    else o.fail("contraction must be 'direct' or 'via_j'");
  }
  if (o.has("quotient")) s.quotient = parse_quotient(Strict(o.raw("quotient"), "quotient"));
  if (o.has("output")) s.output = resolve(base_dir, o.get<std::string>("output"));
  s.seed = o.get<std::uint64_t>("seed", s.seed);
  o.finish();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("scenario " + path.string() + ": parse error: " + e.what());
  }
  Scenario s = parse_scenario(doc, path.parent_path());
  s.source = path;
  return s;
}

Surface build_mesh(const MeshSpec& spec) {
  if (!spec.off.empty()) return load_off(spec.off, spec.lengths);
  if (spec.builtin == "icosphere") {
    if (spec.subdivisions < 0 || spec.subdivisions > kMaxIcosphereSubdivisions)
      throw InputError("icosphere subdivisions must lie in [0, " + std::to_string(kMaxIcosphereSubdivisions) + "]");
    return gen_icosphere(spec.subdivisions);
  }
  if (spec.builtin == "flat_torus") return gen_flat_torus(spec.n, spec.m);
  if (spec.builtin == "warped_flat_torus") return gen_warped_flat_torus(spec.n, spec.m, spec.amplitude);
  if (spec.builtin == "revolution_torus")
    return gen_revolution_torus(spec.n, spec.m, spec.major_radius, spec.minor_radius);
  throw InputError("mesh needs a builtin kind or an off path");
}

MeasureDensity build_density(const DensitySpec& spec, const SurfacePtr& surface) {
  if (spec.kind == "uniform") return MeasureDensity::uniform(surface);
  if (!surface->has_ambient_frame()) throw InputError("density '" + spec.kind + "' needs vertex coordinates");
  const int nv = surface->num_vertices();
  Eigen::VectorXd u(nv);
  if (spec.kind == "exp_trig") {
    if (surface->geometry_kind() != GeometryKind::Chart) throw InputError("exp_trig density needs a chart surface");
    const double two_pi = 2.0 * std::numbers::pi;
    for (int v = 0; v < nv; ++v) {
      const Vec3& p = surface->points()[v];
      u[v] = spec.amplitude * std::sin(two_pi * (spec.k1 * p.x() + spec.k2 * p.y()) + spec.phase);
    }
  } else if (spec.kind == "radial") {
    if (surface->geometry_kind() != GeometryKind::Embedded) throw InputError("radial density needs an embedded surface");
    for (int v = 0; v < nv; ++v) u[v] = spec.amplitude * (surface->points()[v] - spec.center).squaredNorm();
  } else {
    throw InputError("unknown density kind '" + spec.kind + "'");
  }
  return MeasureDensity::from_potential(surface, u);
}

GeneratorSet build_generators(const std::vector<GeneratorSpec>& specs, const SurfacePtr& surface) {
  std::vector<TangentField> fields;
  std::vector<std::string> labels;
  for (const auto& g : specs) {
    fields.push_back(g.builtin ? builtin_field(*g.builtin, surface) : load_field_csv(surface, g.csv));
    if (!g.label.empty()) labels.push_back(g.label);
    else if (g.builtin) labels.push_back(builtin_label(*g.builtin));
    else labels.push_back(g.csv.filename().string());
  }
  return GeneratorSet(std::move(fields), std::move(labels));
}

std::vector<SimplicialAutomorphism> build_deck(const std::vector<DeckSpec>& specs, const Surface& torus) {
  std::vector<SimplicialAutomorphism> gens;
  for (const auto& d : specs) {
    if (d.kind == "identity") gens.push_back(SimplicialAutomorphism::identity(torus));
    else if (d.kind == "translation") gens.push_back(torus_translation(torus, d.di, d.dj));
    else if (d.kind == "half_turn") gens.push_back(torus_half_turn(torus));
    else throw InputError("unknown deck transformation '" + d.kind + "'");
  }
  if (gens.empty()) gens.push_back(SimplicialAutomorphism::identity(torus));
  return generate_group(torus, gens);
}

namespace {

json matrix_rows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json columns(const Eigen::MatrixXd& m) { return matrix_rows(m.transpose()); }

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

nlohmann::ordered_json report_json(const DetectionReport& r, const MomentumFiles& files, const std::string& timestamp) {
  nlohmann::ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["generated_at"] = timestamp;
  doc["mesh"] = {{"name", r.mesh.name},
                 {"vertices", r.mesh.vertices},
                 {"edges", r.mesh.edges},
                 {"triangles", r.mesh.triangles},
                 {"components", r.mesh.components},
                 {"genus", r.mesh.genus},
                 {"mesh_size", r.mesh.mesh_size},
                 {"density_condition", r.mesh.density_condition}};
  doc["tolerances"] = {{"hamiltonian", r.options.tol_hamiltonian},
                       {"nonhamiltonian", r.options.tol_nonhamiltonian},
                       {"rank", r.options.tol_rank},
                       {"symplectic", r.options.tol_symplectic},
                       {"fixed_point", r.options.fixed_point_tol},
                       {"quadrature", r.options.quadrature_order},
                       {"contraction", r.options.mode == ContractionMode::Direct ? "direct" : "via_j"}};
  doc["harmonic_dimension"] = r.harmonic_dimension;
  doc["j_invariance_defect"] = r.j_defect;
  nlohmann::ordered_json gens = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.generators.size(); ++i) {
    const auto& g = r.generators[i];
    nlohmann::ordered_json fp;
    fp["rel_tol"] = g.fixed_points.rel_tol;
    fp["count"] = g.fixed_points.vertices.size();
    fp["vertices"] = g.fixed_points.vertices;
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < g.fixed_points.margin.size(); ++c)
      comps.push_back({{"has_fixed_point", static_cast<bool>(g.fixed_points.has_fixed_point[c])},
                       {"margin", g.fixed_points.margin[c]}});
    fp["components"] = comps;
    fp["interior_warnings"] = g.fixed_points.interior_warnings;
    nlohmann::ordered_json e;
    e["label"] = g.label;
    e["rho"] = g.rho;
    e["contraction_norm"] = g.contraction_norm;
    e["closedness_defect"] = g.closedness;
    e["coefficients"] = vector_json(g.coefficients);
    e["fixed_points"] = fp;
    e["verdict"] = to_string(g.verdict);
    e["momentum_file"] = i < files.csv.size() && !files.csv[i].empty() ? json(files.csv[i]) : json(nullptr);
    gens.push_back(e);
  }
  doc["generators"] = gens;
  nlohmann::ordered_json mom;
  mom["csv"] = json::array();
  for (const auto& f : files.csv)
    if (!f.empty()) mom["csv"].push_back(f);
  mom["vtk"] = files.vtk.empty() ? json(nullptr) : json(files.vtk);
  doc["momentum"] = mom;
  doc["ginzburg"] = {{"O", matrix_rows(r.ginzburg.obstruction_matrix)},
                     {"singular_values", vector_json(r.ginzburg.singular_values)},
                     {"kernel_basis", columns(r.ginzburg.kernel_basis)},
                     {"complement_basis", columns(r.ginzburg.complement_basis)}};
  return doc;
}

}  // namespace hamflow::cli
