#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hamflow/cli/cli.hpp"
#include "hamflow/cli/scenario.hpp"
#include "hamflow/error.hpp"
#include "hamflow/mesh/generators.hpp"
#include "hamflow/mesh/io.hpp"
#include "hamflow/mesh/quotient.hpp"

namespace hamflow::cli {

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::optional<double> tol_h;
  std::optional<double> tol_n;
  std::optional<int> quadrature;
  std::optional<std::uint64_t> seed;
};

Scenario scenario_from(const Overrides& o) {
  Scenario s = load_scenario(o.config);
  if (!o.out.empty()) s.output = o.out;
  if (o.tol_h) s.options.tol_hamiltonian = *o.tol_h;
  if (o.tol_n) s.options.tol_nonhamiltonian = *o.tol_n;
  if (o.quadrature) s.options.quadrature_order = *o.quadrature;
  if (o.seed) s.seed = *o.seed;
  return s;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void print_mesh(const Surface& s) {
  fmt::print("mesh {}: V = {} E = {} F = {} genus = {} components = {}\n", s.name(), s.num_vertices(), s.num_edges(),
             s.num_triangles(), s.genus(), s.num_components());
}

struct Pipeline {
  SurfacePtr surface;
  TriplePtr triple;
  HarmonicBasis basis;
};

Pipeline build_pipeline(const Scenario& sc) {
  Pipeline p;
  p.surface = share(build_mesh(sc.mesh));
  p.triple = CompatibleTriple::make(build_density(sc.density, p.surface));
  p.basis = harmonic_basis(p.triple);
  return p;
}

int cmd_gen(std::optional<int> ico, const std::vector<int>& flat, const std::vector<int>& rev, const std::string& out) {
  const int chosen = (ico ? 1 : 0) + (flat.empty() ? 0 : 1) + (rev.empty() ? 0 : 1);
  if (chosen != 1) throw InputError("gen needs exactly one of --icosphere, --flat-torus, --revolution-torus");
  Surface s = [&] {
    if (ico) {
      if (*ico < 0 || *ico > kMaxIcosphereSubdivisions)
        throw InputError(fmt::format("icosphere subdivisions must lie in [0, {}], got {}", kMaxIcosphereSubdivisions, *ico));
      return gen_icosphere(*ico);
    }
    if (!flat.empty()) return gen_flat_torus(flat[0], flat[1]);
    return gen_revolution_torus(rev[0], rev[1]);
  }();
  print_mesh(s);
  if (!out.empty()) {
    const std::filesystem::path path(out);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    write_off(s, path);
    fmt::print("wrote {}\n", path.string());
    if (s.geometry_kind() == GeometryKind::Chart) {
      std::filesystem::path lengths = path;
      lengths.replace_extension(".lengths.csv");
      write_edge_lengths(s, lengths);
      fmt::print("wrote {}\n", lengths.string());
    }
  }
  return kExitOk;
}

int cmd_analyze(const Overrides& o) {
  const Scenario sc = scenario_from(o);
  if (sc.generators.empty()) throw InputError("scenario has no generators");
  const Pipeline p = build_pipeline(sc);
  print_mesh(*p.surface);
  const GeneratorSet gens = build_generators(sc.generators, p.surface);
  const DetectionReport report = detect_hamiltonian(gens, p.basis, sc.options);

  fmt::print("harmonic dimension = {}, J-invariance defect = {:.3e}\n", report.harmonic_dimension, report.j_defect);
  fmt::print("{:<36} {:>12} {:>10} {:>8}  {}\n", "generator", "rho", "closed", "fixed", "verdict");
  for (const auto& g : report.generators)
    fmt::print("{:<36} {:>12.4e} {:>10.2e} {:>8}  {}\n", g.label, g.rho, g.closedness, g.fixed_points.vertices.size(),
               to_string(g.verdict));
  fmt::print("ginzburg: kernel dimension = {}, complement dimension = {}\n", report.ginzburg.kernel_basis.cols(),
             report.ginzburg.complement_basis.cols());

  if (!sc.output.empty()) {
    std::filesystem::create_directories(sc.output);
    MomentumFiles files;
    VtkFields vtk;
    for (int i = 0; i < gens.size(); ++i) {
      const auto& g = report.generators[i];
      vtk.point_vectors.emplace_back(fmt::format("xi_{}", i), gens.fields[i].values());
      if (!g.momentum) {
        files.csv.emplace_back();
        continue;
      }
      const std::string name = fmt::format("momentum_{}.csv", i);
      write_cochain_csv(*g.momentum, sc.output / name);
      files.csv.push_back(name);
      const auto& v = g.momentum->values();
      vtk.point_scalars.emplace_back(fmt::format("mu_{}", i), std::vector<double>(v.data(), v.data() + v.size()));
    }
    files.vtk = "momentum.vtk";
    write_vtk(*p.surface, sc.output / files.vtk, vtk);
    std::ofstream out(sc.output / "report.json");
    if (!out) throw InputError("cannot write report in " + sc.output.string());
    out << report_json(report, files, utc_timestamp()).dump(2) << '\n';
    fmt::print("wrote {}\n", (sc.output / "report.json").string());
  }
  if (report.any_indeterminate()) {
    fmt::print("indeterminate verdict present\n");
    return kExitIndeterminate;
  }
  return kExitOk;
}

int cmd_hodge(const Overrides& o) {
  const Scenario sc = scenario_from(o);
  const Pipeline p = build_pipeline(sc);
  print_mesh(*p.surface);
  fmt::print("dim = {}\n", p.basis.dimension());
  const KernelIdentityReport k = kernel_identity_check(p.basis, sc.seed);
  fmt::print("{:>4} {:>12} {:>12} {:>12}\n", "i", "|d chi|", "|delta chi|", "|Delta chi|");
  for (std::size_t i = 0; i < k.elements.size(); ++i)
    fmt::print("{:>4} {:>12.3e} {:>12.3e} {:>12.3e}\n", i, k.elements[i].d_residual, k.elements[i].delta_residual,
               k.elements[i].laplacian_residual);
  fmt::print("exact-form separation = {:.3e}\n", k.exact_separation);
  fmt::print("J-invariance defect = {:.3e}\n", j_invariance_defect(p.basis));
  if (!sc.output.empty()) {
    std::filesystem::create_directories(sc.output);
    const auto path = sc.output / "harmonic_basis.csv";
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << "edge,v0,v1";
    for (int i = 0; i < p.basis.dimension(); ++i) out << ",chi_" << i;
    out << '\n' << std::setprecision(17);
    for (int e = 0; e < p.surface->num_edges(); ++e) {
      out << e << ',' << p.surface->edges()[e][0] << ',' << p.surface->edges()[e][1];
      for (const auto& chi : p.basis.elements) out << ',' << chi[e];
      out << '\n';
    }
    fmt::print("wrote {}\n", path.string());
  }
  return kExitOk;
}

Eigen::VectorXd random_vector(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

int cmd_quotient_check(const Overrides& o) {
  const Scenario sc = scenario_from(o);
  if (!sc.quotient) throw InputError("scenario has no 'quotient' block");
  const SurfacePtr total = share(build_mesh(sc.mesh));
  print_mesh(*total);
  const QuotientCover cover = build_quotient(total, build_deck(sc.quotient->deck, *total));
  fmt::print("deck order = {}, chi(total) = {}, |deck| * chi(quotient) = {}\n", cover.deck.size(),
             total->euler_characteristic(), static_cast<int>(cover.deck.size()) * cover.quotient->euler_characteristic());
  std::mt19937_64 rng(sc.seed);
  const Eigen::VectorXd f = random_vector(rng, cover.quotient->num_vertices());
  Eigen::VectorXd density;
  if (sc.density.kind != "uniform") density = build_density(sc.density, cover.quotient).vertex_weights();
  const IntegralPair q = quotient_integral_check(cover, f, density);
  fmt::print("quotient integral: lhs = {:.17g} rhs = {:.17g} relative difference = {:.3e}\n", q.lhs, q.rhs,
             q.relative_difference());
  double worst = q.relative_difference();
  if (sc.quotient->product_factor) {
    const Surface m1 = gen_flat_torus(sc.quotient->product_factor->first, sc.quotient->product_factor->second);
    const Eigen::VectorXd g = random_vector(rng, m1.num_vertices());
    const Eigen::MatrixXd fm = g.replicate(1, total->num_vertices());
    const IntegralPair pr = product_integral_check(m1, cover, fm);
    fmt::print("product integral: lhs = {:.17g} rhs = {:.17g} relative difference = {:.3e}\n", pr.lhs, pr.rhs,
               pr.relative_difference());
    worst = std::max(worst, pr.relative_difference());
  }
  fmt::print("max relative difference = {:.3e}\n", worst);
  return kExitOk;
}

void add_scenario_flags(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config,config", o.config, "scenario file (JSON)")->required();
  cmd.add_option("--out", o.out, "output directory");
  cmd.add_option("--tol-hamiltonian", o.tol_h, "rho threshold for a Hamiltonian verdict");
  cmd.add_option("--tol-nonhamiltonian", o.tol_n, "rho threshold for a non-Hamiltonian verdict");
  cmd.add_option("--quadrature", o.quadrature, "quadrature order (1-5)");
  cmd.add_option("--seed", o.seed, "seed for randomized fixtures");
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Hamiltonian detection for circle actions on triangulated surfaces"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a builtin mesh");
  std::optional<int> ico;
  std::vector<int> flat, rev;
  std::string gen_out;
  gen->add_option("--icosphere", ico, "icosphere with N subdivisions");
  gen->add_option("--flat-torus", flat, "flat torus on an n x m grid")->expected(2);
  gen->add_option("--revolution-torus", rev, "torus of revolution on an n x m grid")->expected(2);
  gen->add_option("-o,--output", gen_out, "OFF output path");

  Overrides analyze_o, hodge_o, quotient_o;
  auto* analyze = app.add_subcommand("analyze", "run the obstruction test and momentum reconstruction");
  add_scenario_flags(*analyze, analyze_o);
  auto* hodge = app.add_subcommand("hodge", "harmonic basis and kernel residuals");
  add_scenario_flags(*hodge, hodge_o);
  auto* quotient = app.add_subcommand("quotient-check", "integral identities on a quotient cover");
  add_scenario_flags(*quotient, quotient_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*gen) return cmd_gen(ico, flat, rev, gen_out);
    if (*analyze) return cmd_analyze(analyze_o);
    if (*hodge) return cmd_hodge(hodge_o);
    if (*quotient) return cmd_quotient_check(quotient_o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace hamflow::cli
