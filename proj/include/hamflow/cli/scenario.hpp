#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamflow/action/action.hpp"
#include "hamflow/detect/detect.hpp"
#include "hamflow/forms/density.hpp"

namespace hamflow::cli {

inline constexpr const char* kScenarioSchema = "hamflow.scenario/1";
inline constexpr const char* kReportSchema = "hamflow.report/1";

struct MeshSpec {
  /// icosphere | flat_torus | warped_flat_torus | revolution_torus, or empty when `off` is set.
  std::string builtin;
  int subdivisions = 0;
  int n = 0;
  int m = 0;
  double amplitude = 0.0;
  double major_radius = 2.0;
  double minor_radius = 1.0;
  std::filesystem::path off;
  std::filesystem::path lengths;
};

struct DensitySpec {
  /// uniform | exp_trig (chart: U = a sin(2 pi (k1 x + k2 y) + phase)) | radial (U = a |x - c|^2).
  std::string kind = "uniform";
  double amplitude = 0.0;
  int k1 = 1;
  int k2 = 0;
  double phase = 0.0;
  Vec3 center = Vec3::Zero();
};

struct GeneratorSpec {
  std::optional<BuiltinField> builtin;
  std::filesystem::path csv;
  std::string label;
};

struct DeckSpec {
  /// identity | translation | half_turn
  std::string kind = "identity";
  int di = 0;
  int dj = 0;
};

struct QuotientSpec {
  std::vector<DeckSpec> deck;
  /// Grid of the first factor M1 for the product identity; absent skips that check.
  std::optional<std::pair<int, int>> product_factor;
};

struct Scenario {
  std::filesystem::path source;
  MeshSpec mesh;
  DensitySpec density;
  std::vector<GeneratorSpec> generators;
  DetectOptions options;
  std::optional<QuotientSpec> quotient;
  std::filesystem::path output;
  std::uint64_t seed = 1;
};

/// Strict parse: unknown keys, wrong types and a wrong schema tag are InputErrors.
/// Relative paths resolve against `base_dir`.
Scenario parse_scenario(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

Surface build_mesh(const MeshSpec& spec);
MeasureDensity build_density(const DensitySpec& spec, const SurfacePtr& surface);
GeneratorSet build_generators(const std::vector<GeneratorSpec>& specs, const SurfacePtr& surface);
std::vector<SimplicialAutomorphism> build_deck(const std::vector<DeckSpec>& specs, const Surface& torus);

struct MomentumFiles {
  std::vector<std::string> csv;  // per generator, empty when not Hamiltonian
  std::string vtk;
};

/// Report document; the "generated_at" member is the only non-deterministic line.
nlohmann::ordered_json report_json(const DetectionReport& report, const MomentumFiles& files,
                                   const std::string& timestamp);

}  // namespace hamflow::cli
