#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hamflow/mesh/surface.hpp"

namespace hamflow {

/// Reads an ASCII OFF file. Polygonal faces are fan-triangulated, triangle
/// orientations are made consistent by flips where possible. When `lengths_path`
/// is non-empty, the edge-length sidecar defines an intrinsic metric instead of
/// the vertex positions.
Surface load_off(const std::filesystem::path& path, const std::filesystem::path& lengths_path = {});

void write_off(const Surface& s, const std::filesystem::path& path);

/// Edge-length sidecar: one "v0,v1,length" line per canonical edge.
void write_edge_lengths(const Surface& s, const std::filesystem::path& path);

struct VtkFields {
  std::vector<std::pair<std::string, std::vector<double>>> point_scalars;
  std::vector<std::pair<std::string, std::vector<Vec3>>> point_vectors;
  std::vector<std::pair<std::string, std::vector<double>>> cell_scalars;
};

/// Legacy ASCII VTK polydata with optional point and cell attributes.
void write_vtk(const Surface& s, const std::filesystem::path& path, const VtkFields& fields = {});

}  // namespace hamflow
