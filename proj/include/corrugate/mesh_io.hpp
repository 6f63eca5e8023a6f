#pragma once

// Triangle-mesh export of sampled surfaces. The grid is periodic in x, so
// the seam is welded: column n_x reuses column 0's vertices, giving
// n_x·(n_y+1) vertices and 2·n_x·n_y triangles. OBJ (1-based indices) and
// ASCII PLY are supported; numbers print as shortest round-trip decimals,
// so identical inputs yield byte-identical files.

#include "corrugate/cone.hpp"

#include <array>
#include <string>
#include <vector>

namespace corrugate {

enum class MeshFormat { Obj, Ply };

struct MeshOutput {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;  // 0-based
  MeshFormat format = MeshFormat::Obj;
  int n_x = 0;
  int n_y = 0;
};

MeshOutput build_mesh(const MapSample& sample, MeshFormat format = MeshFormat::Obj);

// Throws IoError when the file cannot be opened or written.
void write_obj(const std::string& path, const MeshOutput& mesh);
void write_ply(const std::string& path, const MeshOutput& mesh);
void write_mesh(const std::string& path, const MeshOutput& mesh);  // by mesh.format

// Shortest decimal that parses back to exactly v.
std::string format_double(double v);

// One row per report: N, c0_distance, max_e11, max_e12, max_e22.
void write_sweep_csv(const std::string& path, const std::vector<DefectReport>& rows);

}  // namespace corrugate
