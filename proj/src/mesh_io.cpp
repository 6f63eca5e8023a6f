#include "corrugate/mesh_io.hpp"

#include <charconv>
#include <fstream>

namespace corrugate {
namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: LF line endings everywhere
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

void append_vertex(std::string& buf, const Vec3& v, const char* prefix) {
  buf += prefix;
  for (int c = 0; c < 3; ++c) {
    if (c > 0 || *prefix) buf += ' ';
    buf += format_double(v[c]);
  }
  buf += '\n';
}

}  // namespace

std::string format_double(double v) {
  char tmp[64];
  const auto res = std::to_chars(tmp, tmp + sizeof(tmp), v);
  return std::string(tmp, res.ptr);
}

MeshOutput build_mesh(const MapSample& sample, MeshFormat format) {
  const SurfaceGrid& grid = sample.grid;
  if (grid.n_x < 3 || grid.n_y < 1 || sample.f1.size() != grid.node_count()) {
    throw InvalidParams("build_mesh: need a sampled grid with n_x >= 3, n_y >= 1");
  }
  MeshOutput mesh;
  mesh.format = format;
  mesh.n_x = grid.n_x;
  mesh.n_y = grid.n_y;
  mesh.vertices = sample.f1;
  mesh.triangles.reserve(2 * static_cast<std::size_t>(grid.n_x) * grid.n_y);
  for (int j = 0; j < grid.n_y; ++j) {
    for (int i = 0; i < grid.n_x; ++i) {
      const int i_next = (i + 1) % grid.n_x;  // welded seam
      const int a = static_cast<int>(grid.index(i, j));
      const int b = static_cast<int>(grid.index(i_next, j));
      const int c = static_cast<int>(grid.index(i_next, j + 1));
      const int d = static_cast<int>(grid.index(i, j + 1));
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }
  return mesh;
}

void write_obj(const std::string& path, const MeshOutput& mesh) {
  std::ofstream out = open_for_write(path);
  std::string buf;
  buf.reserve(64 * mesh.vertices.size() + 32 * mesh.triangles.size());
  for (const Vec3& v : mesh.vertices) {
    append_vertex(buf, v, "v");
  }
  for (const auto& t : mesh.triangles) {
    buf += 'f';
    for (int idx : t) {
      buf += ' ';
      buf += std::to_string(idx + 1);  // OBJ indices are 1-based
    }
    buf += '\n';
  }
  out << buf;
  finish_write(out, path);
}

void write_ply(const std::string& path, const MeshOutput& mesh) {
  std::ofstream out = open_for_write(path);
  std::string buf;
  buf.reserve(64 * mesh.vertices.size() + 32 * mesh.triangles.size() + 256);
  buf += "ply\nformat ascii 1.0\n";
  buf += "element vertex " + std::to_string(mesh.vertices.size()) + "\n";
  buf += "property double x\nproperty double y\nproperty double z\n";
  buf += "element face " + std::to_string(mesh.triangles.size()) + "\n";
  buf += "property list uchar int vertex_indices\nend_header\n";
  for (const Vec3& v : mesh.vertices) {
    append_vertex(buf, v, "");
  }
  for (const auto& t : mesh.triangles) {
    buf += '3';
    for (int idx : t) {
      buf += ' ';
      buf += std::to_string(idx);
    }
    buf += '\n';
  }
  out << buf;
  finish_write(out, path);
}

void write_mesh(const std::string& path, const MeshOutput& mesh) {
  if (mesh.format == MeshFormat::Obj) {
    write_obj(path, mesh);
  } else {
    write_ply(path, mesh);
  }
}

void write_sweep_csv(const std::string& path, const std::vector<DefectReport>& rows) {
  std::ofstream out = open_for_write(path);
  std::string buf = "N,c0_distance,max_e11,max_e12,max_e22\n";
  for (const DefectReport& r : rows) {
    buf += std::to_string(r.N);
    buf += ',';
    buf += format_double(r.c0_distance);
    buf += ',';
    buf += format_double(r.max_e11);
    buf += ',';
    buf += format_double(r.max_e12);
    buf += ',';
    buf += format_double(r.max_e22);
    buf += '\n';
  }
  out << buf;
  finish_write(out, path);
}

}  // namespace corrugate
