#pragma once

// Subcommand drivers behind the command-line tool, separated from argv
// parsing so tests can invoke them with in-memory streams.

#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "corrugate/cone.hpp"
#include "corrugate/mesh_io.hpp"
#include "corrugate/verify.hpp"

namespace corrugate {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;           // property failure / unexpected error
inline constexpr int kExitInvalidArgs = 2;
inline constexpr int kExitOutOfSubsolution = 3;
inline constexpr int kExitIo = 4;

// Build one corrugated surface; write mesh and report, print the report JSON.
struct ConeCommand {
  ConeConfig config;
  std::string out;     // mesh path; empty skips the mesh
  std::string report;  // report path; empty prints to stdout only
  MeshFormat format = MeshFormat::Obj;
};

// Build a family of surfaces over several corrugation numbers; write one
// mesh + report per N into out_dir plus an aggregate CSV of the defects.
struct SweepCommand {
  std::vector<int> N_values;
  double eta = 0.2;
  double eps = 0.0;  // <= 0 derives eps = 2*eta
  int n_y = 100;
  int threads = 0;
  std::string out_dir = ".";
  std::string csv;  // empty: <out_dir>/sweep.csv
  MeshFormat format = MeshFormat::Obj;
};

// Run the randomized property battery; print the JSON summary to stdout
// (one human-readable line per check goes to the error stream).
struct VerifyCommand {
  VerifyConfig config;
  std::string report;  // also write the summary JSON here when non-empty
};

int run_cone(const ConeCommand& cmd, std::ostream& out, std::ostream& err);
int run_sweep(const SweepCommand& cmd, std::ostream& out, std::ostream& err);
int run_verify(const VerifyCommand& cmd, std::ostream& out, std::ostream& err);

// Exit-code mapping shared by every entry point: invalid parameters -> 2,
// leaving the subsolution hull -> 3, file-system trouble -> 4, any other
// error -> 1. The error message goes to err.
int run_guarded(std::ostream& err, const std::function<int()>& body);

// "480x100" -> {480, 100}; throws InvalidParams naming --grid otherwise.
std::pair<int, int> parse_grid(const std::string& text);

// "obj"/"ply" -> MeshFormat; throws InvalidParams naming --format otherwise.
MeshFormat parse_mesh_format(const std::string& name);

}  // namespace corrugate
