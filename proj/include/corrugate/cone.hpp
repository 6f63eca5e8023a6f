#pragma once

// Desingularizing the cone over the flat cylinder: the base map
//
//     f₀(x, y) = (1/√2)(y cos 2πx, y sin 2πx, y)
//
// is isometric for the flat metric dx² + dy² except at the apex y = 0,
// where it fails to be an immersion. Corrugating along x with the loop
// γ = (cos g + η cos θ) v₁ + sin(g) n — the surrounding loop of the unit
// azimuthal frame with θ(y) = arccos(√2 π y), β = ½ — produces a map
// ε-isometric to the flat cylinder through the apex. This module builds
// the corrugated surface on a structured grid with closed-form values and
// derivatives, and reports the metric-defect extremes.

#include "corrugate/corrugation.hpp"

#include <utility>
#include <vector>

namespace corrugate {

inline constexpr double kSqrt2Pi = 4.442882938158366;  // √2 · π
// The derivative target √2 π y v₁ stays inside the convex hull of the unit
// slice exactly while |y| < 1/(√2 π).
inline constexpr double kSubsolutionBound = 1.0 / kSqrt2Pi;

Vec3 cone_map(double x, double y);
Vec3 cone_v1(double x);      // unit azimuthal direction (−sin 2πx, cos 2πx, 0)
Vec3 cone_d2f0(double x);    // ∂₂f₀ = (1/√2)(cos 2πx, sin 2πx, 1), unit
Vec3 cone_normal(double x);  // v₁ ∧ ∂₂f₀ = (1/√2)(cos 2πx, sin 2πx, −1), unit

// Jet with columns (v₁, ∂₂f₀): an orthonormal frame, so its pullback is
// the flat metric exactly and the defect vanishes for every (x, y).
Jet cone_formal_solution(double x, double y);

// (η, arccos(√2 π y), ½); throws OutOfSubsolution when |y| ≥ 1/(√2 π).
PatternParams cone_pattern_params(double y, double eta);

// γ(x, y, t): the loop around ∂₁f₀(x, y) in the (v₁, n) plane.
Vec3 cone_loop(double x, double y, double eta, double t);
LoopFamily cone_loop_family(double eta);

// The cone data packaged for the analytic corrugation path.
SubsolutionSection cone_subsolution_section(double eta, double eps);

struct ConeConfig {
  int N = 50;          // corrugation number; integer so the surface closes in x
  double eta = 0.2;    // loop amplitude, must stay below eps
  double eps = 0.4;    // target isometry defect bound
  int n_x = 0;         // grid columns; 0 picks 40·N (40 samples per period)
  int n_y = 100;       // grid row intervals (rows = n_y + 1)
  double y_min = -0.1;
  double y_max = 0.1;
  int threads = 0;     // 0 picks the hardware concurrency
  bool fd_crosscheck = false;  // compare closed-form derivatives against
                               // finite differences at ~1% of the nodes

  void validate() const;  // throws InvalidParams / OutOfSubsolution
  int resolved_nx() const { return n_x == 0 ? 40 * N : n_x; }
};

// Structured grid on [0,1) × [y_min, y_max]: x is periodic and column
// n_x is identified with column 0 (the seam is welded).
struct SurfaceGrid {
  int n_x = 0;
  int n_y = 0;
  double y_min = -0.1;
  double y_max = 0.1;

  double x(int i) const { return static_cast<double>(i) / n_x; }
  double y(int j) const {
    return y_min + (y_max - y_min) * static_cast<double>(j) / n_y;
  }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * n_x + static_cast<std::size_t>(i);
  }
  std::size_t node_count() const {
    return static_cast<std::size_t>(n_x) * (n_y + 1);
  }
};

// Sampled corrugated map; d1/d2 are filled only when derivatives are kept.
struct MapSample {
  SurfaceGrid grid;
  std::vector<Vec3> f1;
  std::vector<Vec3> d1;
  std::vector<Vec3> d2;
};

// Extremes of the metric defect g − f₁*h over the grid, for g = dx² + dy²:
// e11 = 1 − ‖∂₁f₁‖², e12 = −⟨∂₁f₁, ∂₂f₁⟩, e22 = 1 − ‖∂₂f₁‖².
struct DefectReport {
  int N = 0;
  double eta = 0.0;
  double eps = 0.0;
  int grid_nx = 0;
  int grid_ny = 0;
  double max_e11 = 0.0;
  double max_e12 = 0.0;
  double max_e22 = 0.0;
  double c0_distance = 0.0;          // sup ‖f₁ − f₀‖
  double min_immersion_margin = 0.0;  // inf ‖∂₁f₁ ∧ ∂₂f₁‖
};

// Evaluate the corrugated map and its defect report on the configured grid.
// Closed-form throughout: per row, the pattern tables at y (and y ± 1e−6
// for the y-derivative) are built once and shared by all columns; since N
// and n_x are integers, node phases N·i/n_x are reduced by exact integer
// arithmetic, so equal phases reuse identical table entries and the x-seam
// closes exactly. Rows are evaluated in parallel; every per-node value and
// the reduction order are thread-count independent, so results are
// bit-identical for any `threads`.
std::pair<MapSample, DefectReport> build_cone_surface(const ConeConfig& cfg,
                                                      bool keep_derivatives = false);

}  // namespace corrugate
