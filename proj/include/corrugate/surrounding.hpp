#pragma once

// Surrounding loops: given a jet σ, a target average w inside the convex
// hull of its ε-slice, and the slice geometry, build the round loop
//
//     γ(t) = c₁(t) e₁ + c₂(t) e₂ + e₃
//
// whose pattern parameters (η, θ, β) are chosen so that the loop stays in
// the slice annulus and its exact average is w. Also provides the two
// homotopies the construction needs: moving a jet until the fixed-plane
// projections of L(u) and w agree (normalize_w), and connecting the loop's
// base point γ(0) back to L(u) inside the annulus (base_point_homotopy).

#include "corrugate/jets.hpp"
#include "corrugate/pattern.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace corrugate {

// Which slice axis carries the real part of the pattern plane. NormalFirst
// puts cos along the plane normal of the jet image (the generic convention);
// TangentFirst puts cos along L(u)'s in-plane direction (the convention of
// the cone application, where the loop reads (cos g + η cos θ)v₁ + sin g·n).
enum class AxisOrder {
  NormalFirst,
  TangentFirst,
};

struct SurroundingInput {
  Jet sigma;
  Vec3 w = Vec3::Zero();
  Mat2 g = Mat2::Identity();
  double eps = 0.1;
  int u_index = 1;
  AxisOrder axis = AxisOrder::NormalFirst;
};

// Built loop: e1/e2 are the plane axes scaled by r_tilde, e3 the axis point
// the loop circles around. Evaluation maps the unit-circle pattern through
// the frame, so ‖γ(t) − offset‖ ≡ r_tilde with offset = e3 + η cos θ e1.
struct SurroundingLoop {
  Vec3 e1;
  Vec3 e2;
  Vec3 e3;
  PatternShape pattern;
  double r_tilde = 0.0;
  SliceGeometry slice;
  AxisOrder axis = AxisOrder::NormalFirst;
  int u_index = 1;

  Vec3 eval(double t) const;
  Vec3 average() const;          // equals the prescribed w (closed form)
  Vec3 primitive(double t) const;  // ∫₀ᵗ (γ − average), extended 1-periodically
};

// Radius of the pattern disk: max of L(u)'s in-plane radius and the radius
// that keeps w surrounded with a one-third safety margin to the hull rim.
// Requires the normalization proj_P L(u) = proj_P w (throws NotNormalized).
double disk_radius(const SurroundingInput& input);
double disk_radius(const SurroundingInput& input, const SliceGeometry& geo);

// Pattern amplitude: one third of the smaller of w's margin to the hull rim
// and L(u)'s margin to the annulus boundary, in pattern units (divided by
// r_tilde), clamped strictly below 1/2. Throws DegenerateInput on zero margin.
double eta_selection(const SurroundingInput& input, double r_tilde);
double eta_selection(const SurroundingInput& input, const SliceGeometry& geo,
                     double r_tilde);

// Solve β r̃ e^{iθ} + (1−β) r̃ e^{−iθ} = w_plane for (θ, β); w_plane is w in
// plane coordinates relative to the axis point. On the real axis any β
// works and ½ is returned (farthest from the admissibility boundary).
std::pair<double, double> invert_disk_parametrization(Complex w_plane, double r_tilde);

// Assemble the loop for a normalized input. eta_override substitutes the
// automatic amplitude (still clamped to admissibility). Verifies the loop
// annulus fits strictly inside the slice annulus; throws DegenerateInput
// when no admissible amplitude remains.
SurroundingLoop build_loop(const SurroundingInput& input,
                           std::optional<double> eta_override = std::nullopt);

// Jet path moving column u until proj_P L(u) = proj_P w. path[0] is the
// input jet verbatim; path[main_leg_begin] starts the norm-preserving leg
// (preceded, when ‖L(u)‖ < ‖w‖, by a radial leg growing the norm to ‖w‖);
// normalized == path.back() satisfies the projection equality.
struct NormalizeResult {
  std::vector<Jet> path;
  std::size_t main_leg_begin = 0;
  Jet normalized;
};

NormalizeResult normalize_w(const Jet& sigma, const Vec3& w, int u_index,
                            int samples_per_leg = 64);

// Path from γ(0) to L(u) inside the slice annulus: a circle arc to the e2
// axis (NormalFirst only; with TangentFirst γ(0) already sits on L(u)'s
// ray) followed by a straight segment. First sample is exactly loop.eval(0),
// last exactly L(u). Throws PathEscapesSlice if a sample leaves the annulus.
std::vector<Vec3> base_point_homotopy(const SurroundingLoop& loop, const Jet& sigma,
                                      int samples_per_leg = 64);

}  // namespace corrugate
