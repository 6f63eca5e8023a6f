#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace corrugate {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Fractional part in [0,1); correct for negative arguments.
inline double frac(double t) { return t - std::floor(t); }

// Point of the cylinder R/Z x [y0,y1]; x1 is understood mod 1.
struct DomainPoint {
  double x1 = 0.0;
  double x2 = 0.0;

  DomainPoint wrapped() const { return {frac(x1), x2}; }
  double coord(int direction) const { return direction == 1 ? x1 : x2; }
};

// ---------------------------------------------------------------------------
// Error taxonomy. Every failure mode callers are expected to handle has its
// own type; all derive from Error so "any toolkit failure" is one catch away.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The kernel image of the jet is rank-deficient (no slice plane exists).
struct DegeneratePlane : Error { using Error::Error; };
// The constraint slice through the requested plane is empty.
struct EmptySlice : Error { using Error::Error; };
// An operation requiring proj_P L(u) = proj_P w was called before normalizing.
struct NotNormalized : Error { using Error::Error; };
// Input leaves no room for a loop (zero margins, boundary data, ...).
struct DegenerateInput : Error { using Error::Error; };
// Pattern parameters outside the admissible set.
struct InvalidParams : Error { using Error::Error; };
// Base point outside the region where the derivative target is admissible.
struct OutOfSubsolution : Error { using Error::Error; };
// A homotopy sample left the slice annulus.
struct PathEscapesSlice : Error { using Error::Error; };
// Adaptive integration failed to reach the requested tolerance.
struct QuadratureFailure : Error { using Error::Error; };
// A file could not be opened or written.
struct IoError : Error { using Error::Error; };

}  // namespace corrugate
