#pragma once

// The oscillation pattern behind every corrugation: a closed loop
//
//     c(eta,theta,beta; t) = (exp(i g(t)) + eta cos(theta), 1)  in  C x R,
//
// where the angular profile g is piecewise linear on [0,1], sweeps 0 -> 2pi
// on [0,1/2] with plateaus at theta and 2pi-theta, and mirrors itself on
// [1/2,1] (g(t) = g(1-t)). Plateau lengths are chosen so that the loop
// average is exactly beta e^{i theta} + (1-beta) e^{-i theta}: the ramps'
// contributions cancel and the eta cos(theta) offset makes up for the time
// they steal from the plateaus. Averages and periodic primitives are exact
// closed forms; no quadrature is involved outside of test oracles.

#include "corrugate/types.hpp"

#include <vector>

namespace corrugate {

// Admissible parameters: eta in (0,1/2), theta in [0,pi], beta in [0,1]
// with eta <= beta <= 1-eta.
struct PatternParams {
  double eta = 0.2;
  double theta = kPi / 2;
  double beta = 0.5;

  bool valid() const;
};

// Pattern value: complex oscillation plus the constant third component.
struct PatternValue {
  Complex z;
  double s = 1.0;  // identically 1; its mean-free primitive is identically 0
};

// One linear piece of the angular profile: g runs g0 -> g1 over [t0,t1].
struct AngularSegment {
  double t0, t1;
  double g0, g1;
};

// Knot table of g on [0,1] (rising half plus its mirror image).
struct AngularBreakpoints {
  std::vector<AngularSegment> segments;
  double slope_bound = 0.0;  // max |g'| over all segments (= 4pi/eta)
};

// Throws InvalidParams if p is not admissible.
AngularBreakpoints angular_breakpoints(const PatternParams& p);

// Point evaluation of the angular profile; t is taken mod 1.
double angular_function(const PatternParams& p, double t);

// Immutable precomputed pattern: knot table plus prefix integrals of
// exp(i g), so value/average/primitive are O(log #segments) per call.
class PatternShape {
 public:
  explicit PatternShape(const PatternParams& p);  // throws InvalidParams

  const PatternParams& params() const { return params_; }
  const AngularBreakpoints& breakpoints() const { return knots_; }

  double angle(double t) const;        // g(t), t mod 1
  PatternValue value(double t) const;  // (exp(i g(t)) + eta cos theta, 1)

  // Loop average of the complex component (closed form):
  //   beta e^{i theta} + (1-beta) e^{-i theta}.
  Complex average() const;
  // Average of exp(i g) alone: (beta-eta/2) e^{i theta} + (1-beta-eta/2) e^{-i theta},
  // accumulated from the prefix table so primitive(1) vanishes exactly.
  Complex average_exp() const { return avg_exp_; }

  // Exact periodic primitive of the mean-free complex component:
  //   t |-> integral_0^t (c(s) - average) ds, extended 1-periodically.
  // The third component's primitive is identically zero and not returned.
  Complex primitive(double t) const;

 private:
  PatternParams params_;
  AngularBreakpoints knots_;
  std::vector<Complex> prefix_;  // integral of exp(i g) from 0 to segment k start
  Complex avg_exp_;
};

// Convenience forms that build the table per call.
PatternValue shape(const PatternParams& p, double t);
Complex shape_primitive(const PatternParams& p, double t);
// Pure closed form, no validation (well-defined for any (eta,theta,beta)).
Complex shape_average(const PatternParams& p);

}  // namespace corrugate
