#include "corrugate/pattern.hpp"

#include <algorithm>
#include <cmath>

namespace corrugate {
namespace {

// Exact integral of exp(i g(s)) ds over a segment of length dt on which g
// runs linearly g0 -> g1.  For |g1-g0| below the series cutoff the closed
// form (e^{i g1}-e^{i g0})/(i dg) loses digits, so switch to the midpoint
// expansion dt e^{i (g0+g1)/2} (1 - dg^2/24 + ...), exact to O(dg^4).
Complex phasor_integral(double g0, double g1, double dt) {
  const double dg = g1 - g0;
  if (std::abs(dg) < 1e-8) {
    const Complex mid = std::exp(Complex(0.0, 0.5 * (g0 + g1)));
    return dt * mid * (1.0 - dg * dg / 24.0);
  }
  const Complex num = std::exp(Complex(0.0, g1)) - std::exp(Complex(0.0, g0));
  return dt * num / Complex(0.0, dg);
}

// Index of the segment containing tt in [0,1): the last one with t0 <= tt.
std::size_t segment_index(const std::vector<AngularSegment>& segs, double tt) {
  auto it = std::upper_bound(segs.begin(), segs.end(), tt,
                             [](double v, const AngularSegment& s) { return v < s.t0; });
  if (it == segs.begin()) return 0;
  return static_cast<std::size_t>(std::distance(segs.begin(), it)) - 1;
}

double eval_angle(const std::vector<AngularSegment>& segs, double t) {
  const double tt = frac(t);
  const AngularSegment& s = segs[segment_index(segs, tt)];
  const double len = s.t1 - s.t0;
  if (len <= 0.0 || s.g1 == s.g0) return s.g0;
  return s.g0 + (tt - s.t0) * (s.g1 - s.g0) / len;
}

}  // namespace

bool PatternParams::valid() const {
  if (!(eta > 0.0 && eta < 0.5)) return false;
  if (!(theta >= 0.0 && theta <= kPi)) return false;
  if (!(beta >= 0.0 && beta <= 1.0)) return false;
  return eta <= beta && beta <= 1.0 - eta;
}

AngularBreakpoints angular_breakpoints(const PatternParams& p) {
  if (!p.valid()) {
    throw InvalidParams("pattern parameters out of range: need eta in (0,1/2), "
                        "theta in [0,pi], eta <= beta <= 1-eta");
  }
  // Rising half on [0,1/2]: ramp to theta, plateau, ramp to 2pi-theta,
  // plateau, ramp to 2pi.  All ramps share slope 4pi/eta; the plateau
  // lengths (beta-eta/2)/2 and (1-beta-eta/2)/2 fix the loop average.
  const double bp = p.beta - 0.5 * p.eta;  // first plateau's total duration
  const double a1 = p.eta * p.theta / (4.0 * kPi);
  const double a2 = 0.5 * bp + a1;
  const double a3 = 0.5 * bp + p.eta * (kTwoPi - p.theta) / (4.0 * kPi);
  const double a4 = 0.5 - a1;
  const double ts[6] = {0.0, a1, a2, a3, a4, 0.5};
  const double gs[6] = {0.0, p.theta, p.theta, kTwoPi - p.theta, kTwoPi - p.theta, kTwoPi};

  AngularBreakpoints out;
  out.slope_bound = 4.0 * kPi / p.eta;
  out.segments.reserve(10);
  for (int i = 0; i < 5; ++i) {
    if (ts[i + 1] == ts[i]) continue;  // theta in {0, pi} collapses a piece
    out.segments.push_back({ts[i], ts[i + 1], gs[i], gs[i + 1]});
  }
  // Mirror half on [1/2,1]: g(t) = g(1-t).
  for (int i = 4; i >= 0; --i) {
    if (ts[i + 1] == ts[i]) continue;
    out.segments.push_back({1.0 - ts[i + 1], 1.0 - ts[i], gs[i + 1], gs[i]});
  }
  return out;
}

double angular_function(const PatternParams& p, double t) {
  return eval_angle(angular_breakpoints(p).segments, t);
}

PatternShape::PatternShape(const PatternParams& p)
    : params_(p), knots_(angular_breakpoints(p)) {
  prefix_.reserve(knots_.segments.size() + 1);
  Complex acc(0.0, 0.0);
  prefix_.push_back(acc);
  for (const AngularSegment& s : knots_.segments) {
    acc += phasor_integral(s.g0, s.g1, s.t1 - s.t0);
    prefix_.push_back(acc);
  }
  // Average of exp(i g) accumulated from the same prefix sums that
  // primitive() uses, so primitive(n) == 0 exactly at every integer n.
  avg_exp_ = acc;
}

double PatternShape::angle(double t) const {
  return eval_angle(knots_.segments, t);
}

PatternValue PatternShape::value(double t) const {
  const Complex z = std::exp(Complex(0.0, angle(t))) + params_.eta * std::cos(params_.theta);
  return {z, 1.0};
}

Complex PatternShape::average() const {
  // The ramps' phasor integrals cancel in closed form, each plateau
  // contributes length * e^{+-i theta}, and eta cos(theta) tops the
  // plateau weights up from beta-eta/2 to beta (resp. 1-beta).
  const Complex up = std::exp(Complex(0.0, params_.theta));
  return params_.beta * up + (1.0 - params_.beta) * std::conj(up);
}

Complex PatternShape::primitive(double t) const {
  const double tt = frac(t);
  const std::size_t k = segment_index(knots_.segments, tt);
  const AngularSegment& s = knots_.segments[k];
  const double len = s.t1 - s.t0;
  const double gt = (len <= 0.0 || s.g1 == s.g0)
                        ? s.g0
                        : s.g0 + (tt - s.t0) * (s.g1 - s.g0) / len;
  const Complex partial = prefix_[k] + phasor_integral(s.g0, gt, tt - s.t0);
  // Primitive of exp(i g) minus its own mean; the eta cos(theta) offset is
  // constant and equals average() - average_exp(), so it drops out here.
  return partial - tt * avg_exp_;
}

PatternValue shape(const PatternParams& p, double t) {
  return PatternShape(p).value(t);
}

Complex shape_primitive(const PatternParams& p, double t) {
  return PatternShape(p).primitive(t);
}

Complex shape_average(const PatternParams& p) {
  const Complex up = std::exp(Complex(0.0, p.theta));
  return p.beta * up + (1.0 - p.beta) * std::conj(up);
}

}  // namespace corrugate
