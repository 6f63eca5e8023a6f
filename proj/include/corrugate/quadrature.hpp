#pragma once

// Adaptive Simpson quadrature over scalar, complex, and Vector3 integrands.
// Used by the generic corrugation path and as an independent oracle in
// tests; the analytic pipeline never calls it.

#include "corrugate/types.hpp"

#include <cmath>
#include <utility>

namespace corrugate {

struct QuadratureOptions {
  double tol = 1e-10;     // absolute tolerance on the whole interval
  int initial_panels = 64;  // uniform pre-split (integrands here oscillate)
  int max_depth = 32;       // per-panel recursion limit
};

namespace detail {

// Zero element and magnitude for each supported value type.  Eigen vectors
// are NOT zero-initialized by their default constructor, hence this shim.
template <typename V>
struct QuadTraits;

template <>
struct QuadTraits<double> {
  static double zero() { return 0.0; }
  static double norm(double v) { return std::abs(v); }
};

template <>
struct QuadTraits<Complex> {
  static Complex zero() { return Complex(0.0, 0.0); }
  static double norm(const Complex& v) { return std::abs(v); }
};

template <>
struct QuadTraits<Vec3> {
  static Vec3 zero() { return Vec3::Zero(); }
  static double norm(const Vec3& v) { return v.norm(); }
};

template <typename V, typename F>
V simpson(const F& f, double a, double m, double b, const V& fa, const V& fm, const V& fb) {
  (void)f;
  return ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
}

template <typename V, typename F>
V adapt(const F& f, double a, double b, V fa, V fm, V fb, V whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const V flm = f(lm);
  const V frm = f(rm);
  const V left = simpson<V>(f, a, lm, m, fa, flm, fm);
  const V right = simpson<V>(f, m, rm, b, fm, frm, fb);
  const V refined = left + right;
  const V err = refined - whole;
  if (QuadTraits<V>::norm(err) <= 15.0 * tol) {
    return refined + err / 15.0;  // Richardson tail
  }
  if (depth <= 0) {
    throw QuadratureFailure("adaptive quadrature failed to converge (depth exhausted)");
  }
  return adapt<V>(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt<V>(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// integral_a^b f(t) dt with per-panel error control; throws
// QuadratureFailure when the requested tolerance is unreachable.
template <typename V, typename F>
V integrate_adaptive(const F& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (!(opt.tol > 0.0) || opt.initial_panels < 1 || opt.max_depth < 1) {
    throw InvalidParams("quadrature options: tol > 0, panels >= 1, depth >= 1 required");
  }
  if (a == b) return detail::QuadTraits<V>::zero();
  V total = detail::QuadTraits<V>::zero();
  const double h = (b - a) / opt.initial_panels;
  const double panel_tol = opt.tol / opt.initial_panels;
  for (int k = 0; k < opt.initial_panels; ++k) {
    const double pa = a + k * h;
    const double pb = (k + 1 == opt.initial_panels) ? b : a + (k + 1) * h;
    const double pm = 0.5 * (pa + pb);
    const V fa = f(pa);
    const V fm = f(pm);
    const V fb = f(pb);
    const V whole = detail::simpson<V>(f, pa, pm, pb, fa, fm, fb);
    total = total + detail::adapt<V>(f, pa, pb, fa, fm, fb, whole, panel_tol, opt.max_depth);
  }
  return total;
}

}  // namespace corrugate
