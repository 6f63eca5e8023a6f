#pragma once

// The corrugation operator
//
//     f₁(x) = f₀(x) + (1/N) ∫₀^{N x_j} (γ(x, s) − γ̄(x)) ds
//
// in two interchangeable forms: a generic one integrating any loop family
// by adaptive quadrature, and an analytic one that builds the surrounding
// loop at x and reads off its exact periodic primitive. Because the
// integrand is mean-free and 1-periodic, ∫₀^{N x_j} collapses to the
// periodic primitive at frac(N x_j) — no long-interval quadrature, and
// accuracy independent of N.

#include "corrugate/quadrature.hpp"
#include "corrugate/surrounding.hpp"

#include <functional>
#include <optional>

namespace corrugate {

struct CorrugationConfig {
  double N = 50.0;            // corrugation number; any positive real
  int direction = 1;          // coordinate j: the corrugation runs along x_j
  int quadrature_nodes = 64;  // initial panels for the generic path
  double quadrature_tol = 1e-9;

  void validate() const;  // throws InvalidParams
};

using MapR2ToR3 = std::function<Vec3(const DomainPoint&)>;

// Evaluable loop family (x, t) ↦ γ(x, t), 1-periodic in t.
struct LoopFamily {
  std::function<Vec3(const DomainPoint&, double)> eval;
};

// Quadrature form: γ̄ and the partial integral are integrated adaptively.
Vec3 corrugate_generic(const MapR2ToR3& f0, const LoopFamily& gamma,
                       const CorrugationConfig& cfg, const DomainPoint& x);

// Everything needed to build the surrounding loop at a domain point. The
// corrugation direction doubles as the replaced derivative column, so the
// loop is built for u = ∂_j with j = cfg.direction.
struct SubsolutionSection {
  std::function<Jet(const DomainPoint&)> jet;
  MapR2ToR3 base;                                        // f₀
  std::function<Vec3(const DomainPoint&)> derivative_u;  // w(x) = ∂_j f₀(x)
  std::function<Mat2(const DomainPoint&)> metric;
  double eps = 0.1;
  AxisOrder axis = AxisOrder::NormalFirst;
  std::optional<double> eta_override;  // fixed amplitude instead of the margin rule
};

// The loop the analytic path integrates at x: jet normalized, loop built.
SurroundingLoop loop_at(const SubsolutionSection& section, const CorrugationConfig& cfg,
                        const DomainPoint& x);

// Closed-form path: f₀(x) + loop primitive at frac(N x_j) divided by N.
Vec3 corrugate_analytic(const SubsolutionSection& section, const CorrugationConfig& cfg,
                        const DomainPoint& x);

// Central finite difference of an evaluable map; verification helper.
Vec3 derivative_along(const MapR2ToR3& f, const DomainPoint& x, int direction,
                      double step = 1e-6);

// Post-corrugation jet: image point and u-column from the new map, the
// kernel column untouched.
Jet update_formal_solution(const Jet& sigma0, const Vec3& f1_at_x, const Vec3& df1_u,
                           int u_index);

}  // namespace corrugate
