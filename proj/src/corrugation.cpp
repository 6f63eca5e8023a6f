#include "corrugate/corrugation.hpp"

#include <cmath>

namespace corrugate {

void CorrugationConfig::validate() const {
  if (!(N > 0.0) || !std::isfinite(N)) {
    throw InvalidParams("corrugation: N must be positive and finite");
  }
  if (direction != 1 && direction != 2) {
    throw InvalidParams("corrugation: direction must be 1 or 2");
  }
  if (quadrature_nodes < 64) {
    throw InvalidParams("corrugation: quadrature_nodes must be >= 64");
  }
  if (!(quadrature_tol > 0.0)) {
    throw InvalidParams("corrugation: quadrature_tol must be positive");
  }
}

Vec3 corrugate_generic(const MapR2ToR3& f0, const LoopFamily& gamma,
                       const CorrugationConfig& cfg, const DomainPoint& x) {
  cfg.validate();
  const QuadratureOptions opt{cfg.quadrature_tol, cfg.quadrature_nodes, 32};
  const auto at = [&](double t) { return gamma.eval(x, t); };
  const Vec3 mean = integrate_adaptive<Vec3>(at, 0.0, 1.0, opt);
  const double t_frac = frac(cfg.N * x.coord(cfg.direction));
  const Vec3 partial = integrate_adaptive<Vec3>(at, 0.0, t_frac, opt);
  return f0(x) + (partial - t_frac * mean) / cfg.N;
}

SurroundingLoop loop_at(const SubsolutionSection& section, const CorrugationConfig& cfg,
                        const DomainPoint& x) {
  cfg.validate();
  const Jet sigma = section.jet(x);
  const Vec3 w = section.derivative_u(x);
  // Only the endpoint of the normalization homotopy matters here.
  const Jet normalized = normalize_w(sigma, w, cfg.direction, 1).normalized;
  const SurroundingInput input{normalized, w,         section.metric(x),
                               section.eps, cfg.direction, section.axis};
  return build_loop(input, section.eta_override);
}

Vec3 corrugate_analytic(const SubsolutionSection& section, const CorrugationConfig& cfg,
                        const DomainPoint& x) {
  const SurroundingLoop loop = loop_at(section, cfg, x);
  const double t_frac = frac(cfg.N * x.coord(cfg.direction));
  return section.base(x) + loop.primitive(t_frac) / cfg.N;
}

Vec3 derivative_along(const MapR2ToR3& f, const DomainPoint& x, int direction,
                      double step) {
  if (!(step > 0.0)) {
    throw InvalidParams("derivative_along: step must be positive");
  }
  if (direction != 1 && direction != 2) {
    throw InvalidParams("derivative_along: direction must be 1 or 2");
  }
  DomainPoint xp = x, xm = x;
  if (direction == 1) {
    xp.x1 += step;
    xm.x1 -= step;
  } else {
    xp.x2 += step;
    xm.x2 -= step;
  }
  return (f(xp) - f(xm)) / (2.0 * step);
}

Jet update_formal_solution(const Jet& sigma0, const Vec3& f1_at_x, const Vec3& df1_u,
                           int u_index) {
  if (u_index != 1 && u_index != 2) {
    throw InvalidParams("update_formal_solution: u_index must be 1 or 2");
  }
  Jet out = sigma0;
  out.y = f1_at_x;
  out.L[u_index - 1] = df1_u;
  return out;
}

}  // namespace corrugate
