#include <cmath>
#include <limits>
#include <random>

#include "corrugate/cone.hpp"
#include "corrugate/corrugation.hpp"
#include "doctest.h"

using namespace corrugate;

TEST_CASE("config validation") {
  CorrugationConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  SUBCASE("N") {
    cfg.N = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
    cfg.N = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
  }
  SUBCASE("direction") {
    cfg.direction = 3;
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
  }
  SUBCASE("quadrature knobs") {
    cfg.quadrature_nodes = 32;
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
    cfg.quadrature_nodes = 64;
    cfg.quadrature_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
  }
}

TEST_CASE("quadrature and closed-form corrugation agree") {
  const double eta = 0.15;
  const double eps = 0.35;
  const SubsolutionSection section = cone_subsolution_section(eta, eps);
  const LoopFamily family = cone_loop_family(eta);
  const MapR2ToR3 f0 = [](const DomainPoint& p) { return cone_map(p.x1, p.x2); };

  std::mt19937_64 gen(71);
  auto unit = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  double worst = 0.0;
  for (int k = 0; k < 25; ++k) {
    CorrugationConfig cfg;
    cfg.N = (k % 2 == 0) ? 6.0 : 11.5;  // non-integer N is allowed in the library
    const DomainPoint x{unit(), -0.09 + 0.18 * unit()};
    const Vec3 generic = corrugate_generic(f0, family, cfg, x);
    const Vec3 analytic = corrugate_analytic(section, cfg, x);
    worst = std::max(worst, (generic - analytic).norm());
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("closed form is stable for very large N") {
  const SubsolutionSection section = cone_subsolution_section(0.1, 0.25);
  CorrugationConfig cfg;
  cfg.N = 1e5 + 0.5;
  const DomainPoint x{0.37, 0.06};
  const Vec3 f1 = corrugate_analytic(section, cfg, x);
  const Vec3 f0 = section.base(x);
  // The deviation is the loop primitive over N: O(1/N), never amplified.
  CHECK((f1 - f0).norm() < 1.0 / cfg.N);
  const Vec3 generic = corrugate_generic(
      [](const DomainPoint& p) { return cone_map(p.x1, p.x2); },
      cone_loop_family(0.1), cfg, x);
  CHECK((generic - f1).norm() < 1e-6);
}

TEST_CASE("deviation from the base map is 1/N-periodic in x") {
  const SubsolutionSection section = cone_subsolution_section(0.12, 0.3);
  CorrugationConfig cfg;
  cfg.N = 8.0;
  const double y = 0.05;
  for (double x : {0.11, 0.42}) {
    const DomainPoint a{x, y};
    const DomainPoint b{x + 1.0 / cfg.N, y};
    const double da = (corrugate_analytic(section, cfg, a) - section.base(a)).norm();
    const double db = (corrugate_analytic(section, cfg, b) - section.base(b)).norm();
    CHECK(da == doctest::Approx(db).epsilon(1e-10));
  }
}

TEST_CASE("loop_at builds the loop the closed form integrates") {
  const SubsolutionSection section = cone_subsolution_section(0.1, 0.25);
  CorrugationConfig cfg;
  cfg.N = 10.0;
  const DomainPoint x{0.3, 0.04};
  const SurroundingLoop loop = loop_at(section, cfg, x);
  const Vec3 expected = section.base(x) + loop.primitive(frac(cfg.N * x.x1)) / cfg.N;
  CHECK((corrugate_analytic(section, cfg, x) - expected).norm() < 1e-14);
  // The loop's average is the derivative being replaced.
  CHECK((loop.average() - section.derivative_u(x)).norm() < 1e-12);
}

TEST_CASE("finite-difference derivative helper") {
  const MapR2ToR3 helix = [](const DomainPoint& p) {
    return Vec3(std::cos(kTwoPi * p.x1), std::sin(kTwoPi * p.x1), p.x2);
  };
  const DomainPoint x{0.3, 0.1};
  const Vec3 d1 = derivative_along(helix, x, 1);
  const Vec3 expected1 = kTwoPi * Vec3(-std::sin(kTwoPi * 0.3), std::cos(kTwoPi * 0.3), 0.0);
  CHECK((d1 - expected1).norm() < 1e-7);
  const Vec3 d2 = derivative_along(helix, x, 2);
  CHECK((d2 - Vec3(0, 0, 1)).norm() < 1e-9);
  CHECK_THROWS_AS(derivative_along(helix, x, 0), InvalidParams);
  CHECK_THROWS_AS(derivative_along(helix, x, 1, 0.0), InvalidParams);
}

TEST_CASE("post-corrugation jet swaps exactly one column") {
  const Jet sigma0 = cone_formal_solution(0.2, 0.05);
  const Vec3 new_point(1, 2, 3);
  const Vec3 new_column(0, 1, 0);
  const Jet updated = update_formal_solution(sigma0, new_point, new_column, 1);
  CHECK((updated.y - new_point).norm() == 0.0);
  CHECK((updated.L[0] - new_column).norm() == 0.0);
  CHECK((updated.L[1] - sigma0.L[1]).norm() == 0.0);
  CHECK(updated.x.x1 == sigma0.x.x1);
  CHECK(updated.x.x2 == sigma0.x.x2);
}
