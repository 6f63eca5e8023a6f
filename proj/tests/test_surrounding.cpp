#include <cmath>
#include <random>

#include "corrugate/cone.hpp"
#include "corrugate/surrounding.hpp"
#include "doctest.h"

using namespace corrugate;

namespace {

SurroundingInput cone_input(double x, double y, double eps,
                            AxisOrder axis = AxisOrder::TangentFirst) {
  SurroundingInput input;
  input.sigma = cone_formal_solution(x, y);
  input.w = kSqrt2Pi * y * cone_v1(x);
  input.eps = eps;
  input.u_index = 1;
  input.axis = axis;
  return input;
}

}  // namespace

TEST_CASE("disk radius and amplitude for cone data") {
  const SurroundingInput input = cone_input(0.3, 0.05, 0.12);
  CHECK(disk_radius(input) == doctest::Approx(1.0).epsilon(1e-12));
  // The annulus margin eps is smaller than the hull margin, so the
  // amplitude rule yields eps/3.
  CHECK(eta_selection(input, 1.0) == doctest::Approx(0.12 / 3.0).epsilon(1e-12));
}

TEST_CASE("built loop frame and parameters for cone data") {
  const double x = 0.3, y = 0.05, eps = 0.12;
  const SurroundingInput input = cone_input(x, y, eps);
  const SurroundingLoop loop = build_loop(input);

  CHECK(loop.r_tilde == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(loop.e1.norm() == doctest::Approx(loop.r_tilde).epsilon(1e-12));
  CHECK(loop.e2.norm() == doctest::Approx(loop.r_tilde).epsilon(1e-12));
  CHECK(std::abs(loop.e1.dot(loop.e2)) < 1e-12);
  CHECK(loop.e3.norm() < 1e-14);

  // TangentFirst: the cosine axis is L(u)'s in-plane direction v1.
  CHECK((loop.e1.normalized() - cone_v1(x)).norm() < 1e-12);
  CHECK(loop.pattern.params().eta == doctest::Approx(eps / 3.0));
  CHECK(loop.pattern.params().beta == doctest::Approx(0.5));
  CHECK(loop.pattern.params().theta ==
        doctest::Approx(std::acos(kSqrt2Pi * y)).epsilon(1e-12));
}

TEST_CASE("axis order picks which frame vector carries the cosine") {
  const SurroundingInput tangent_first = cone_input(0.3, 0.05, 0.12, AxisOrder::TangentFirst);
  const SurroundingInput normal_first = cone_input(0.3, 0.05, 0.12, AxisOrder::NormalFirst);
  const SurroundingLoop lt = build_loop(tangent_first);
  const SurroundingLoop ln = build_loop(normal_first);
  CHECK((lt.e1.normalized() - lt.slice.frame.e_tangent).norm() < 1e-12);
  CHECK((ln.e1.normalized() - ln.slice.frame.e_normal).norm() < 1e-12);
  // Both average to the same w.
  CHECK((lt.average() - ln.average()).norm() < 1e-12);
}

TEST_CASE("loop average equals the prescribed derivative over random targets") {
  std::mt19937_64 gen(59);
  auto unit = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double x = unit();
    const double y = -0.095 + 0.19 * unit();
    const double eps = 0.05 + 0.25 * unit();
    SurroundingInput input;
    input.sigma = cone_formal_solution(x, y);
    input.eps = eps;
    input.u_index = 1 + static_cast<int>(gen() % 2);
    input.axis = (gen() % 2 == 0) ? AxisOrder::NormalFirst : AxisOrder::TangentFirst;
    const Vec3& lu = input.sigma.L[input.u_index - 1];
    const SliceGeometry geo =
        slice_geometry(input.sigma, input.g, eps, lu, input.u_index);
    const double r = 0.9 * geo.r_max * std::sqrt(unit());
    const double phi = kTwoPi * unit();
    input.w = geo.frame.center + r * (std::cos(phi) * geo.frame.e_tangent +
                                      std::sin(phi) * geo.frame.e_normal);
    const SurroundingLoop loop = build_loop(input);
    worst = std::max(worst, (loop.average() - input.w).norm());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("disk parametrization inversion round-trips") {
  std::mt19937_64 gen(61);
  auto unit = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  for (int k = 0; k < 500; ++k) {
    const double r = 0.5 + unit();
    const double theta = 0.05 + (kPi - 0.1) * unit();
    const double beta = 0.05 + 0.9 * unit();
    const Complex w = r * (beta * std::exp(Complex(0, theta)) +
                           (1.0 - beta) * std::exp(Complex(0, -theta)));
    const auto [th, be] = invert_disk_parametrization(w, r);
    CHECK(th == doctest::Approx(theta).epsilon(1e-10));
    CHECK(be == doctest::Approx(beta).epsilon(1e-10));
  }
  // Real-axis targets admit any beta; 1/2 is returned.
  const auto [th0, be0] = invert_disk_parametrization(Complex(0.6, 0.0), 1.0);
  CHECK(th0 == doctest::Approx(std::acos(0.6)));
  CHECK(be0 == doctest::Approx(0.5));
}

TEST_CASE("amplitude override is clamped to admissibility") {
  // Wide annulus: the override clamps to just under the pattern limit 1/2
  // and the loop still fits.
  const SurroundingLoop loop = build_loop(cone_input(0.1, 0.06, 0.8), 0.9);
  const double eta = loop.pattern.params().eta;
  CHECK(eta < 0.5);
  CHECK(eta > 0.49);
  CHECK(loop.pattern.params().valid());
  CHECK(loop.r_tilde * (1.0 + eta) < loop.slice.r_max);
  CHECK(loop.r_tilde * (1.0 - eta) > loop.slice.r_min);

  // Tight annulus: the clamped amplitude cannot fit and the guard fires.
  CHECK_THROWS_AS(build_loop(cone_input(0.1, 0.06, 0.2), 0.9), DegenerateInput);
}

TEST_CASE("rim targets and unnormalized targets are rejected") {
  SurroundingInput input = cone_input(0.25, 0.04, 0.1);
  SUBCASE("target on the hull rim leaves no margin") {
    input.w = input.sigma.L[0] * (1.0 + input.eps);  // in-plane radius = r_max
    CHECK_THROWS_AS(build_loop(input), DegenerateInput);
  }
  SUBCASE("axial mismatch between L(u) and w") {
    input.w += 0.3 * cone_d2f0(0.25);
    CHECK_THROWS_AS(build_loop(input), NotNormalized);
    CHECK_THROWS_AS(disk_radius(input), NotNormalized);
  }
}

TEST_CASE("derivative normalization homotopy") {
  const double x = 0.42, y = 0.03;
  const Jet sigma = cone_formal_solution(x, y);
  const Vec3 axis = cone_d2f0(x);  // unit kernel direction

  SUBCASE("shrinking targets skip the radial leg") {
    const Vec3 w = 0.5 * cone_v1(x) + 0.2 * axis;
    const NormalizeResult nr = normalize_w(sigma, w, 1);
    CHECK(nr.main_leg_begin == 0);
    CHECK((nr.path.front().L[0] - sigma.L[0]).norm() == 0.0);
    CHECK(std::abs((nr.normalized.L[0] - w).dot(axis)) < 1e-12);
    for (const Jet& j : nr.path) {
      CHECK(std::abs(j.L[0].norm() - 1.0) < 1e-12);  // norm-preserving leg
      CHECK((j.L[1] - sigma.L[1]).norm() == 0.0);    // kernel column fixed
    }
  }
  SUBCASE("growing targets get a radial leg first") {
    const Vec3 w = 1.2 * cone_v1(x) + 0.2 * axis;
    const NormalizeResult nr = normalize_w(sigma, w, 1);
    CHECK(nr.main_leg_begin > 0);
    const double grown = w.norm();
    CHECK(nr.path[nr.main_leg_begin].L[0].norm() == doctest::Approx(grown).epsilon(1e-12));
    for (std::size_t i = nr.main_leg_begin; i < nr.path.size(); ++i) {
      CHECK(std::abs(nr.path[i].L[0].norm() - grown) < 1e-12);
    }
    CHECK(std::abs((nr.normalized.L[0] - w).dot(axis)) < 1e-12);
  }
  SUBCASE("column parallel to the kernel direction cannot be normalized") {
    Jet bad = sigma;
    bad.L[0] = 2.0 * axis;
    CHECK_THROWS_AS(normalize_w(bad, 0.5 * cone_v1(x), 1), DegenerateInput);
  }
}

TEST_CASE("base point homotopy connects the loop to L(u) inside the annulus") {
  for (AxisOrder axis : {AxisOrder::TangentFirst, AxisOrder::NormalFirst}) {
    const SurroundingInput input = cone_input(0.77, 0.05, 0.15, axis);
    const SurroundingLoop loop = build_loop(input);
    const std::vector<Vec3> path = base_point_homotopy(loop, input.sigma);
    CHECK((path.front() - loop.eval(0.0)).norm() < 1e-12);
    CHECK((path.back() - input.sigma.L[0]).norm() < 1e-12);
    const Vec3 p_hat = input.sigma.L[1].normalized();
    for (const Vec3& p : path) {
      const Vec3 rel = p - loop.slice.frame.center;
      CHECK(std::abs(rel.dot(p_hat)) < 1e-12);
      CHECK(rel.norm() > loop.slice.r_min);
      CHECK(rel.norm() < loop.slice.r_max);
    }
  }
}

TEST_CASE("a corrupted annulus is detected by the homotopy") {
  const SurroundingInput input = cone_input(0.2, 0.05, 0.15);
  SurroundingLoop loop = build_loop(input);
  // Mutation: inflate r_min beyond every loop radius; the containment scan
  // must notice rather than silently accept the inverted convention.
  loop.slice.r_min = loop.r_tilde * (1.0 + 2.0 * loop.pattern.params().eta);
  CHECK_THROWS_AS(base_point_homotopy(loop, input.sigma), PathEscapesSlice);
}
