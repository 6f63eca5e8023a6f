#include "corrugate/surrounding.hpp"

#include <algorithm>
#include <cmath>

namespace corrugate {
namespace {

// Unit direction of the fixed line P (the kernel image); both frame axes
// are perpendicular to it, so their cross product recovers it up to sign,
// which projections do not care about.
Vec3 axis_direction(const SliceFrame& frame) {
  return frame.e_normal.cross(frame.e_tangent);
}

struct PlaneMargins {
  double rho_L;  // in-plane radius of L(u)
  double rho_w;  // in-plane radius of w
  double d1;     // w's margin to the convex-hull rim
  double d2;     // L(u)'s margin to the annulus boundary
};

PlaneMargins margins(const SurroundingInput& input, const SliceGeometry& geo) {
  const Vec3& Lu = input.sigma.L[input.u_index - 1];
  PlaneMargins m;
  m.rho_L = (Lu - geo.frame.center).norm();
  m.rho_w = (input.w - geo.frame.plane_offset).norm();
  m.d1 = geo.r_max - m.rho_w;
  m.d2 = std::min(std::abs(m.rho_L - geo.r_min), std::abs(geo.r_max - m.rho_L));
  return m;
}

void require_normalized(const SurroundingInput& input, const SliceGeometry& geo) {
  const Vec3& Lu = input.sigma.L[input.u_index - 1];
  const double gap = (geo.frame.center - geo.frame.plane_offset).norm();
  const double scale = std::max({1.0, Lu.norm(), input.w.norm()});
  if (!(gap <= 1e-10 * scale)) {
    throw NotNormalized("surrounding: proj_P L(u) and proj_P w disagree; "
                        "apply normalize_w first");
  }
}

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

Vec3 SurroundingLoop::eval(double t) const {
  const Complex z = pattern.value(t).z;
  return z.real() * e1 + z.imag() * e2 + e3;
}

Vec3 SurroundingLoop::average() const {
  const Complex z = pattern.average();
  return z.real() * e1 + z.imag() * e2 + e3;
}

Vec3 SurroundingLoop::primitive(double t) const {
  const Complex C = pattern.primitive(t);
  return C.real() * e1 + C.imag() * e2;
}

double disk_radius(const SurroundingInput& input) {
  return disk_radius(input, slice_geometry(input.sigma, input.g, input.eps,
                                           input.w, input.u_index));
}

double disk_radius(const SurroundingInput& input, const SliceGeometry& geo) {
  require_normalized(input, geo);
  const PlaneMargins m = margins(input, geo);
  return std::max(m.rho_L, m.rho_w + m.d1 / 3.0);
}

double eta_selection(const SurroundingInput& input, double r_tilde) {
  return eta_selection(input, slice_geometry(input.sigma, input.g, input.eps,
                                             input.w, input.u_index), r_tilde);
}

double eta_selection(const SurroundingInput& input, const SliceGeometry& geo,
                     double r_tilde) {
  const PlaneMargins m = margins(input, geo);
  const double margin = std::min(m.d1, m.d2);
  if (!(margin > 0.0) || !(r_tilde > 0.0)) {
    throw DegenerateInput("eta_selection: no positive margin for a loop amplitude");
  }
  return std::min(margin / (3.0 * r_tilde), 0.5 * (1.0 - 1e-9));
}

std::pair<double, double> invert_disk_parametrization(Complex w_plane, double r_tilde) {
  const double theta = std::acos(clamp(w_plane.real() / r_tilde, -1.0, 1.0));
  const double s = std::sin(theta);
  const double beta =
      s < 1e-12 ? 0.5 : clamp(0.5 * (1.0 + w_plane.imag() / (r_tilde * s)), 0.0, 1.0);
  return {theta, beta};
}

SurroundingLoop build_loop(const SurroundingInput& input,
                           std::optional<double> eta_override) {
  const SliceGeometry geo =
      slice_geometry(input.sigma, input.g, input.eps, input.w, input.u_index);
  const double r_tilde = disk_radius(input, geo);

  const Vec3 u_re = input.axis == AxisOrder::NormalFirst ? geo.frame.e_normal
                                                         : geo.frame.e_tangent;
  const Vec3 u_im = input.axis == AxisOrder::NormalFirst ? geo.frame.e_tangent
                                                         : geo.frame.e_normal;
  const Vec3 w_rel = input.w - geo.frame.center;
  const auto [theta, beta] =
      invert_disk_parametrization(Complex(w_rel.dot(u_re), w_rel.dot(u_im)), r_tilde);

  double eta = eta_override ? *eta_override : eta_selection(input, geo, r_tilde);
  // The pattern needs eta <= beta <= 1-eta; shrinking eta only tightens the
  // loop around its circle and never moves the average.
  eta = std::min({eta, beta, 1.0 - beta, 0.5 * (1.0 - 1e-9)});
  if (!(eta > 0.0)) {
    throw DegenerateInput("build_loop: average sits on the disk rim, "
                          "no admissible loop amplitude");
  }
  if (!(r_tilde * (1.0 + eta) < geo.r_max && r_tilde * (1.0 - eta) > geo.r_min)) {
    throw DegenerateInput("build_loop: loop annulus does not fit inside the slice annulus");
  }

  return SurroundingLoop{r_tilde * u_re,
                         r_tilde * u_im,
                         geo.frame.center,
                         PatternShape({eta, theta, beta}),
                         r_tilde,
                         geo,
                         input.axis,
                         input.u_index};
}

NormalizeResult normalize_w(const Jet& sigma, const Vec3& w, int u_index,
                            int samples_per_leg) {
  if (u_index != 1 && u_index != 2) {
    throw InvalidParams("normalize_w: u_index must be 1 or 2");
  }
  if (samples_per_leg < 1) {
    throw InvalidParams("normalize_w: samples_per_leg must be >= 1");
  }
  const Vec3& Lk = sigma.L[2 - u_index];
  const Vec3& v0 = sigma.L[u_index - 1];
  if (!(Lk.norm() > 1e-12 * std::max(1.0, v0.norm()))) {
    throw DegeneratePlane("normalize_w: jet vanishes on the kernel direction");
  }
  const Vec3 p_hat = Lk.normalized();
  const Vec3 v0_perp = v0 - v0.dot(p_hat) * p_hat;
  if (!(v0_perp.norm() > 1e-12 * std::max(1.0, v0.norm()))) {
    throw DegenerateInput("normalize_w: L(u) lies on the fixed line, frame undetermined");
  }

  const auto with_column = [&](const Vec3& v) {
    Jet out = sigma;
    out.L[u_index - 1] = v;
    return out;
  };

  NormalizeResult result;
  result.path.reserve(2 * samples_per_leg + 2);
  result.path.push_back(sigma);

  // Radial leg: grow ‖L(u)‖ to ‖w‖ without moving its direction components,
  // so the main leg's constant-norm sphere is large enough to reach w's
  // plane offset.
  Vec3 V0 = v0;
  if (v0.norm() < w.norm()) {
    const double s0 = v0.dot(p_hat);
    const double target = std::sqrt(std::max(w.squaredNorm() - s0 * s0, 0.0));
    const double stretch = target / v0_perp.norm();
    for (int i = 1; i <= samples_per_leg; ++i) {
      const double t = static_cast<double>(i) / samples_per_leg;
      const double lam = (1.0 - t) + t * stretch;
      result.path.push_back(with_column(s0 * p_hat + lam * v0_perp));
    }
    V0 = result.path.back().L[u_index - 1];
  }
  result.main_leg_begin = result.path.size() - 1;

  // Main leg: slide the P-component linearly to w's and rescale the
  // perpendicular part so the norm stays exactly ‖V0‖ throughout.
  const double s_begin = V0.dot(p_hat);
  const double s_end = w.dot(p_hat);
  const Vec3 V0_perp = V0 - s_begin * p_hat;
  const double perp_norm = V0_perp.norm();
  if (!(perp_norm > 0.0)) {
    throw DegenerateInput("normalize_w: degenerate perpendicular component");
  }
  const double norm_sq = V0.squaredNorm();
  for (int i = 1; i <= samples_per_leg; ++i) {
    const double t = static_cast<double>(i) / samples_per_leg;
    const double s = t * s_end + (1.0 - t) * s_begin;
    const double phi = std::sqrt(std::max(norm_sq - s * s, 0.0)) / perp_norm;
    result.path.push_back(with_column(s * p_hat + phi * V0_perp));
  }
  result.normalized = result.path.back();
  return result;
}

std::vector<Vec3> base_point_homotopy(const SurroundingLoop& loop, const Jet& sigma,
                                      int samples_per_leg) {
  if (samples_per_leg < 1) {
    throw InvalidParams("base_point_homotopy: samples_per_leg must be >= 1");
  }
  const Vec3& Lu = sigma.L[loop.u_index - 1];
  const Vec3 p_hat = axis_direction(loop.slice.frame);
  const double eta = loop.pattern.params().eta;
  const double offset = eta * std::cos(loop.pattern.params().theta);

  std::vector<Vec3> path;
  path.reserve(2 * samples_per_leg + 2);
  path.push_back(loop.eval(0.0));

  // Circle leg: ride the loop circle from γ(0) to the e2 axis. Only needed
  // when the target L(u) lies along e2's direction (NormalFirst); under
  // TangentFirst γ(0) already sits on L(u)'s ray and the arc would force
  // the straight leg to cut through the inner disk.
  if (loop.axis == AxisOrder::NormalFirst) {
    for (int i = 1; i <= samples_per_leg; ++i) {
      const double s = 0.5 * kPi * static_cast<double>(i) / samples_per_leg;
      path.push_back((std::cos(s) + offset) * loop.e1 + std::sin(s) * loop.e2 + loop.e3);
    }
  }

  // Straight leg to L(u).
  const Vec3 q = path.back();
  for (int i = 1; i < samples_per_leg; ++i) {
    const double t = static_cast<double>(i) / samples_per_leg;
    path.push_back(q + t * (Lu - q));
  }
  path.push_back(Lu);

  for (const Vec3& v : path) {
    const double rho = (v - v.dot(p_hat) * p_hat).norm();
    if (!(rho > loop.slice.r_min && rho < loop.slice.r_max)) {
      throw PathEscapesSlice("base_point_homotopy: sample left the slice annulus");
    }
  }
  return path;
}

}  // namespace corrugate
