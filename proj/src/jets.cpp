#include "corrugate/jets.hpp"

#include <algorithm>
#include <cmath>

namespace corrugate {
namespace {

constexpr double kRankTol = 1e-10;  // relative to the largest singular value

// Eigenvalues of a 2x2 matrix with real spectrum, via trace/determinant.
std::pair<double, double> eigenvalues_2x2(const Mat2& m) {
  const double tr = m(0, 0) + m(1, 1);
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

double largest_singular_value(const std::array<Vec3, 2>& L) {
  const auto [lo, hi] = eigenvalues_2x2(pullback_metric(L));
  (void)lo;
  return std::sqrt(std::max(hi, 0.0));
}

}  // namespace

bool MetricPair::positive_definite(double tol) const {
  if (std::abs(g(0, 1) - g(1, 0)) > 1e-14 * std::max(1.0, g.cwiseAbs().maxCoeff())) {
    return false;
  }
  const auto [lo, hi] = eigenvalues_2x2(g);
  (void)hi;
  return lo > tol;
}

Eigen::Matrix<double, 3, 2> Jet::matrix() const {
  Eigen::Matrix<double, 3, 2> m;
  m.col(0) = L[0];
  m.col(1) = L[1];
  return m;
}

Mat2 pullback_metric(const std::array<Vec3, 2>& L) {
  Mat2 G;
  G(0, 0) = L[0].dot(L[0]);
  G(0, 1) = G(1, 0) = L[0].dot(L[1]);
  G(1, 1) = L[1].dot(L[1]);
  return G;
}

double metric_defect(const Mat2& g, const std::array<Vec3, 2>& L, DefectNorm norm) {
  const Mat2 D = g - pullback_metric(L);
  switch (norm) {
    case DefectNorm::MaxEntry:
      return D.cwiseAbs().maxCoeff();
    case DefectNorm::OperatorNormWrtG: {
      // g^{-1}D is similar to a symmetric matrix, so its spectrum is real.
      const auto [lo, hi] = eigenvalues_2x2(Mat2(g.inverse() * D));
      return std::max(std::abs(lo), std::abs(hi));
    }
  }
  return 0.0;
}

SliceGeometry slice_geometry(const Jet& sigma, const Mat2& g, double eps,
                             const Vec3& w, int u_index) {
  if (u_index != 1 && u_index != 2) {
    throw InvalidParams("slice_geometry: u_index must be 1 or 2");
  }
  if (!(eps > 0.0)) {
    throw InvalidParams("slice_geometry: eps must be positive");
  }
  const Vec3& Lu = sigma.L[u_index - 1];
  const Vec3& Lk = sigma.L[2 - u_index];
  const double scale = largest_singular_value(sigma.L);
  if (!(Lk.norm() > kRankTol * scale)) {
    throw DegeneratePlane("slice_geometry: jet vanishes on the kernel direction");
  }
  const Vec3 cross = sigma.L[0].cross(sigma.L[1]);
  if (!(cross.norm() > kRankTol * scale * scale)) {
    throw DegeneratePlane("slice_geometry: jet columns are collinear");
  }

  SliceFrame frame;
  const Vec3 p_hat = Lk.normalized();
  frame.center = Lu.dot(p_hat) * p_hat;
  frame.plane_offset = w.dot(p_hat) * p_hat;
  const Vec3 in_plane_u = Lu - frame.center;
  if (!(in_plane_u.norm() > kRankTol * scale)) {
    throw DegeneratePlane("slice_geometry: L(u) lies on the slice axis");
  }
  frame.e_normal = cross.normalized();
  frame.e_tangent = in_plane_u.normalized();

  const double u_norm_g = std::sqrt(g(u_index - 1, u_index - 1));
  const double d2 = frame.plane_offset.squaredNorm();
  const double outer = u_norm_g + eps;
  const double inner = std::max(u_norm_g - eps, 0.0);  // disk once eps >= ‖u‖_g

  SliceGeometry geo;
  geo.frame = frame;
  const double r_max_sq = outer * outer - d2;
  if (!(r_max_sq > 0.0)) {
    throw EmptySlice("slice_geometry: plane through w misses the ε-shell");
  }
  geo.r_max = std::sqrt(r_max_sq);
  geo.r_min = std::sqrt(std::max(inner * inner - d2, 0.0));
  geo.r_exact = std::sqrt(std::max(u_norm_g * u_norm_g - d2, 0.0));
  return geo;
}

double subsolution_radius(const Mat2& g, const Vec2& u, const Vec2& ker_direction) {
  const double area = u.x() * ker_direction.y() - u.y() * ker_direction.x();
  if (!(std::abs(area) > 1e-12 * u.norm() * ker_direction.norm())) {
    throw InvalidParams("subsolution_radius: u must be independent of the kernel direction");
  }
  const double kgk = ker_direction.dot(g * ker_direction);
  if (!(kgk > 0.0)) {
    throw InvalidParams("subsolution_radius: metric not positive on the kernel direction");
  }
  const double ugk = u.dot(g * ker_direction);
  const double r_sq = u.dot(g * u) - ugk * ugk / kgk;
  return std::sqrt(std::max(r_sq, 0.0));
}

bool is_subsolution(const Jet& sigma, const Vec3& f0_derivative_u, const Mat2& g,
                    double eps, int u_index) {
  const SliceGeometry geo = slice_geometry(sigma, g, eps, f0_derivative_u, u_index);
  const double rho = (f0_derivative_u - geo.frame.plane_offset).norm();
  return rho < geo.r_max;
}

}  // namespace corrugate
