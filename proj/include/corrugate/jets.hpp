#pragma once

// 1-jets over the cylinder, pullback metrics, metric-defect norms, and the
// geometry of constraint slices: fixing a jet on the kernel of a coordinate
// projection, the admissible replacements for the remaining derivative
// column form a circle (exact isometry) or an annulus/disk (ε-isometry)
// inside a plane of the target. This module computes that plane, its frame,
// and the three radii, plus the subsolution membership test.

#include "corrugate/types.hpp"

#include <array>

namespace corrugate {

// Domain metric g paired with the (implicit) Euclidean metric of the target.
struct MetricPair {
  Mat2 g = Mat2::Identity();

  static MetricPair euclidean() { return {}; }
  bool positive_definite(double tol = 0.0) const;
};

// 1-jet: domain point, image point, and a candidate differential whose
// columns are the images of the coordinate directions.
struct Jet {
  DomainPoint x;
  Vec3 y = Vec3::Zero();
  std::array<Vec3, 2> L = {Vec3::Zero(), Vec3::Zero()};

  Vec3 apply(const Vec2& v) const { return v.x() * L[0] + v.y() * L[1]; }
  Eigen::Matrix<double, 3, 2> matrix() const;
};

// Norm used to measure the symmetric defect matrix g - L*h.
enum class DefectNorm {
  MaxEntry,          // max |entry| in the standard domain coordinates
  OperatorNormWrtG,  // largest |eigenvalue| of g^{-1}(g - L*h)
};

// Gram matrix of the columns of L under the Euclidean target metric.
Mat2 pullback_metric(const std::array<Vec3, 2>& L);

// ||g - pullback_metric(L)|| in the chosen norm; zero iff L is g-isometric.
double metric_defect(const Mat2& g, const std::array<Vec3, 2>& L,
                     DefectNorm norm = DefectNorm::MaxEntry);

// Orthonormal data of the slice plane through w:
//   the fixed kernel column spans the line P; the plane is P^perp shifted
//   to pass through w. center is the P-component of L(u) (the axis point
//   the slice circles around), plane_offset the P-component of w.
struct SliceFrame {
  Vec3 center = Vec3::Zero();        // proj_P L(u)
  Vec3 e_normal = Vec3::Zero();      // unit normal of the image plane of L
  Vec3 e_tangent = Vec3::Zero();     // unit direction of L(u) - center
  Vec3 plane_offset = Vec3::Zero();  // proj_P w
};

// Frame plus radii: r_exact is the circle of exact g-isometric replacements
// in the plane through w; (r_min, r_max) bound the ε-relaxed annulus.
struct SliceGeometry {
  SliceFrame frame;
  double r_min = 0.0;
  double r_max = 0.0;
  double r_exact = 0.0;
};

// Slice of the ε-isometry constraint at σ for replacing column u_index
// (1-based), cut by the plane through w. Throws DegeneratePlane when the
// frame is not determined (kernel column vanishing, collinear columns, or
// L(u) on the axis), EmptySlice when r_max² ≤ 0.
SliceGeometry slice_geometry(const Jet& sigma, const Mat2& g, double eps,
                             const Vec3& w, int u_index);

// Radius of the exact-isometry circle determined by the domain data alone:
// sqrt(‖u‖_g² − ‖proj₀ u‖_g²) with proj₀ the g-orthogonal projection onto
// the kernel direction. Throws InvalidParams if u is parallel to the kernel.
double subsolution_radius(const Mat2& g, const Vec2& u, const Vec2& ker_direction);

// True iff f0_derivative_u lies in the open convex hull of the ε-slice:
// its distance to the slice axis, measured inside its own plane, is < r_max.
bool is_subsolution(const Jet& sigma, const Vec3& f0_derivative_u, const Mat2& g,
                    double eps, int u_index);

}  // namespace corrugate
