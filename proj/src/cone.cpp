#include "corrugate/cone.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

namespace corrugate {
namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kYStep = 1e-6;  // stencil for the y-derivative of the primitive

// Trigonometric frame shared by every row of a column x = i/n_x.
struct Azimuth {
  double c, s;  // cos 2πx, sin 2πx
};

Vec3 v1_of(const Azimuth& a) { return {-a.s, a.c, 0.0}; }
Vec3 normal_of(const Azimuth& a) {
  return {kInvSqrt2 * a.c, kInvSqrt2 * a.s, -kInvSqrt2};
}
Vec3 d2f0_of(const Azimuth& a) {
  return {kInvSqrt2 * a.c, kInvSqrt2 * a.s, kInvSqrt2};
}
Vec3 d1v1_of(const Azimuth& a) { return {-kTwoPi * a.c, -kTwoPi * a.s, 0.0}; }
Vec3 d1n_of(const Azimuth& a) { return kSqrt2Pi * v1_of(a); }

// Per-row pattern data: the phase set {frac(N i / n_x)} has one value per
// residue of i·N mod n_x, all multiples of gcd(N, n_x); cache the pattern
// primitive, its y-derivative, and the loop value at each of them.
struct PhaseEntry {
  Complex C;    // periodic primitive at this phase
  Complex dyC;  // ∂_y of the primitive (central difference of exact tables)
  Complex z;    // loop value: e^{i g} + η cos θ
};

struct Row {
  double y;
  std::vector<PhaseEntry> phases;
  int stride;  // gcd(N, n_x): phase residue r maps to slot r / stride

  Row(const ConeConfig& cfg, double y_row) : y(y_row) {
    const int n_x = cfg.resolved_nx();
    const PatternShape mid(cone_pattern_params(y, cfg.eta));
    const PatternShape up(cone_pattern_params(y + kYStep, cfg.eta));
    const PatternShape down(cone_pattern_params(y - kYStep, cfg.eta));
    stride = std::gcd(cfg.N, n_x);
    const int count = n_x / stride;
    phases.reserve(count);
    for (int s = 0; s < count; ++s) {
      const double t = static_cast<double>(s) * stride / n_x;
      PhaseEntry e;
      e.C = mid.primitive(t);
      e.dyC = (up.primitive(t) - down.primitive(t)) / (2.0 * kYStep);
      e.z = mid.value(t).z;
      phases.push_back(e);
    }
  }

  const PhaseEntry& at_column(int i, int N, int n_x) const {
    const long long r = (static_cast<long long>(i) * N) % n_x;
    return phases[static_cast<std::size_t>(r / stride)];
  }
};

struct RowStats {
  double max_e11 = 0.0;
  double max_e12 = 0.0;
  double max_e22 = 0.0;
  double c0 = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
};

// Single-point closed-form evaluation, used by the finite-difference
// cross-check (grid evaluation goes through Row instead).
Vec3 f1_point(const ConeConfig& cfg, double x, double y) {
  const PatternShape shape(cone_pattern_params(y, cfg.eta));
  const Complex C = shape.primitive(frac(static_cast<double>(cfg.N) * x));
  return cone_map(x, y) +
         (C.real() * cone_v1(x) + C.imag() * cone_normal(x)) / cfg.N;
}

void crosscheck_derivatives(const ConeConfig& cfg, const MapSample& sample) {
  const SurfaceGrid& grid = sample.grid;
  const double h = kYStep;
  // Derivative kinks make a finite difference that straddles a corrugation
  // corner diverge from the one-sided closed form at O(h · N · slope), so
  // the tolerance is loose; genuine frame or indexing bugs exceed it by
  // orders of magnitude.
  const double tol = 1e-2;
  const std::size_t step = std::max<std::size_t>(grid.node_count() / 100, 1);
  for (std::size_t k = 0; k < grid.node_count(); k += step) {
    const int i = static_cast<int>(k % grid.n_x);
    const int j = static_cast<int>(k / grid.n_x);
    const double x = grid.x(i);
    const double y = grid.y(j);
    const Vec3 fd1 = (f1_point(cfg, x + h, y) - f1_point(cfg, x - h, y)) / (2.0 * h);
    if ((fd1 - sample.d1[k]).norm() > tol) {
      throw Error("cone: closed-form x-derivative disagrees with finite difference");
    }
    const Vec3 fd2 =
        (f1_point(cfg, x, y + 2.0 * h) - f1_point(cfg, x, y - 2.0 * h)) / (4.0 * h);
    if ((fd2 - sample.d2[k]).norm() > tol) {
      throw Error("cone: closed-form y-derivative disagrees with finite difference");
    }
  }
}

}  // namespace

Vec3 cone_map(double x, double y) {
  const double a = kTwoPi * x;
  return {kInvSqrt2 * y * std::cos(a), kInvSqrt2 * y * std::sin(a), kInvSqrt2 * y};
}

Vec3 cone_v1(double x) {
  const double a = kTwoPi * x;
  return {-std::sin(a), std::cos(a), 0.0};
}

Vec3 cone_d2f0(double x) {
  const double a = kTwoPi * x;
  return {kInvSqrt2 * std::cos(a), kInvSqrt2 * std::sin(a), kInvSqrt2};
}

Vec3 cone_normal(double x) {
  const double a = kTwoPi * x;
  return {kInvSqrt2 * std::cos(a), kInvSqrt2 * std::sin(a), -kInvSqrt2};
}

Jet cone_formal_solution(double x, double y) {
  Jet jet;
  jet.x = DomainPoint{x, y}.wrapped();
  jet.y = cone_map(x, y);
  jet.L = {cone_v1(x), cone_d2f0(x)};
  return jet;
}

PatternParams cone_pattern_params(double y, double eta) {
  if (!(eta > 0.0 && eta < 0.5)) {
    throw InvalidParams("cone: eta must lie in (0, 1/2)");
  }
  const double c = kSqrt2Pi * y;
  if (!(std::abs(c) < 1.0)) {
    throw OutOfSubsolution("cone: |y| must stay below 1/(sqrt(2) pi)");
  }
  return {eta, std::acos(c), 0.5};
}

Vec3 cone_loop(double x, double y, double eta, double t) {
  const PatternShape shape(cone_pattern_params(y, eta));
  const Complex z = shape.value(t).z;
  return z.real() * cone_v1(x) + z.imag() * cone_normal(x);
}

LoopFamily cone_loop_family(double eta) {
  return LoopFamily{[eta](const DomainPoint& x, double t) {
    return cone_loop(x.x1, x.x2, eta, t);
  }};
}

SubsolutionSection cone_subsolution_section(double eta, double eps) {
  SubsolutionSection section;
  section.jet = [](const DomainPoint& x) { return cone_formal_solution(x.x1, x.x2); };
  section.base = [](const DomainPoint& x) { return cone_map(x.x1, x.x2); };
  section.derivative_u = [](const DomainPoint& x) -> Vec3 {
    return kSqrt2Pi * x.x2 * cone_v1(x.x1);
  };
  section.metric = [](const DomainPoint&) -> Mat2 { return Mat2::Identity(); };
  section.eps = eps;
  section.axis = AxisOrder::TangentFirst;
  section.eta_override = eta;
  return section;
}

void ConeConfig::validate() const {
  if (N < 1) throw InvalidParams("cone: N must be a positive integer");
  if (!(eta > 0.0 && eta < 0.5)) throw InvalidParams("cone: eta must lie in (0, 1/2)");
  if (!(eps > eta)) throw InvalidParams("cone: eps must exceed eta");
  if (n_y < 1) throw InvalidParams("cone: n_y must be >= 1");
  if (!(y_min < y_max)) throw InvalidParams("cone: y_min must be below y_max");
  if (threads < 0) throw InvalidParams("cone: threads must be >= 0");
  if (resolved_nx() < 8 * N) {
    throw InvalidParams("cone: n_x must be at least 8N to resolve the corrugations");
  }
  // Margin leaves room for the y-derivative stencil at the boundary rows.
  if (!(std::max(std::abs(y_min), std::abs(y_max)) < kSubsolutionBound - 1e-5)) {
    throw OutOfSubsolution("cone: y range must stay strictly inside |y| < 1/(sqrt(2) pi)");
  }
}

std::pair<MapSample, DefectReport> build_cone_surface(const ConeConfig& cfg,
                                                      bool keep_derivatives) {
  cfg.validate();
  const int n_x = cfg.resolved_nx();
  const int rows = cfg.n_y + 1;

  MapSample sample;
  sample.grid = SurfaceGrid{n_x, cfg.n_y, cfg.y_min, cfg.y_max};
  sample.f1.resize(sample.grid.node_count());
  if (keep_derivatives) {
    sample.d1.resize(sample.grid.node_count());
    sample.d2.resize(sample.grid.node_count());
  }

  std::vector<Azimuth> az(n_x);
  for (int i = 0; i < n_x; ++i) {
    const double a = kTwoPi * sample.grid.x(i);
    az[i] = {std::cos(a), std::sin(a)};
  }

  std::vector<RowStats> stats(rows);
  const auto run_rows = [&](int j_begin, int j_end) {
    for (int j = j_begin; j < j_end; ++j) {
      const double y = sample.grid.y(j);
      const Row row(cfg, y);
      RowStats rs;
      for (int i = 0; i < n_x; ++i) {
        const PhaseEntry& ph = row.at_column(i, cfg.N, n_x);
        const Vec3 v1 = v1_of(az[i]);
        const Vec3 nrm = normal_of(az[i]);
        const Vec3 base = d2f0_of(az[i]);
        const Vec3 f0 = y * base;
        const Vec3 wiggle = (ph.C.real() * v1 + ph.C.imag() * nrm) / cfg.N;
        const Vec3 f1 = f0 + wiggle;
        const Vec3 d1 = (ph.z.real() * v1 + ph.z.imag() * nrm) +
                        (ph.C.real() * d1v1_of(az[i]) + ph.C.imag() * d1n_of(az[i])) /
                            cfg.N;
        const Vec3 d2 = base + (ph.dyC.real() * v1 + ph.dyC.imag() * nrm) / cfg.N;

        const std::size_t k = sample.grid.index(i, j);
        sample.f1[k] = f1;
        if (keep_derivatives) {
          sample.d1[k] = d1;
          sample.d2[k] = d2;
        }
        rs.max_e11 = std::max(rs.max_e11, std::abs(1.0 - d1.squaredNorm()));
        rs.max_e12 = std::max(rs.max_e12, std::abs(d1.dot(d2)));
        rs.max_e22 = std::max(rs.max_e22, std::abs(1.0 - d2.squaredNorm()));
        rs.c0 = std::max(rs.c0, wiggle.norm());
        rs.min_margin = std::min(rs.min_margin, d1.cross(d2).norm());
      }
      stats[j] = rs;
    }
  };

  int threads = cfg.threads > 0
                    ? cfg.threads
                    : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, rows);
  if (threads <= 1) {
    run_rows(0, rows);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const int chunk = (rows + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int j_begin = t * chunk;
      const int j_end = std::min(rows, j_begin + chunk);
      pool.emplace_back([&, t, j_begin, j_end] {
        try {
          run_rows(j_begin, j_end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  DefectReport report;
  report.N = cfg.N;
  report.eta = cfg.eta;
  report.eps = cfg.eps;
  report.grid_nx = n_x;
  report.grid_ny = cfg.n_y;
  report.min_immersion_margin = std::numeric_limits<double>::infinity();
  for (const RowStats& rs : stats) {
    report.max_e11 = std::max(report.max_e11, rs.max_e11);
    report.max_e12 = std::max(report.max_e12, rs.max_e12);
    report.max_e22 = std::max(report.max_e22, rs.max_e22);
    report.c0_distance = std::max(report.c0_distance, rs.c0);
    report.min_immersion_margin = std::min(report.min_immersion_margin, rs.min_margin);
  }

  if (cfg.fd_crosscheck) {
    if (!keep_derivatives) {
      throw InvalidParams("cone: fd_crosscheck requires keep_derivatives");
    }
    crosscheck_derivatives(cfg, sample);
  }
  return {std::move(sample), report};
}

}  // namespace corrugate
