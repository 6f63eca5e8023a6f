#include "corrugate/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "corrugate/cone.hpp"
#include "corrugate/corrugation.hpp"
#include "corrugate/surrounding.hpp"
#include "json.hpp"

namespace corrugate {
namespace {

// Platform-independent uniform doubles (the distribution classes in
// <random> are implementation-defined bit-for-bit).
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double range(double a, double b) { return a + (b - a) * unit(); }
  int pick(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
};

// One randomized slice/loop problem. raw is the jet before derivative
// normalization (equal to sigma except in the offset mode).
struct Instance {
  Jet raw;
  Jet sigma;
  Vec3 w = Vec3::Zero();
  double eps = 0.1;
  int u_index = 1;
  AxisOrder axis = AxisOrder::NormalFirst;
  const char* mode = "";
};

SurroundingInput input_of(const Instance& inst) {
  return SurroundingInput{inst.sigma, inst.w, Mat2::Identity(), inst.eps,
                          inst.u_index, inst.axis};
}

Vec3 kernel_axis(const Instance& inst) {
  const Vec3& lk = inst.sigma.L[inst.u_index == 1 ? 1 : 0];
  return lk.normalized();
}

// Mode 1: the data of the cone application itself.
Instance sample_cone_data(Rng& rng) {
  Instance inst;
  const double x = rng.unit();
  const double y = rng.range(-0.095, 0.095);
  inst.raw = inst.sigma = cone_formal_solution(x, y);
  inst.w = kSqrt2Pi * y * cone_v1(x);  // = d/dx of the cone map
  inst.eps = rng.range(0.05, 0.3);
  inst.u_index = 1;
  inst.axis = AxisOrder::TangentFirst;
  inst.mode = "cone";
  return inst;
}

// Mode 2: target sampled area-uniformly in the slice disk (already
// normalized because the plane projection of the target is kept at the
// axis point).
Instance sample_disk(Rng& rng) {
  Instance inst;
  const double x = rng.unit();
  const double y = rng.range(-0.095, 0.095);
  inst.raw = inst.sigma = cone_formal_solution(x, y);
  inst.eps = rng.range(0.05, 0.3);
  inst.u_index = 1 + rng.pick(2);
  inst.axis = rng.pick(2) == 0 ? AxisOrder::NormalFirst : AxisOrder::TangentFirst;
  inst.mode = "disk";

  const Vec3& lu = inst.sigma.L[inst.u_index - 1];
  const SliceGeometry geo =
      slice_geometry(inst.sigma, Mat2::Identity(), inst.eps, lu, inst.u_index);
  const double r = 0.9 * geo.r_max * std::sqrt(rng.unit());
  const double phi = rng.range(0.0, kTwoPi);
  inst.w = geo.frame.center +
           r * (std::cos(phi) * geo.frame.e_tangent + std::sin(phi) * geo.frame.e_normal);
  return inst;
}

// Mode 3: mode 2 plus an axial offset, repaired by normalize_w.
Instance sample_disk_offset(Rng& rng) {
  Instance inst = sample_disk(rng);
  inst.mode = "offset";
  const double s = rng.range(-0.8 * inst.eps, 0.8 * inst.eps);
  inst.w += s * kernel_axis(inst);
  inst.sigma = normalize_w(inst.raw, inst.w, inst.u_index).normalized;
  return inst;
}

std::vector<Instance> sample_instances(Rng& rng, int total) {
  std::vector<Instance> out;
  out.reserve(static_cast<std::size_t>(total));
  const int per_mode = std::max(1, total / 3);
  for (int i = 0; i < per_mode; ++i) out.push_back(sample_cone_data(rng));
  for (int i = 0; i < per_mode; ++i) out.push_back(sample_disk(rng));
  for (int i = 0; i < per_mode; ++i) out.push_back(sample_disk_offset(rng));
  return out;
}

// Runs `body` and converts any exception into a failing result.
template <typename Body>
CheckResult run_check(const std::string& name, Body&& body) {
  CheckResult res;
  res.name = name;
  try {
    body(res);
  } catch (const std::exception& e) {
    res.passed = false;
    res.detail = std::string("exception: ") + e.what();
  }
  return res;
}

CheckResult check_loop_average(const std::vector<Instance>& instances) {
  return run_check("loop_average_matches_target", [&](CheckResult& res) {
    double worst = 0.0;
    for (const Instance& inst : instances) {
      const SurroundingLoop loop = build_loop(input_of(inst));
      const double scale = std::max(1.0, inst.w.norm());
      worst = std::max(worst, (loop.average() - inst.w).norm() / scale);
    }
    res.instances = static_cast<int>(instances.size());
    res.worst = worst;
    res.passed = worst <= 1e-9;
    if (!res.passed) res.detail = "relative average error above 1e-9";
  });
}

CheckResult check_loop_periodicity(const std::vector<Instance>& instances) {
  return run_check("loop_periodicity", [&](CheckResult& res) {
    double worst = 0.0;
    for (const Instance& inst : instances) {
      const SurroundingLoop loop = build_loop(input_of(inst));
      const double scale = std::max(1.0, loop.r_tilde);
      worst = std::max(worst, (loop.eval(1.0) - loop.eval(0.0)).norm() / scale);
      worst = std::max(worst, loop.primitive(1.0).norm() / scale);
    }
    res.instances = static_cast<int>(instances.size());
    res.worst = worst;
    res.passed = worst <= 1e-12;
    if (!res.passed) res.detail = "period-1 closure / mean-free primitive violated";
  });
}

CheckResult check_loop_in_slice(const std::vector<Instance>& instances) {
  return run_check("loop_stays_in_slice", [&](CheckResult& res) {
    double worst_margin = std::numeric_limits<double>::infinity();
    for (const Instance& inst : instances) {
      const SurroundingLoop loop = build_loop(input_of(inst));
      const Vec3 axis = kernel_axis(inst);
      std::vector<double> ts;
      for (const AngularSegment& seg : loop.pattern.breakpoints().segments) {
        ts.push_back(seg.t0);
        ts.push_back(seg.t1);
      }
      for (int i = 0; i <= 512; ++i) ts.push_back(i / 512.0);
      for (double t : ts) {
        const Vec3 rel = loop.eval(t) - loop.slice.frame.center;
        if (std::abs(rel.dot(axis)) > 1e-9 * std::max(1.0, loop.r_tilde)) {
          res.detail = "loop leaves its plane";
          res.passed = false;
          res.instances = static_cast<int>(instances.size());
          return;
        }
        const double rho = rel.norm();
        worst_margin = std::min(
            worst_margin, std::min(rho - loop.slice.r_min, loop.slice.r_max - rho));
      }
    }
    res.instances = static_cast<int>(instances.size());
    res.worst = worst_margin;
    res.passed = worst_margin > 0.0;
    if (!res.passed) res.detail = "loop touches the slice annulus boundary";
  });
}

CheckResult check_homotopy(const std::vector<Instance>& instances, int samples) {
  return run_check("base_point_homotopy_in_slice", [&](CheckResult& res) {
    double worst = 0.0;
    for (const Instance& inst : instances) {
      const SurroundingLoop loop = build_loop(input_of(inst));
      // Throws PathEscapesSlice if any sample leaves the annulus.
      const std::vector<Vec3> path = base_point_homotopy(loop, inst.sigma, samples);
      const Vec3& lu = inst.sigma.L[inst.u_index - 1];
      const double scale = std::max(1.0, lu.norm());
      worst = std::max(worst, (path.front() - loop.eval(0.0)).norm() / scale);
      worst = std::max(worst, (path.back() - lu).norm() / scale);
    }
    res.instances = static_cast<int>(instances.size());
    res.worst = worst;
    res.passed = worst <= 1e-12;
    if (!res.passed) res.detail = "homotopy endpoints drift from loop base / L(u)";
  });
}

CheckResult check_normalization(const std::vector<Instance>& instances) {
  return run_check("derivative_normalization", [&](CheckResult& res) {
    double worst = 0.0;
    int covered = 0;
    for (const Instance& inst : instances) {
      if (std::string(inst.mode) != "offset") continue;
      ++covered;
      const NormalizeResult nr = normalize_w(inst.raw, inst.w, inst.u_index);
      const int u = inst.u_index - 1;
      const int k = inst.u_index == 1 ? 1 : 0;
      const Vec3 axis = inst.raw.L[k].normalized();
      const double scale = std::max(1.0, std::max(inst.raw.L[u].norm(), inst.w.norm()));
      // Path starts at the input jet verbatim.
      worst = std::max(worst, (nr.path.front().L[u] - inst.raw.L[u]).norm() / scale);
      // The kernel column never moves.
      for (const Jet& j : nr.path) {
        worst = std::max(worst, (j.L[k] - inst.raw.L[k]).norm() / scale);
      }
      // The main leg preserves the norm of the moving column.
      const double kept = nr.path[nr.main_leg_begin].L[u].norm();
      for (std::size_t i = nr.main_leg_begin; i < nr.path.size(); ++i) {
        worst = std::max(worst, std::abs(nr.path[i].L[u].norm() - kept) / scale);
      }
      // Terminal jet has the required plane projection.
      worst = std::max(
          worst, std::abs((nr.normalized.L[u] - inst.w).dot(axis)) / scale);
    }
    res.instances = covered;
    res.worst = worst;
    res.passed = worst <= 1e-10 && covered > 0;
    if (!res.passed) res.detail = "normalization path violates its invariants";
  });
}

CheckResult check_amplitude_scaling() {
  return run_check("corrugation_amplitude_scaling", [&](CheckResult& res) {
    const SubsolutionSection section = cone_subsolution_section(0.05, 0.2);
    const double y = 0.07;
    // Grids with n = 32N columns hit identical fractional phases for every
    // N, so the sampled sup of ‖f₁ − f₀‖ scales exactly like 1/N.
    const auto sup_for = [&](double N) {
      CorrugationConfig cfg;
      cfg.N = N;
      const int n = static_cast<int>(32 * N);
      double m = 0.0;
      for (int i = 0; i < n; ++i) {
        const DomainPoint x{static_cast<double>(i) / n, y};
        m = std::max(m, (corrugate_analytic(section, cfg, x) - section.base(x)).norm());
      }
      return m;
    };
    const double m8 = sup_for(8.0);
    const double m64 = sup_for(64.0);
    res.instances = 2;
    res.worst = std::abs(m64 * 64.0 / (m8 * 8.0) - 1.0);
    res.passed = res.worst <= 1e-9 && m8 > 0.0;
    if (!res.passed) res.detail = "sup‖f1−f0‖ does not scale like 1/N";
  });
}

CheckResult check_quadrature_equivalence(Rng& rng, int instances) {
  return run_check("quadrature_matches_closed_form", [&](CheckResult& res) {
    const double eta = 0.12;
    const double eps = 0.3;
    const SubsolutionSection section = cone_subsolution_section(eta, eps);
    const LoopFamily family = cone_loop_family(eta);
    const MapR2ToR3 f0 = [](const DomainPoint& p) { return cone_map(p.x1, p.x2); };
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
      CorrugationConfig cfg;
      cfg.N = (i % 2 == 0) ? 5.0 : 7.25;
      const DomainPoint x{rng.unit(), rng.range(-0.09, 0.09)};
      const Vec3 a = corrugate_generic(f0, family, cfg, x);
      const Vec3 b = corrugate_analytic(section, cfg, x);
      worst = std::max(worst, (a - b).norm());
    }
    res.instances = instances;
    res.worst = worst;
    res.passed = worst <= 1e-6;
    if (!res.passed) res.detail = "quadrature and closed-form corrugation disagree";
  });
}

}  // namespace

bool VerifySummary::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

VerifySummary run_verification(const VerifyConfig& cfg) {
  Rng rng(cfg.seed);
  VerifySummary summary;
  summary.seed = cfg.seed;

  std::vector<Instance> instances;
  try {
    instances = sample_instances(rng, std::max(3, cfg.loop_instances));
  } catch (const std::exception& e) {
    CheckResult res;
    res.name = "instance_sampling";
    res.passed = false;
    res.detail = std::string("exception: ") + e.what();
    summary.checks.push_back(res);
    return summary;
  }

  summary.checks.push_back(check_loop_average(instances));
  summary.checks.push_back(check_loop_periodicity(instances));
  summary.checks.push_back(check_loop_in_slice(instances));
  summary.checks.push_back(check_homotopy(instances, cfg.homotopy_samples));
  summary.checks.push_back(check_normalization(instances));
  summary.checks.push_back(check_amplitude_scaling());
  summary.checks.push_back(check_quadrature_equivalence(rng, cfg.equivalence_instances));
  return summary;
}

std::string summary_to_json(const VerifySummary& summary, int indent) {
  nlohmann::ordered_json j;
  j["seed"] = summary.seed;
  j["all_passed"] = summary.all_passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : summary.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["passed"] = c.passed;
    jc["instances"] = c.instances;
    jc["worst"] = c.worst;
    jc["detail"] = c.detail;
    j["checks"].push_back(jc);
  }
  return j.dump(indent);
}

}  // namespace corrugate
