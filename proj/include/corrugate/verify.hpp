#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace corrugate {

// Configuration for the randomized property battery behind `corrugate verify`.
// All randomness flows from `seed`; equal seeds give identical summaries.
struct VerifyConfig {
  std::uint64_t seed = 2026;
  int loop_instances = 60;       // random slice/loop instances (split over modes)
  int homotopy_samples = 64;     // samples per leg of the base-point homotopy
  int equivalence_instances = 6; // quadrature-vs-closed-form comparisons
};

struct CheckResult {
  std::string name;
  bool passed = false;
  int instances = 0;   // how many sampled instances the check covered
  double worst = 0.0;  // worst observed error / tightest margin
  std::string detail;  // short human-readable note (empty when passing)
};

struct VerifySummary {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

// Run every property check and collect the results. Never throws for the
// sampled distributions; an exception inside a check is recorded as failure.
VerifySummary run_verification(const VerifyConfig& cfg = {});

// JSON rendering of a summary: {"seed", "all_passed", "checks": [...]}.
std::string summary_to_json(const VerifySummary& summary, int indent = 2);

}  // namespace corrugate
