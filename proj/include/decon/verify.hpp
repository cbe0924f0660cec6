#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace decon {

struct VerifyConfig {
  uint64_t seed = 20260810ULL;
  // Reduced corpus sizes for fast iteration during development. The
  // acceptance gate always runs with quick = false.
  bool quick = false;
  // Stopping tolerance of the reconstruction iteration; the pass/fail
  // thresholds themselves are pinned in the criteria.
  double recon_tol = 1e-10;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  std::vector<std::pair<std::string, double>> metrics;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
  std::string digest;  // canonical numeric dump; equal digests = identical run
};

// Runs the full verification suite, logging one line per criterion.
VerifyReport run_acceptance(const VerifyConfig& cfg, std::ostream& log);

std::string format_criterion_line(const CriterionResult& c);

}  // namespace decon
