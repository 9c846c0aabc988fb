#pragma once

#include <cstdint>
#include <string>

#include "ppq/engine.hpp"

namespace ppq {

struct VerifyOptions {
  int n = 6;
  int trials = 500;
  std::uint64_t seed = 7;
  std::string kind = "joint";  // "joint" or "bn"
  double tolerance = 1e-9;
  // Test hook: adds +0.01 to every SV result to prove the harness notices.
  bool inject_fault = false;
};

struct VerifyReport {
  int comparisons = 0;
  double max_abs_deviation = 0.0;
  bool pass = true;
  std::string first_failure;  // (trial, query) of the first offender
};

// Seeded random KBs and queries: the engine against direct joint summation.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace ppq
