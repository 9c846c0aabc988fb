#pragma once

#include <string>
#include <vector>

#include "ppq/engine.hpp"

namespace ppq {

struct BenchRow {
  std::string family;
  int m = 0;
  int q = 0;
  long long predicted_bound = 0;
  long long sv_calls_cache_off = 0;
  long long sv_calls_cache_on = 0;
  double value = 0.0;
  long long wall_time_us = 0;
};

struct BenchOptions {
  std::string family = "form1";
  int m_begin = 2;
  int m_end = 10;
  int r = 2;  // group count for forms 3-4
};

// One row per m over an auto-generated independent fair-coin KB. Each query
// is measured twice, with a cold cache-enabled evaluator and a cache-disabled
// one; wall time covers the cache-off run.
std::vector<BenchRow> run_bench(const BenchOptions& options);

inline constexpr char kBenchCsvHeader[] =
    "family,m,q,predicted_bound,sv_calls_cache_off,sv_calls_cache_on,value,wall_time_us";

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace ppq
