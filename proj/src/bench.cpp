#include "ppq/bench.hpp"

#include <chrono>
#include <cstdio>
#include <memory>

#include "ppq/errors.hpp"
#include "ppq/generate.hpp"

namespace ppq {

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  if (options.m_begin < 1 || options.m_end < options.m_begin)
    throw Error("bench: invalid m range");

  KnowledgeBase kb = bench_kb(options.m_end);
  auto oracle = std::make_shared<IndependentOracle>();

  std::vector<BenchRow> rows;
  for (int m = options.m_begin; m <= options.m_end; ++m) {
    Prop query = bench_family_query(kb, options.family, m, options.r);

    BenchRow row;
    row.family = options.family;
    row.m = m;
    row.q = count_spanning_negations(eliminate_redundant_negations(to_cn_form(query)));
    row.predicted_bound = predicted_call_bound(count_literal_refs(query), row.q);
    if (row.predicted_bound > (1LL << 24))
      throw Error("bench: predicted bound for m=" + std::to_string(m) +
                  " exceeds the 2^24 call guard");

    EvalConfig off;
    off.cache_enabled = false;
    Evaluator cold(kb, oracle, off);
    auto start = std::chrono::steady_clock::now();
    EvalResult result = cold.eval_marginal(query);
    auto stop = std::chrono::steady_clock::now();
    row.sv_calls_cache_off = result.stats.sv_calls;
    row.value = result.value;
    row.wall_time_us =
        std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count();

    Evaluator warm(kb, oracle, EvalConfig{});
    row.sv_calls_cache_on = warm.eval_marginal(query).stats.sv_calls;

    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = kBenchCsvHeader;
  out += '\n';
  char buf[160];
  for (const BenchRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%lld,%lld,%lld,%.17g,%lld\n", r.family.c_str(), r.m,
                  r.q, r.predicted_bound, r.sv_calls_cache_off, r.sv_calls_cache_on, r.value,
                  r.wall_time_us);
    out += buf;
  }
  return out;
}

}  // namespace ppq
