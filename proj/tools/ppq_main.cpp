#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ppq/bench.hpp"
#include "ppq/engine.hpp"
#include "ppq/errors.hpp"
#include "ppq/model.hpp"
#include "ppq/parser.hpp"
#include "ppq/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitUndefinedConditional = 2;
constexpr int kExitInternal = 3;

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PPQ_SEED")) return std::strtoull(env, nullptr, 10);
  return 7;
}

std::shared_ptr<const ppq::SVOracle> make_oracle(bool strict) {
  std::shared_ptr<const ppq::SVOracle> oracle = std::make_shared<ppq::EnumerationOracle>();
  if (strict) oracle = std::make_shared<ppq::StrictSVOracle>(std::move(oracle));
  return oracle;
}

nlohmann::json stats_json(const ppq::EvalStats& s) {
  return {{"sv_calls", s.sv_calls},
          {"cache_hits", s.cache_hits},
          {"cache_misses", s.cache_misses},
          {"negation_eliminations", s.negation_eliminations},
          {"max_recursion_depth", s.max_recursion_depth},
          {"m", s.m},
          {"q", s.q},
          {"predicted_bound", s.predicted_bound}};
}

void print_stats(const ppq::EvalStats& s) {
  std::cout << "sv_calls: " << s.sv_calls << "\n"
            << "cache_hits: " << s.cache_hits << "\n"
            << "cache_misses: " << s.cache_misses << "\n"
            << "negation_eliminations: " << s.negation_eliminations << "\n"
            << "m: " << s.m << "\n"
            << "q: " << s.q << "\n"
            << "predicted_bound: " << s.predicted_bound << "\n";
}

int run_eval(const std::string& kb_path, const std::string& query_text, bool cache_on, bool trace,
             bool strict, bool json) {
  ppq::KnowledgeBase kb = ppq::load_kb_file(kb_path);
  ppq::QueryExpr query = ppq::parse_query(query_text, kb);

  ppq::EvalConfig config;
  config.cache_enabled = cache_on;
  config.trace_enabled = trace;
  ppq::Evaluator evaluator(kb, make_oracle(strict), config);
  ppq::EvalResult result = evaluator.eval_conditional(query);
  ppq::QueryFormClassification form = ppq::classify_query_form(query.target);

  if (json) {
    nlohmann::json out;
    out["value"] = result.value;
    out["stats"] = stats_json(result.stats);
    out["form"] = ppq::form_name(form.form);
    if (result.trace) out["trace"] = nlohmann::json::parse(ppq::trace_to_json(*result.trace));
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "value: " << format_value(result.value) << "\n";
    print_stats(result.stats);
    std::cout << "form: " << ppq::form_name(form.form) << "\n";
    if (result.trace) std::cout << ppq::render_trace(*result.trace);
  }
  return kExitOk;
}

int run_trace(const std::string& kb_path, const std::string& query_text, bool cache_on,
              bool json) {
  ppq::KnowledgeBase kb = ppq::load_kb_file(kb_path);
  ppq::QueryExpr query = ppq::parse_query(query_text, kb);

  ppq::EvalConfig config;
  config.cache_enabled = cache_on;
  config.trace_enabled = true;
  ppq::Evaluator evaluator(kb, make_oracle(false), config);
  ppq::EvalResult result = evaluator.eval_conditional(query);
  if (json)
    std::cout << ppq::trace_to_json(*result.trace) << "\n";
  else
    std::cout << ppq::render_trace(*result.trace);
  return kExitOk;
}

int run_verify_cmd(const ppq::VerifyOptions& options) {
  ppq::VerifyReport report = ppq::run_verify(options);
  std::cout << "comparisons: " << report.comparisons << "\n"
            << "max_abs_deviation: " << format_value(report.max_abs_deviation) << "\n"
            << (report.pass ? "PASS" : "FAIL") << "\n";
  if (!report.pass) {
    std::cerr << "verify failed at " << report.first_failure << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

int run_bench(const ppq::BenchOptions& options, const std::string& out_path) {
  std::string csv = ppq::bench_csv(ppq::run_bench(options));
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ppq::Error("cannot open output file '" + out_path + "'");
    out << csv;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PPQ: propositional probability queries over an SV oracle"};
  app.require_subcommand(1);

  std::string kb_path, query_text, cache = "on", out_path;
  bool trace = false, strict = false, json = false;

  CLI::App* eval = app.add_subcommand("eval", "evaluate P(target [given evidence])");
  eval->add_option("kb", kb_path, "KB document (JSON)")->required();
  eval->add_option("query", query_text, "query string")->required();
  eval->add_option("--cache", cache, "on|off")->check(CLI::IsMember({"on", "off"}));
  eval->add_flag("--trace", trace, "print the derivation tree");
  eval->add_flag("--strict-oracle", strict, "restrict the oracle to positive literals");
  eval->add_flag("--json", json, "machine-readable output");

  CLI::App* trace_cmd = app.add_subcommand("trace", "print the derivation tree for a query");
  trace_cmd->add_option("kb", kb_path, "KB document (JSON)")->required();
  trace_cmd->add_option("query", query_text, "query string")->required();
  trace_cmd->add_option("--cache", cache, "on|off")->check(CLI::IsMember({"on", "off"}));
  trace_cmd->add_flag("--json", json, "emit the trace as JSON");

  ppq::VerifyOptions verify_options;
  verify_options.seed = default_seed();
  CLI::App* verify = app.add_subcommand("verify", "engine vs. brute-force joint summation");
  verify->add_option("--n", verify_options.n, "variables per random KB")->check(CLI::Range(1, 12));
  verify->add_option("--trials", verify_options.trials, "number of random (KB, query) pairs");
  verify->add_option("--seed", verify_options.seed, "RNG seed");
  verify->add_option("--kind", verify_options.kind, "joint|bn")
      ->check(CLI::IsMember({"joint", "bn"}));
  verify->add_flag("--inject-fault", verify_options.inject_fault,
                   "test hook: bias every SV result by +0.01");

  ppq::BenchOptions bench_options;
  std::string m_range = "2..10";
  CLI::App* bench = app.add_subcommand("bench", "call-count benchmarks, CSV output");
  bench->add_option("--family", bench_options.family, "form1|form2|form3|form4|nested")
      ->required()
      ->check(CLI::IsMember({"form1", "form2", "form3", "form4", "nested"}));
  bench->add_option("--m", m_range, "size range A..B")->required();
  bench->add_option("--r", bench_options.r, "group count (forms 3-4)");
  bench->add_option("--cache", cache, "accepted for compatibility; both modes are measured")
      ->check(CLI::IsMember({"on", "off"}));
  bench->add_option("--out", out_path, "CSV output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (eval->parsed()) return run_eval(kb_path, query_text, cache == "on", trace, strict, json);
    if (trace_cmd->parsed()) return run_trace(kb_path, query_text, cache == "on", json);
    if (verify->parsed()) return run_verify_cmd(verify_options);
    if (bench->parsed()) {
      auto sep = m_range.find("..");
      if (sep == std::string::npos) throw ppq::ParseError("--m expects a range like 3..11");
      try {
        bench_options.m_begin = std::stoi(m_range.substr(0, sep));
        bench_options.m_end = std::stoi(m_range.substr(sep + 2));
      } catch (const std::exception&) {
        throw ppq::ParseError("--m expects a range like 3..11");
      }
      return run_bench(bench_options, out_path);
    }
  } catch (const ppq::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ppq::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ppq::UndefinedConditionalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUndefinedConditional;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitParse;
}
