#include "ppq/verify.hpp"

#include <cmath>
#include <memory>
#include <random>

#include "ppq/bruteforce.hpp"
#include "ppq/errors.hpp"
#include "ppq/generate.hpp"

namespace ppq {

namespace {

class BiasedOracle : public SVOracle {
 public:
  explicit BiasedOracle(std::shared_ptr<const SVOracle> inner) : inner_(std::move(inner)) {}
  double prob(const KnowledgeBase& kb, const SVQuery& q) const override {
    return inner_->prob(kb, q) + 0.01;
  }
  OracleCapabilities capabilities() const override { return inner_->capabilities(); }

 private:
  std::shared_ptr<const SVOracle> inner_;
};

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.n > 12) throw Error("verify: n must be <= 12 (joint enumeration)");
  if (options.kind != "joint" && options.kind != "bn")
    throw Error("verify: kind must be 'joint' or 'bn'");

  VerifyReport report;
  std::mt19937_64 rng(options.seed);

  std::shared_ptr<const SVOracle> oracle = std::make_shared<EnumerationOracle>();
  if (options.inject_fault) oracle = std::make_shared<BiasedOracle>(std::move(oracle));

  for (int trial = 0; trial < options.trials; ++trial) {
    KnowledgeBase kb = options.kind == "joint" ? random_joint_kb(options.n, rng)
                                               : random_bn_kb(options.n, rng);
    QueryExpr query = random_query(kb, rng);
    std::string query_text = print_prop(kb, query.target) +
                             (query.evidence ? " given " + print_prop(kb, *query.evidence) : "");

    double expected;
    bool expected_undefined = false;
    try {
      expected = brute_force::conditional(kb, query);
    } catch (const UndefinedConditionalError&) {
      expected_undefined = true;
      expected = 0.0;
    }

    double actual = 0.0;
    bool actual_undefined = false;
    bool actual_error = false;
    Evaluator evaluator(kb, oracle);
    try {
      actual = evaluator.eval_conditional(query).value;
    } catch (const UndefinedConditionalError&) {
      actual_undefined = true;
    } catch (const Error&) {
      actual_error = true;  // e.g. a broken oracle detected mid-evaluation
    }

    ++report.comparisons;
    bool ok;
    double deviation = 0.0;
    if (actual_error) {
      ok = false;
    } else if (expected_undefined || actual_undefined) {
      ok = expected_undefined == actual_undefined;
    } else {
      deviation = std::abs(expected - actual);
      report.max_abs_deviation = std::max(report.max_abs_deviation, deviation);
      ok = deviation <= options.tolerance;
    }
    if (!ok && report.pass) {
      report.pass = false;
      report.first_failure = "trial " + std::to_string(trial) + ": " + query_text;
    }
  }
  return report;
}

}  // namespace ppq
