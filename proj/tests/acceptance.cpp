// Acceptance suite: one pass/fail line per criterion. Takes the path to the
// ppq CLI binary as argv[1] for the exit-code checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ppq/bench.hpp"
#include "ppq/bruteforce.hpp"
#include "ppq/engine.hpp"
#include "ppq/errors.hpp"
#include "ppq/generate.hpp"
#include "ppq/parser.hpp"
#include "ppq/verify.hpp"

using namespace ppq;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion << ". " << what;
  if (!detail.empty()) std::cout << " — " << detail;
  std::cout << "\n";
  if (!ok) ++failures;
}

void walk(const DerivationNode& node, const std::function<void(const DerivationNode&)>& fn) {
  fn(node);
  for (const DerivationNode& c : node.children) walk(c, fn);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::shared_ptr<const SVOracle> enumeration() { return std::make_shared<EnumerationOracle>(); }

// --- criterion 1: oracle equivalence via the verify harness -----------------

void criterion_1() {
  auto start = std::chrono::steady_clock::now();
  VerifyOptions joint;  // n=6, trials=500, seed=7
  VerifyReport r_joint = run_verify(joint);
  VerifyOptions bn = joint;
  bn.kind = "bn";
  VerifyReport r_bn = run_verify(bn);
  double elapsed = seconds_since(start);

  char detail[160];
  std::snprintf(detail, sizeof detail, "max dev joint=%.3g bn=%.3g, %.1fs",
                r_joint.max_abs_deviation, r_bn.max_abs_deviation, elapsed);
  report(1, "oracle equivalence, 500 joint + 500 bn trials",
         r_joint.pass && r_bn.pass && r_joint.max_abs_deviation <= 1e-9 &&
             r_bn.max_abs_deviation <= 1e-9 && elapsed < 30.0,
         detail);
}

// --- criterion 2: the worked disjunctive query and its repeated subterm -----

void criterion_2() {
  KnowledgeBase kb = independent_kb(4);
  QueryExpr query = parse_query("P(x1 | x2 given x3 | !x4)", kb);

  EvalConfig traced_off;
  traced_off.trace_enabled = true;
  traced_off.cache_enabled = false;
  Evaluator cold(kb, enumeration(), traced_off);
  EvalResult off = cold.eval_conditional(query);

  int leaves_off = 0;
  walk(*off.trace, [&](const DerivationNode& n) {
    if (n.rule == Rule::ChainRuleFactor && n.expr == "!x3 & x4") ++leaves_off;
  });

  EvalConfig traced_on;
  traced_on.trace_enabled = true;
  Evaluator warm(kb, enumeration(), traced_on);
  EvalResult on = warm.eval_conditional(query);
  int leaves_on = 0;
  walk(*on.trace, [&](const DerivationNode& n) {
    if (n.rule == Rule::ChainRuleFactor && n.expr == "!x3 & x4") ++leaves_on;
  });

  bool ok = std::abs(off.value - 0.75) <= 1e-12 && leaves_off >= 2 && leaves_on == 1 &&
            on.stats.cache_hits >= 1 && on.value == off.value;
  char detail[160];
  std::snprintf(detail, sizeof detail, "value=%.17g, term leaves off=%d on=%d, cache_hits=%lld",
                off.value, leaves_off, leaves_on, on.stats.cache_hits);
  report(2, "P(x1 | x2 given x3 | !x4) = 0.75 with repeated (!x3 & x4) subterm", ok, detail);
}

// --- criterion 3: call-count recurrence on the negation-chain family --------

void criterion_3() {
  auto start = std::chrono::steady_clock::now();
  BenchOptions options;
  options.family = "nested";
  options.m_begin = 3;
  options.m_end = 11;
  std::vector<BenchRow> rows = run_bench(options);

  bool ok = true;
  std::string detail = "ratios:";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].sv_calls_cache_off > rows[i].predicted_bound) ok = false;
    if (i == 0) continue;
    double ratio = static_cast<double>(rows[i].sv_calls_cache_off) /
                   static_cast<double>(rows[i - 1].sv_calls_cache_off);
    char buf[16];
    std::snprintf(buf, sizeof buf, " %.3f", ratio);
    detail += buf;
    if (ratio < 1.8 || ratio > 2.2) ok = false;
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 10.0) ok = false;
  report(3, "nested family doubles SV calls per step within [1.8, 2.2]", ok, detail);
}

// --- criterion 4: linear call counts for the four query forms ---------------

void criterion_4() {
  bool ok = true;
  std::string detail;
  KnowledgeBase kb = bench_kb(50);
  auto oracle = std::make_shared<IndependentOracle>();
  EvalConfig off;
  off.cache_enabled = false;

  for (int k = 2; k <= 50 && ok; ++k) {
    for (const char* family : {"form1", "form2"}) {
      Evaluator ev(kb, oracle, off);
      EvalResult r = ev.eval_marginal(bench_family_query(kb, family, k));
      if (r.stats.sv_calls != k) {
        ok = false;
        detail = std::string(family) + " at k=" + std::to_string(k) + " used " +
                 std::to_string(r.stats.sv_calls) + " calls";
      }
    }
  }
  for (int m = 4; m <= 40 && ok; ++m) {
    for (const char* family : {"form3", "form4"}) {
      Evaluator ev(kb, oracle, off);
      EvalResult r = ev.eval_marginal(bench_family_query(kb, family, m, 2));
      long long bound = predicted_call_bound(r.stats.m, 3);  // m * 2^(r+1), r = 2
      if (r.stats.sv_calls > bound) {
        ok = false;
        detail = std::string(family) + " at m=" + std::to_string(m) + " exceeded " +
                 std::to_string(bound);
      }
    }
  }
  report(4, "form1/form2 cost exactly k calls; form3/form4 stay under m*2^(r+1)", ok, detail);
}

// --- criteria 5 and 8: random suite, trace identity and cache parity --------

void criteria_5_and_8() {
  std::mt19937_64 rng(7);
  bool identity_ok = true;
  bool parity_ok = true;
  int checked = 0;
  std::string id_detail, parity_detail;

  for (int trial = 0; trial < 500; ++trial) {
    KnowledgeBase kb = random_joint_kb(6, rng);
    QueryExpr query = random_query(kb, rng);

    EvalConfig traced_off;
    traced_off.trace_enabled = true;
    traced_off.cache_enabled = false;
    Evaluator cold(kb, enumeration(), traced_off);
    EvalResult off;
    try {
      off = cold.eval_conditional(query);
    } catch (const UndefinedConditionalError&) {
      continue;
    }
    ++checked;

    walk(*off.trace, [&](const DerivationNode& n) {
      if (n.rule != Rule::NegElim) return;
      if (n.children.size() != 2 ||
          std::abs(n.value - (n.children[0].value - n.children[1].value)) > 1e-12) {
        identity_ok = false;
        id_detail = "trial " + std::to_string(trial);
      }
    });

    Evaluator warm(kb, enumeration(), {});
    EvalResult on = warm.eval_conditional(query);
    if (std::abs(on.value - off.value) > 1e-12 || on.stats.sv_calls > off.stats.sv_calls) {
      parity_ok = false;
      parity_detail = "trial " + std::to_string(trial);
    }
  }

  report(5, "NegElim trace nodes satisfy value = P(R) - P(A & R) across " +
                std::to_string(checked) + " queries",
         identity_ok, id_detail);
  report(8, "cache on/off parity in value and call count", parity_ok, parity_detail);
}

// --- criterion 6: complement law and SV normalization -----------------------

void criterion_6() {
  std::mt19937_64 rng(7);
  bool ok = true;
  std::string detail;

  for (int trial = 0; trial < 200 && ok; ++trial) {
    KnowledgeBase kb = random_joint_kb(6, rng);
    Prop p = random_prop(kb, rng, 4, 7);
    Evaluator ev(kb, enumeration(), {});
    double ps = ev.eval_marginal(p).value;
    double pn = ev.eval_marginal(Prop::make_not(p)).value;
    if (std::abs(ps + pn - 1.0) > 1e-9) {
      ok = false;
      detail = "complement failed at trial " + std::to_string(trial);
    }
  }

  EnumerationOracle oracle;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    KnowledgeBase kb = random_bn_kb(6, rng);
    std::uniform_int_distribution<int> pick(0, kb.num_variables() - 1);
    int target = pick(rng);
    std::vector<Literal> evidence;
    int ev_var = pick(rng);
    if (ev_var != target) evidence.push_back(Literal{ev_var, 0, false});
    double total = 0.0;
    for (int v = 0; v < static_cast<int>(kb.variable(target).values.size()); ++v)
      total += oracle.prob(kb, {Literal{target, v, false}, evidence});
    if (std::abs(total - 1.0) > 1e-9) {
      ok = false;
      detail = "normalization failed at trial " + std::to_string(trial);
    }
  }
  report(6, "P(S) + P(!S) = 1 and sum_v P(X=v | E) = 1 over 200 random cases each", ok, detail);
}

// --- criterion 7: degenerate handling and CLI exit codes --------------------

int run_cli(const std::string& binary, const std::string& args) {
  std::string cmd = binary + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_7(const std::string& binary) {
  bool ok = true;
  std::string detail;

  KnowledgeBase kb = load_kb(R"({
    "variables": [
      {"name": "a", "values": ["t", "f"]},
      {"name": "b", "values": ["t", "f"]}
    ],
    "joint": {"order": ["a", "b"], "probs": [0.3, 0.2, 0.4, 0.1]}
  })");

  Evaluator ev(kb, enumeration(), {});
  EvalResult contradiction = ev.eval_marginal(parse_prop("a & !a & b", kb));
  if (contradiction.value != 0.0 || contradiction.stats.sv_calls != 0) {
    ok = false;
    detail = "contradiction short-circuit";
  }

  double pa = ev.eval_marginal(parse_prop("a", kb)).value;
  double pnn = ev.eval_marginal(parse_prop("!!a", kb)).value;
  Prop inner = parse_prop("!(!(a & b))", kb);
  if (std::abs(pnn - pa) > 1e-12 ||
      std::abs(ev.eval_marginal(inner).value - 0.3) > 1e-12 ||
      count_spanning_negations(eliminate_redundant_negations(to_cn_form(inner))) != 0) {
    ok = false;
    detail = "double negation normalization";
  }

  if (binary.empty()) {
    ok = false;
    detail = "no CLI binary path given";
  } else {
    std::filesystem::path kb_path =
        std::filesystem::temp_directory_path() / "ppq_acceptance_demo2.json";
    std::ofstream(kb_path) << R"({
      "variables": [
        {"name": "a", "values": ["t", "f"]},
        {"name": "b", "values": ["t", "f"]}
      ],
      "joint": {"order": ["a", "b"], "probs": [0.3, 0.2, 0.4, 0.1]}
    })";
    std::string kb_arg = "\"" + kb_path.string() + "\"";
    if (run_cli(binary, "eval " + kb_arg + " \"P(a given b)\"") != 0) {
      ok = false;
      detail = "eval exit code";
    }
    if (run_cli(binary, "eval " + kb_arg + " \"P(a given b & !b)\"") != 2) {
      ok = false;
      detail = "undefined-conditional exit code";
    }
    if (run_cli(binary, "eval " + kb_arg + " \"P(a &\"") != 1) {
      ok = false;
      detail = "syntax-error exit code";
    }
    std::filesystem::remove(kb_path);
  }
  report(7, "degenerate handling: contradictions, exit codes, double negation", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string binary = argc > 1 ? argv[1] : "";
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criteria_5_and_8();
  criterion_6();
  criterion_7(binary);
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
