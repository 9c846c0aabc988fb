#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "ppq/errors.hpp"
#include "ppq/generate.hpp"
#include "ppq/oracle.hpp"
#include "test_helpers.hpp"

using namespace ppq;

namespace {

Literal lit(int var, int value, bool negated = false) { return Literal{var, value, negated}; }

// Expands a network into its explicit joint table.
KnowledgeBase expand_to_joint(const KnowledgeBase& kb) {
  JointTable jt;
  for (int i = 0; i < kb.num_variables(); ++i) jt.order.push_back(i);
  for_each_assignment(kb,
                      [&](const std::vector<int>& a) { jt.probs.push_back(kb.joint_probability(a)); });
  std::vector<Variable> vars = kb.variables();
  return KnowledgeBase("expanded", std::move(vars), std::move(jt));
}

}  // namespace

TEST_CASE("enumeration oracle computes conditionals on demo2") {
  KnowledgeBase kb = testing::demo2();
  EnumerationOracle oracle;
  CHECK(oracle.prob(kb, {lit(0, 0), {lit(1, 0)}}) == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
  CHECK(oracle.prob(kb, {lit(1, 0), {}}) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(oracle.prob(kb, {lit(1, 0), {lit(0, 1)}}) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("SV query preconditions are enforced") {
  KnowledgeBase kb = testing::demo2();
  EnumerationOracle oracle;
  CHECK_THROWS_AS(oracle.prob(kb, {lit(0, 0), {lit(0, 0)}}), InvalidQueryError);
  CHECK_THROWS_AS(oracle.prob(kb, {lit(0, 0), {lit(1, 0), lit(1, 1)}}), InvalidQueryError);
}

TEST_CASE("zero-mass evidence is rejected") {
  KnowledgeBase kb = load_kb(R"({
    "variables": [
      {"name": "a", "values": ["t", "f"]},
      {"name": "c", "values": ["t", "f"]}
    ],
    "joint": {"order": ["a", "c"], "probs": [0.0, 0.6, 0.0, 0.4]}
  })");
  EnumerationOracle oracle;
  CHECK_THROWS_AS(oracle.prob(kb, {lit(0, 0), {lit(1, 0)}}), ZeroEvidenceError);  // P(c=t)=0
}

TEST_CASE("counting decorator is transparent and counts failures") {
  KnowledgeBase kb = testing::demo2();
  auto inner = std::make_shared<EnumerationOracle>();
  CountingOracle counting(inner);
  CHECK(counting.counter().calls == 0);

  double direct = inner->prob(kb, {lit(0, 0), {lit(1, 0)}});
  CHECK(counting.prob(kb, {lit(0, 0), {lit(1, 0)}}) == direct);
  counting.prob(kb, {lit(1, 0), {}});
  counting.prob(kb, {lit(1, 1), {}});
  CHECK(counting.counter().calls == 3);
  CHECK(counting.counter().by_evidence_length.at(0) == 2);
  CHECK(counting.counter().by_evidence_length.at(1) == 1);

  CHECK_THROWS_AS(counting.prob(kb, {lit(0, 0), {lit(0, 1)}}), InvalidQueryError);
  CHECK(counting.counter().calls == 4);
}

TEST_CASE("strict wrapper rejects negative literals") {
  KnowledgeBase kb = testing::demo2();
  StrictSVOracle strict(std::make_shared<EnumerationOracle>());
  CHECK_FALSE(strict.capabilities().supports_negative_literals);
  CHECK(strict.prob(kb, {lit(0, 0), {lit(1, 0)}}) == doctest::Approx(3.0 / 7.0));
  CHECK_THROWS_AS(strict.prob(kb, {lit(0, 0), {lit(1, 0, true)}}), CapabilityError);
  CHECK_THROWS_AS(strict.prob(kb, {lit(0, 0, true), {}}), CapabilityError);
}

TEST_CASE("negative literals mean value exclusion") {
  KnowledgeBase kb = testing::palette();
  EnumerationOracle oracle;
  // P(color != red) = 0.5 of mass excluded.
  CHECK(oracle.prob(kb, {lit(0, 0, true), {}}) == doctest::Approx(0.5).epsilon(1e-12));
  // P(lit=t | color != red) = (0.3*0.4 + 0.2*0.25) / 0.5
  CHECK(oracle.prob(kb, {lit(1, 0), {lit(0, 0, true)}}) ==
        doctest::Approx((0.3 * 0.4 + 0.2 * 0.25) / 0.5).epsilon(1e-12));
}

TEST_CASE("conditionals over a fixed evidence normalize across the domain") {
  std::mt19937_64 rng(123);
  EnumerationOracle oracle;
  for (int round = 0; round < 20; ++round) {
    KnowledgeBase kb = round % 2 ? random_bn_kb(5, rng) : random_joint_kb(5, rng);
    std::uniform_int_distribution<int> pick(0, kb.num_variables() - 1);
    int target = pick(rng);
    int ev_var = pick(rng);
    std::vector<Literal> evidence;
    if (ev_var != target) evidence.push_back(lit(ev_var, 0));
    double total = 0.0;
    for (int v = 0; v < static_cast<int>(kb.variable(target).values.size()); ++v)
      total += oracle.prob(kb, {lit(target, v), evidence});
    CHECK(std::abs(total - 1.0) <= 1e-9);
  }
}

TEST_CASE("network enumeration agrees with its expanded joint table") {
  std::mt19937_64 rng(99);
  EnumerationOracle oracle;
  for (int round = 0; round < 5; ++round) {
    KnowledgeBase bn = random_bn_kb(5, rng);
    KnowledgeBase jt = expand_to_joint(bn);
    std::uniform_int_distribution<int> pick(0, bn.num_variables() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      int target = pick(rng);
      int ev_var = pick(rng);
      SVQuery q{lit(target, trial % static_cast<int>(bn.variable(target).values.size()),
                    trial % 3 == 0),
                {}};
      if (ev_var != target) q.evidence.push_back(lit(ev_var, 0, trial % 5 == 0));
      CHECK(std::abs(oracle.prob(bn, q) - oracle.prob(jt, q)) <= 1e-12);
    }
  }
}
