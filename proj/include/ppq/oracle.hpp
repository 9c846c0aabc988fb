#pragma once

#include <map>
#include <memory>
#include <vector>

#include "ppq/model.hpp"
#include "ppq/proposition.hpp"

namespace ppq {

// Evidence mass at or below this is treated as zero (conditional undefined).
inline constexpr double kZeroMassThreshold = 1e-300;

// P(target | evidence), evidence a conjunction of literals (possibly empty).
struct SVQuery {
  Literal target;
  std::vector<Literal> evidence;
};

struct OracleCapabilities {
  bool supports_negative_literals = true;
};

struct SVCallCounter {
  long long calls = 0;
  std::map<std::size_t, long long> by_evidence_length;

  void record(std::size_t evidence_length) {
    ++calls;
    ++by_evidence_length[evidence_length];
  }
};

// The single-variable algorithm interface. Implementations are stateless
// with respect to the KB and safe for concurrent use.
class SVOracle {
 public:
  virtual ~SVOracle() = default;
  virtual double prob(const KnowledgeBase& kb, const SVQuery& q) const = 0;
  virtual OracleCapabilities capabilities() const = 0;
};

// Ground-truth oracle: two sums over the full joint space. Exact up to
// floating-point summation, exponential in the number of KB variables.
class EnumerationOracle : public SVOracle {
 public:
  double prob(const KnowledgeBase& kb, const SVQuery& q) const override;
  OracleCapabilities capabilities() const override { return {true}; }
};

// O(1) oracle for parent-free networks (mutually independent variables);
// used by the benchmark harness where enumeration is infeasible.
class IndependentOracle : public SVOracle {
 public:
  double prob(const KnowledgeBase& kb, const SVQuery& q) const override;
  OracleCapabilities capabilities() const override { return {true}; }
};

// Decorator counting every prob() call, including failing ones. The counter
// belongs to one evaluation context; no cross-thread sharing.
class CountingOracle : public SVOracle {
 public:
  explicit CountingOracle(std::shared_ptr<const SVOracle> inner) : inner_(std::move(inner)) {}

  double prob(const KnowledgeBase& kb, const SVQuery& q) const override {
    counter_.record(q.evidence.size());
    return inner_->prob(kb, q);
  }
  OracleCapabilities capabilities() const override { return inner_->capabilities(); }

  const SVCallCounter& counter() const { return counter_; }
  void reset() { counter_ = {}; }

 private:
  std::shared_ptr<const SVOracle> inner_;
  mutable SVCallCounter counter_;
};

// Restricts an oracle to the minimal SV contract: positive instantiations
// only. Any negated literal is rejected with a CapabilityError.
class StrictSVOracle : public SVOracle {
 public:
  explicit StrictSVOracle(std::shared_ptr<const SVOracle> inner) : inner_(std::move(inner)) {}

  double prob(const KnowledgeBase& kb, const SVQuery& q) const override;
  OracleCapabilities capabilities() const override { return {false}; }

 private:
  std::shared_ptr<const SVOracle> inner_;
};

// Throws InvalidQueryError on duplicate variables or target-in-evidence.
void check_sv_query(const KnowledgeBase& kb, const SVQuery& q);

}  // namespace ppq
