#pragma once

#include <random>
#include <string>

#include "ppq/model.hpp"
#include "ppq/proposition.hpp"

namespace ppq {

// Random binary-variable joint table over n variables named x1..xn, with
// strictly positive cell probabilities.
KnowledgeBase random_joint_kb(int n, std::mt19937_64& rng);

// Random Bayesian network over n variables (domain sizes 2..3, parents drawn
// from earlier variables, at most max_parents each).
KnowledgeBase random_bn_kb(int n, std::mt19937_64& rng, int max_parents = 3);

// Parent-free network of n independent binary t/f variables named x1..xn,
// each true with probability p.
KnowledgeBase independent_kb(int n, double p = 0.5);

// Random proposition over kb's variables with bounded depth and literal count.
Prop random_prop(const KnowledgeBase& kb, std::mt19937_64& rng, int max_depth = 4,
                 int max_refs = 10);

// Random query; carries evidence with probability ~1/2.
QueryExpr random_query(const KnowledgeBase& kb, std::mt19937_64& rng, int max_depth = 4,
                       int max_refs = 10);

// Benchmark query families over independent-variable KBs. `m` is the family
// size parameter (literal count for forms 1-2, combined group size for forms
// 3-4, negation-chain length for "nested").
Prop bench_family_query(const KnowledgeBase& kb, const std::string& family, int m, int r = 2);

// KB sized so every family query with parameter <= max_m is well-formed.
KnowledgeBase bench_kb(int max_m);

// Number of anchor variables prefixed to the "nested" family (see
// bench_family_query).
inline constexpr int kNestedAnchorCount = 8;

}  // namespace ppq
