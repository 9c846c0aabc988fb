#pragma once

#include <vector>

#include "ppq/model.hpp"
#include "ppq/proposition.hpp"

namespace ppq {

// Direct comparator: sums over the entire joint probability space. Feasible
// only for desk-scale KBs; kept independent of the recursive engine.
namespace brute_force {

bool satisfies(const Prop& p, const std::vector<int>& assignment);

double marginal(const KnowledgeBase& kb, const Prop& p);

// Throws UndefinedConditionalError on zero-mass evidence.
double conditional(const KnowledgeBase& kb, const QueryExpr& query);

}  // namespace brute_force

}  // namespace ppq
