#include "ppq/bruteforce.hpp"

#include <algorithm>

#include "ppq/errors.hpp"
#include "ppq/oracle.hpp"

namespace ppq::brute_force {

bool satisfies(const Prop& p, const std::vector<int>& assignment) {
  switch (p.kind) {
    case PropKind::Lit: {
      bool equal = assignment[static_cast<std::size_t>(p.lit.var)] == p.lit.value;
      return p.lit.negated ? !equal : equal;
    }
    case PropKind::Not:
      return !satisfies(p.children.front(), assignment);
    case PropKind::And:
      return std::all_of(p.children.begin(), p.children.end(),
                         [&](const Prop& c) { return satisfies(c, assignment); });
    case PropKind::Or:
      return std::any_of(p.children.begin(), p.children.end(),
                         [&](const Prop& c) { return satisfies(c, assignment); });
  }
  return false;
}

double marginal(const KnowledgeBase& kb, const Prop& p) {
  double mass = 0.0;
  for_each_assignment(kb, [&](const std::vector<int>& a) {
    if (satisfies(p, a)) mass += kb.joint_probability(a);
  });
  return mass;
}

double conditional(const KnowledgeBase& kb, const QueryExpr& query) {
  if (!query.evidence) return marginal(kb, query.target);
  double num = 0.0;
  double den = 0.0;
  for_each_assignment(kb, [&](const std::vector<int>& a) {
    if (!satisfies(*query.evidence, a)) return;
    double p = kb.joint_probability(a);
    den += p;
    if (satisfies(query.target, a)) num += p;
  });
  if (den <= kZeroMassThreshold)
    throw UndefinedConditionalError("conditioning proposition has zero probability");
  return num / den;
}

}  // namespace ppq::brute_force
