#include "ppq/oracle.hpp"

#include <set>

#include "ppq/errors.hpp"

namespace ppq {

namespace {

bool literal_holds(const Literal& l, const std::vector<int>& assignment) {
  bool equal = assignment[static_cast<std::size_t>(l.var)] == l.value;
  return l.negated ? !equal : equal;
}

}  // namespace

void check_sv_query(const KnowledgeBase& kb, const SVQuery& q) {
  if (q.target.var < 0 || q.target.var >= kb.num_variables())
    throw InvalidQueryError("SV target references an unknown variable");
  std::set<int> seen;
  for (const Literal& l : q.evidence) {
    if (l.var < 0 || l.var >= kb.num_variables())
      throw InvalidQueryError("SV evidence references an unknown variable");
    if (l.var == q.target.var)
      throw InvalidQueryError("SV target variable '" + kb.variable(l.var).name +
                              "' appears in the evidence");
    if (!seen.insert(l.var).second)
      throw InvalidQueryError("variable '" + kb.variable(l.var).name +
                              "' appears twice in SV evidence");
  }
}

double EnumerationOracle::prob(const KnowledgeBase& kb, const SVQuery& q) const {
  check_sv_query(kb, q);
  double evidence_mass = 0.0;
  double joint_mass = 0.0;
  for_each_assignment(kb, [&](const std::vector<int>& a) {
    for (const Literal& l : q.evidence)
      if (!literal_holds(l, a)) return;
    double p = kb.joint_probability(a);
    evidence_mass += p;
    if (literal_holds(q.target, a)) joint_mass += p;
  });
  if (evidence_mass <= kZeroMassThreshold)
    throw ZeroEvidenceError("SV evidence has zero probability mass");
  return joint_mass / evidence_mass;
}

double IndependentOracle::prob(const KnowledgeBase& kb, const SVQuery& q) const {
  check_sv_query(kb, q);
  if (kb.is_joint_table())
    throw CapabilityError("independent oracle requires a parent-free network KB");
  const BayesNode& node = kb.bayes_net().nodes[static_cast<std::size_t>(q.target.var)];
  for (const BayesNode& n : kb.bayes_net().nodes)
    if (!n.parents.empty())
      throw CapabilityError("independent oracle requires a parent-free network KB");
  // Evidence on other variables is irrelevant under full independence, but
  // its mass can still be zero.
  for (const Literal& l : q.evidence) {
    const BayesNode& en = kb.bayes_net().nodes[static_cast<std::size_t>(l.var)];
    double mass = l.negated ? 1.0 - en.cpt[0][static_cast<std::size_t>(l.value)]
                            : en.cpt[0][static_cast<std::size_t>(l.value)];
    if (mass <= kZeroMassThreshold)
      throw ZeroEvidenceError("SV evidence has zero probability mass");
  }
  double p = node.cpt[0][static_cast<std::size_t>(q.target.value)];
  return q.target.negated ? 1.0 - p : p;
}

double StrictSVOracle::prob(const KnowledgeBase& kb, const SVQuery& q) const {
  if (q.target.negated)
    throw CapabilityError("strict SV oracle cannot evaluate a negated target literal");
  for (const Literal& l : q.evidence)
    if (l.negated)
      throw CapabilityError("strict SV oracle cannot condition on a negated literal");
  return inner_->prob(kb, q);
}

}  // namespace ppq
