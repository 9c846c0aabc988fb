#include "ppq/generate.hpp"

#include <algorithm>
#include <numeric>

#include "ppq/errors.hpp"

namespace ppq {

namespace {

std::vector<Variable> binary_vars(int n, const std::string& prefix) {
  std::vector<Variable> vars;
  for (int i = 1; i <= n; ++i) {
    Variable v;
    v.name = prefix + std::to_string(i);
    v.values = {"t", "f"};
    vars.push_back(std::move(v));
  }
  return vars;
}

std::vector<double> random_distribution(std::size_t size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> probs(size);
  double sum = 0.0;
  for (double& p : probs) sum += (p = u(rng));
  for (double& p : probs) p /= sum;
  return probs;
}

}  // namespace

KnowledgeBase random_joint_kb(int n, std::mt19937_64& rng) {
  JointTable jt;
  std::vector<Variable> vars = binary_vars(n, "x");
  jt.order.resize(static_cast<std::size_t>(n));
  std::iota(jt.order.begin(), jt.order.end(), 0);
  jt.probs = random_distribution(std::size_t{1} << n, rng);
  return KnowledgeBase("random_joint", std::move(vars), std::move(jt));
}

KnowledgeBase random_bn_kb(int n, std::mt19937_64& rng, int max_parents) {
  std::vector<Variable> vars;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 1; i <= n; ++i) {
    Variable v;
    v.name = "x" + std::to_string(i);
    if (u01(rng) < 0.7)
      v.values = {"t", "f"};
    else
      v.values = {"v0", "v1", "v2"};
    vars.push_back(std::move(v));
  }

  BayesNet bn;
  bn.nodes.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    BayesNode node;
    node.var = i;
    int limit = std::min(i, max_parents);
    int count = limit == 0 ? 0 : std::uniform_int_distribution<int>(0, limit)(rng);
    std::vector<int> pool(static_cast<std::size_t>(i));
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    node.parents.assign(pool.begin(), pool.begin() + count);
    std::size_t rows = 1;
    for (int p : node.parents) rows *= vars[static_cast<std::size_t>(p)].values.size();
    for (std::size_t r = 0; r < rows; ++r)
      node.cpt.push_back(random_distribution(vars[static_cast<std::size_t>(i)].values.size(), rng));
    bn.nodes[static_cast<std::size_t>(i)] = std::move(node);
  }
  return KnowledgeBase("random_bn", std::move(vars), std::move(bn));
}

KnowledgeBase independent_kb(int n, double p) {
  std::vector<Variable> vars = binary_vars(n, "x");
  BayesNet bn;
  for (int i = 0; i < n; ++i) {
    BayesNode node;
    node.var = i;
    node.cpt = {{p, 1.0 - p}};
    bn.nodes.push_back(std::move(node));
  }
  return KnowledgeBase("independent", std::move(vars), std::move(bn));
}

namespace {

Prop random_prop_impl(const KnowledgeBase& kb, std::mt19937_64& rng, int depth, int& budget) {
  std::uniform_int_distribution<int> var_pick(0, kb.num_variables() - 1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  auto make_literal = [&] {
    --budget;
    int var = var_pick(rng);
    const Variable& v = kb.variable(var);
    int value = std::uniform_int_distribution<int>(0, static_cast<int>(v.values.size()) - 1)(rng);
    bool negated = u01(rng) < 0.3;
    return Prop::make_lit(canonicalize_literal(kb, Literal{var, value, negated}));
  };

  if (depth <= 0 || budget <= 1) return make_literal();

  double roll = u01(rng);
  if (roll < 0.3) return make_literal();
  if (roll < 0.5) {
    Prop negated = Prop::make_not(random_prop_impl(kb, rng, depth - 1, budget));
    if (negated.kind == PropKind::Lit) negated.lit = canonicalize_literal(kb, negated.lit);
    return negated;
  }
  int width = std::uniform_int_distribution<int>(2, 3)(rng);
  std::vector<Prop> kids;
  for (int i = 0; i < width && budget > 0; ++i)
    kids.push_back(random_prop_impl(kb, rng, depth - 1, budget));
  if (kids.size() < 2) return std::move(kids.front());
  return roll < 0.75 ? Prop::make_and(std::move(kids)) : Prop::make_or(std::move(kids));
}

}  // namespace

Prop random_prop(const KnowledgeBase& kb, std::mt19937_64& rng, int max_depth, int max_refs) {
  int budget = std::max(max_refs, 1);
  return random_prop_impl(kb, rng, max_depth, budget);
}

QueryExpr random_query(const KnowledgeBase& kb, std::mt19937_64& rng, int max_depth, int max_refs) {
  QueryExpr q;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int target_refs = std::max(1, max_refs - 4);
  q.target = random_prop(kb, rng, max_depth, target_refs);
  if (u01(rng) < 0.5) q.evidence = random_prop(kb, rng, max_depth - 1, 4);
  return q;
}

namespace {

std::vector<Prop> family_literals(const KnowledgeBase&, int m, int offset) {
  std::vector<Prop> lits;
  for (int i = 0; i < m; ++i) lits.push_back(Prop::make_lit(Literal{offset + i, 0, false}));
  return lits;
}

std::vector<std::vector<Prop>> split_groups(std::vector<Prop> lits, int r) {
  std::vector<std::vector<Prop>> groups(static_cast<std::size_t>(r));
  for (std::size_t i = 0; i < lits.size(); ++i)
    groups[i % static_cast<std::size_t>(r)].push_back(std::move(lits[i]));
  return groups;
}

Prop group_prop(std::vector<Prop> lits, PropKind kind) {
  if (lits.size() == 1) return std::move(lits.front());
  return kind == PropKind::And ? Prop::make_and(std::move(lits)) : Prop::make_or(std::move(lits));
}

}  // namespace

KnowledgeBase bench_kb(int max_m) {
  // Variables: kNestedAnchorCount anchors a1.., then x1..x_max_m fair coins.
  std::vector<Variable> vars = binary_vars(kNestedAnchorCount, "a");
  for (Variable& v : binary_vars(max_m, "x")) vars.push_back(std::move(v));
  BayesNet bn;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    BayesNode node;
    node.var = static_cast<int>(i);
    node.cpt = {{0.5, 0.5}};
    bn.nodes.push_back(std::move(node));
  }
  return KnowledgeBase("bench", std::move(vars), std::move(bn));
}

Prop bench_family_query(const KnowledgeBase& kb, const std::string& family, int m, int r) {
  const int offset = kNestedAnchorCount;  // x-variables start after the anchors
  if (m < 1 || offset + m > kb.num_variables())
    throw Error("bench family parameter m out of range for this KB");

  if (family == "form1") return group_prop(family_literals(kb, m, offset), PropKind::And);
  if (family == "form2") return group_prop(family_literals(kb, m, offset), PropKind::Or);
  if (family == "form3" || family == "form4") {
    if (r < 1 || r > m) throw Error("bench family group count r out of range");
    PropKind inner = family == "form3" ? PropKind::And : PropKind::Or;
    PropKind outer = family == "form3" ? PropKind::Or : PropKind::And;
    std::vector<Prop> groups;
    for (auto& g : split_groups(family_literals(kb, m, offset), r))
      groups.push_back(group_prop(std::move(g), inner));
    return group_prop(std::move(groups), outer);
  }
  if (family == "nested") {
    // Negation chain anchored by a fixed conjunction: the anchors keep the
    // negation-free base cost flat so call counts track the F(q) = 2 F(q-1)
    // recurrence instead of the linear base-term drift.
    if (m < 2) throw Error("nested family requires m >= 2");
    std::vector<Prop> parts = family_literals(kb, kNestedAnchorCount, 0);
    for (int i = 0; i < m - 1; ++i) {
      std::vector<Prop> pair;
      pair.push_back(Prop::make_lit(Literal{offset + i, 0, false}));
      pair.push_back(Prop::make_lit(Literal{offset + i + 1, 0, false}));
      parts.push_back(Prop::make_not(Prop::make_and(std::move(pair))));
    }
    return Prop::make_and(std::move(parts));
  }
  throw Error("unknown bench family '" + family + "'");
}

}  // namespace ppq
