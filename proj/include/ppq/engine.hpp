#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ppq/model.hpp"
#include "ppq/oracle.hpp"
#include "ppq/proposition.hpp"

namespace ppq {

enum class Rule { Step1, DeMorgan, ChainRuleFactor, NegElim, CacheHit, Contradiction, Tautology };

const char* rule_name(Rule r);

struct DerivationNode {
  Rule rule = Rule::Tautology;
  std::string expr;
  double value = 0.0;
  std::vector<DerivationNode> children;
};

std::string trace_to_json(const DerivationNode& node, int indent = 2);
std::string render_trace(const DerivationNode& node);

struct EvalConfig {
  bool cache_enabled = true;
  bool trace_enabled = false;
  bool absorb_negative_literals = true;
};

struct EvalStats {
  long long sv_calls = 0;
  long long cache_hits = 0;
  long long cache_misses = 0;
  long long negation_eliminations = 0;
  int max_recursion_depth = 0;
  int m = 0;                     // variable references in the query
  int q = 0;                     // spanning negations after normalization
  long long predicted_bound = 0; // m * 2^q
};

struct EvalResult {
  double value = 0.0;
  EvalStats stats;
  std::optional<DerivationNode> trace;
};

enum class QueryForm { Form1, Form2, Form3, Form4, General };

struct QueryFormClassification {
  QueryForm form = QueryForm::General;
  int k = 0;                    // literal count (forms 1-2)
  int r = 0;                    // group count (forms 3-4)
  std::vector<int> group_sizes; // s_i (forms 3-4)
};

// Syntactic match on the raw AST, before any normalization.
QueryFormClassification classify_query_form(const Prop& target);
const char* form_name(QueryForm f);

// F(q) = m * 2^q. Rejects m < 1, q < 0, or q > 62.
long long predicted_call_bound(int m, int q);

// Recursive query evaluator: Step-1 conditional split, de Morgan
// normalization, chain-rule conjunction evaluation, and negation elimination
// via P(!A & R) = P(R) - P(A & R). The memo cache persists across queries on
// the same Evaluator until clear_cache().
class Evaluator {
 public:
  Evaluator(const KnowledgeBase& kb, std::shared_ptr<const SVOracle> oracle,
            EvalConfig config = {});

  EvalResult eval_conditional(const QueryExpr& query);
  EvalResult eval_marginal(const Prop& p);

  void clear_cache() { cache_.clear(); }
  const EvalConfig& config() const { return config_; }
  const KnowledgeBase& kb() const { return kb_; }

 private:
  double run_marginal(const Prop& raw, int depth, DerivationNode* out);
  double eval_normalized(const Prop& p, int depth, DerivationNode* out);
  double eval_term(const std::vector<Literal>& lits, int depth, DerivationNode* out);
  double chain_rule(const std::vector<Literal>& lits);
  std::string canonical_key(const Prop& p) const;
  bool cache_lookup(const std::string& key, double& value, DerivationNode* out);
  void cache_store(const std::string& key, double value);
  void note_depth(int depth);
  double finalize(double raw) const;
  void begin_evaluation();
  EvalStats collect_stats(int m, int q) const;

  const KnowledgeBase& kb_;
  CountingOracle oracle_;
  EvalConfig config_;
  bool absorb_negatives_;
  std::unordered_map<std::string, double> cache_;
  long long cache_hits_ = 0;
  long long cache_misses_ = 0;
  long long negation_eliminations_ = 0;
  int max_depth_ = 0;
};

}  // namespace ppq
