#include "ppq/engine.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "ppq/errors.hpp"

namespace ppq {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Step1: return "Step1";
    case Rule::DeMorgan: return "DeMorgan";
    case Rule::ChainRuleFactor: return "ChainRuleFactor";
    case Rule::NegElim: return "NegElim";
    case Rule::CacheHit: return "CacheHit";
    case Rule::Contradiction: return "Contradiction";
    case Rule::Tautology: return "Tautology";
  }
  return "?";
}

const char* form_name(QueryForm f) {
  switch (f) {
    case QueryForm::Form1: return "form1";
    case QueryForm::Form2: return "form2";
    case QueryForm::Form3: return "form3";
    case QueryForm::Form4: return "form4";
    case QueryForm::General: return "general";
  }
  return "?";
}

namespace {

nlohmann::json trace_json(const DerivationNode& node) {
  nlohmann::json j;
  j["rule"] = rule_name(node.rule);
  j["expr"] = node.expr;
  j["value"] = node.value;
  j["children"] = nlohmann::json::array();
  for (const DerivationNode& c : node.children) j["children"].push_back(trace_json(c));
  return j;
}

void render_impl(const DerivationNode& node, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += rule_name(node.rule);
  out += ": P(";
  out += node.expr.empty() ? "1" : node.expr;
  out += ") = ";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", node.value);
  out += buf;
  out += '\n';
  for (const DerivationNode& c : node.children) render_impl(c, depth + 1, out);
}

}  // namespace

std::string trace_to_json(const DerivationNode& node, int indent) {
  return trace_json(node).dump(indent);
}

std::string render_trace(const DerivationNode& node) {
  std::string out;
  render_impl(node, 0, out);
  return out;
}

QueryFormClassification classify_query_form(const Prop& target) {
  auto is_lit = [](const Prop& p) { return p.kind == PropKind::Lit; };
  auto all_lits = [&](const Prop& p) {
    return std::all_of(p.children.begin(), p.children.end(), is_lit);
  };

  QueryFormClassification c;
  if (is_lit(target)) {
    c.form = QueryForm::Form1;
    c.k = 1;
    return c;
  }
  if (target.kind == PropKind::And && all_lits(target)) {
    c.form = QueryForm::Form1;
    c.k = static_cast<int>(target.children.size());
    return c;
  }
  if (target.kind == PropKind::Or && all_lits(target)) {
    c.form = QueryForm::Form2;
    c.k = static_cast<int>(target.children.size());
    return c;
  }
  auto literal_group_sizes = [&](const Prop& p, PropKind group_kind) {
    std::vector<int> sizes;
    for (const Prop& g : p.children) {
      if (is_lit(g))
        sizes.push_back(1);
      else if (g.kind == group_kind && all_lits(g))
        sizes.push_back(static_cast<int>(g.children.size()));
      else
        return std::vector<int>{};
    }
    return sizes;
  };
  if (target.kind == PropKind::Or) {
    auto sizes = literal_group_sizes(target, PropKind::And);
    if (!sizes.empty()) {
      c.form = QueryForm::Form3;
      c.r = static_cast<int>(sizes.size());
      c.group_sizes = std::move(sizes);
      return c;
    }
  }
  if (target.kind == PropKind::And) {
    auto sizes = literal_group_sizes(target, PropKind::Or);
    if (!sizes.empty()) {
      c.form = QueryForm::Form4;
      c.r = static_cast<int>(sizes.size());
      c.group_sizes = std::move(sizes);
      return c;
    }
  }
  return c;
}

long long predicted_call_bound(int m, int q) {
  if (m < 1) throw Error("predicted_call_bound: m must be >= 1");
  if (q < 0 || q > 62) throw Error("predicted_call_bound: q out of supported range [0, 62]");
  long long bound = m;
  for (int i = 0; i < q; ++i) {
    if (bound > (1LL << 62)) throw Error("predicted_call_bound: overflow");
    bound *= 2;
  }
  return bound;
}

Evaluator::Evaluator(const KnowledgeBase& kb, std::shared_ptr<const SVOracle> oracle,
                     EvalConfig config)
    : kb_(kb), oracle_(std::move(oracle)), config_(config) {
  absorb_negatives_ =
      config_.absorb_negative_literals && oracle_.capabilities().supports_negative_literals;
}

void Evaluator::begin_evaluation() {
  oracle_.reset();
  cache_hits_ = cache_misses_ = negation_eliminations_ = 0;
  max_depth_ = 0;
}

EvalStats Evaluator::collect_stats(int m, int q) const {
  EvalStats s;
  s.sv_calls = oracle_.counter().calls;
  s.cache_hits = cache_hits_;
  s.cache_misses = cache_misses_;
  s.negation_eliminations = negation_eliminations_;
  s.max_recursion_depth = max_depth_;
  s.m = m;
  s.q = q;
  s.predicted_bound = predicted_call_bound(std::max(m, 1), q);
  return s;
}

void Evaluator::note_depth(int depth) { max_depth_ = std::max(max_depth_, depth); }

double Evaluator::finalize(double raw) const {
  if (raw < -1e-6 || raw > 1.0 + 1e-6)
    throw InconsistentOracleError("result " + std::to_string(raw) +
                                  " outside [0,1] beyond rounding tolerance");
  return std::clamp(raw, 0.0, 1.0);
}

std::string Evaluator::canonical_key(const Prop& p) const {
  switch (p.kind) {
    case PropKind::Lit:
      return print_literal(kb_, canonicalize_literal(kb_, p.lit));
    case PropKind::Not:
      return "!(" + canonical_key(p.children.front()) + ")";
    case PropKind::And:
    case PropKind::Or: {
      std::vector<std::string> keys;
      keys.reserve(p.children.size());
      for (const Prop& c : p.children) keys.push_back(canonical_key(c));
      std::sort(keys.begin(), keys.end());
      std::string out;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i) out += p.kind == PropKind::And ? " & " : " | ";
        out += keys[i];
      }
      return out;
    }
  }
  return {};
}

bool Evaluator::cache_lookup(const std::string& key, double& value, DerivationNode* out) {
  if (!config_.cache_enabled) return false;
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    ++cache_misses_;
    return false;
  }
  ++cache_hits_;
  value = it->second;
  if (out) {
    out->rule = Rule::CacheHit;
    out->expr = key;
    out->value = value;
  }
  return true;
}

void Evaluator::cache_store(const std::string& key, double value) {
  if (config_.cache_enabled) cache_[key] = value;
}

EvalResult Evaluator::eval_conditional(const QueryExpr& query) {
  begin_evaluation();
  int m = count_literal_refs(query.target) +
          (query.evidence ? count_literal_refs(*query.evidence) : 0);
  Prop combined = query.evidence
                      ? Prop::make_and({query.target, *query.evidence})
                      : query.target;
  int q = count_spanning_negations(eliminate_redundant_negations(to_cn_form(combined)));

  EvalResult result;
  DerivationNode root;
  DerivationNode* trace = config_.trace_enabled ? &root : nullptr;

  if (!query.evidence) {
    double v = run_marginal(query.target, 0, trace);
    result.value = finalize(v);
    if (trace) result.trace = std::move(root);
  } else {
    // P(S1 | S2) = P(S1 & S2) / P(S2); the denominator goes first so a
    // zero-mass condition is reported before any numerator work.
    DerivationNode num_node, den_node;
    double den = run_marginal(*query.evidence, 1, trace ? &den_node : nullptr);
    if (den <= kZeroMassThreshold)
      throw UndefinedConditionalError("conditioning proposition has zero probability");
    double num = run_marginal(combined, 1, trace ? &num_node : nullptr);
    result.value = finalize(num / den);
    if (trace) {
      root.rule = Rule::Step1;
      root.expr = print_prop(kb_, query.target) + " given " + print_prop(kb_, *query.evidence);
      root.value = result.value;
      root.children.push_back(std::move(num_node));
      root.children.push_back(std::move(den_node));
      result.trace = std::move(root);
    }
  }
  result.stats = collect_stats(m, q);
  return result;
}

EvalResult Evaluator::eval_marginal(const Prop& p) {
  begin_evaluation();
  int m = count_literal_refs(p);
  int q = count_spanning_negations(eliminate_redundant_negations(to_cn_form(p)));

  EvalResult result;
  DerivationNode root;
  DerivationNode* trace = config_.trace_enabled ? &root : nullptr;
  double v = run_marginal(p, 0, trace);
  result.value = finalize(v);
  if (trace) result.trace = std::move(root);
  result.stats = collect_stats(m, q);
  return result;
}

double Evaluator::run_marginal(const Prop& raw, int depth, DerivationNode* out) {
  Prop normalized = eliminate_redundant_negations(to_cn_form(raw));
  if (out && !(normalized == raw)) {
    DerivationNode inner;
    double v = eval_normalized(normalized, depth + 1, &inner);
    out->rule = Rule::DeMorgan;
    out->expr = print_prop(kb_, normalized);
    out->value = v;
    out->children.push_back(std::move(inner));
    return v;
  }
  return eval_normalized(normalized, depth, out);
}

double Evaluator::eval_normalized(const Prop& p, int depth, DerivationNode* out) {
  note_depth(depth);

  // View the node as a conjunction of literal and Not children.
  std::vector<Literal> lits;
  std::vector<const Prop*> negations;
  std::vector<const Prop*> ordered;
  if (p.kind == PropKind::Lit) {
    lits.push_back(p.lit);
  } else if (p.kind == PropKind::Not) {
    negations.push_back(&p);
    ordered.push_back(&p);
  } else {
    for (const Prop& c : p.children) {
      if (c.kind == PropKind::Lit)
        lits.push_back(c.lit);
      else
        negations.push_back(&c);
      ordered.push_back(&c);
    }
  }

  if (negations.empty()) return eval_term(lits, depth, out);

  // A contradictory literal subset zeroes the whole conjunction.
  if (canonicalize_conjunction(kb_, lits).is_contradiction()) {
    if (out) {
      out->rule = Rule::Contradiction;
      out->expr = print_prop(kb_, p);
      out->value = 0.0;
    }
    return 0.0;
  }

  std::string key = canonical_key(p);
  double cached;
  if (cache_lookup(key, cached, out)) return cached;

  // Step 4 on the leftmost outermost spanning negation:
  // P(!A & R) = P(R) - P(A & R).
  const Prop* chosen = negations.front();
  std::vector<Prop> rest;
  for (const Prop* c : ordered)
    if (c != chosen) rest.push_back(*c);
  for (const Literal& l : lits)
    if (p.kind != PropKind::And) rest.push_back(Prop::make_lit(l));

  ++negation_eliminations_;
  DerivationNode r_node, ar_node;
  double r_value;
  if (rest.empty()) {
    r_value = 1.0;
    r_node.rule = Rule::Tautology;
    r_node.value = 1.0;
  } else {
    Prop r = Prop::make_and(std::vector<Prop>(rest));
    r_value = eval_normalized(r, depth + 1, out ? &r_node : nullptr);
  }
  std::vector<Prop> ar_children = std::move(rest);
  ar_children.push_back(chosen->children.front());
  Prop ar = Prop::make_and(std::move(ar_children));
  double ar_value = eval_normalized(ar, depth + 1, out ? &ar_node : nullptr);

  double value = r_value - ar_value;
  if (out) {
    out->rule = Rule::NegElim;
    out->expr = print_prop(kb_, p);
    out->value = value;
    out->children.push_back(std::move(r_node));
    out->children.push_back(std::move(ar_node));
  }
  cache_store(key, value);
  return value;
}

double Evaluator::eval_term(const std::vector<Literal>& raw, int depth, DerivationNode* out) {
  note_depth(depth);
  CanonicalTerm canon = canonicalize_conjunction(kb_, std::vector<Literal>(raw));
  if (canon.is_tautology()) {
    if (out) {
      out->rule = Rule::Tautology;
      out->value = 1.0;
    }
    return 1.0;
  }
  if (canon.is_contradiction()) {
    if (out) {
      out->rule = Rule::Contradiction;
      out->expr = print_term(kb_, raw);
      out->value = 0.0;
    }
    return 0.0;
  }

  std::string key = print_term(kb_, canon.lits);
  double cached;
  if (cache_lookup(key, cached, out)) return cached;

  double value;
  auto first_negative =
      std::find_if(canon.lits.begin(), canon.lits.end(), [](const Literal& l) { return l.negated; });
  if (first_negative != canon.lits.end() && !absorb_negatives_) {
    // Re-expand the exclusion: P(v!=x & R) = P(R) - P(v=x & R).
    Literal positive{first_negative->var, first_negative->value, false};
    std::vector<Literal> rest(canon.lits.begin(), canon.lits.end());
    rest.erase(rest.begin() + (first_negative - canon.lits.begin()));
    std::vector<Literal> with_positive = rest;
    with_positive.push_back(positive);

    ++negation_eliminations_;
    DerivationNode r_node, ar_node;
    double r_value = rest.empty() ? 1.0 : eval_term(rest, depth + 1, out ? &r_node : nullptr);
    if (rest.empty()) r_node.rule = Rule::Tautology, r_node.value = 1.0;
    double ar_value = eval_term(with_positive, depth + 1, out ? &ar_node : nullptr);
    value = r_value - ar_value;
    if (out) {
      out->rule = Rule::NegElim;
      out->expr = key;
      out->value = value;
      out->children.push_back(std::move(r_node));
      out->children.push_back(std::move(ar_node));
    }
  } else {
    value = chain_rule(canon.lits);
    if (out) {
      out->rule = Rule::ChainRuleFactor;
      out->expr = key;
      out->value = value;
    }
  }
  cache_store(key, value);
  return value;
}

double Evaluator::chain_rule(const std::vector<Literal>& lits) {
  // P(L1 & .. & Ln) = P(L1 | L2..Ln) * ... * P(Ln), evaluated right to left
  // with a running suffix probability that short-circuits at zero mass.
  double product = 1.0;
  for (std::size_t i = lits.size(); i-- > 0;) {
    if (product <= kZeroMassThreshold) return 0.0;
    SVQuery q;
    q.target = lits[i];
    q.evidence.assign(lits.begin() + static_cast<std::ptrdiff_t>(i) + 1, lits.end());
    product *= oracle_.prob(kb_, q);
  }
  return product;
}

}  // namespace ppq
