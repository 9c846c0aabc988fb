#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "ppq/model.hpp"

namespace ppq {

// One instantiated variable. `negated` means "variable != value".
struct Literal {
  int var = -1;
  int value = -1;
  bool negated = false;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// For 2-value domains a negative literal is equivalent to the positive
// literal on the other value; return that canonical form.
Literal canonicalize_literal(const KnowledgeBase& kb, Literal lit);

enum class PropKind { Lit, Not, And, Or };

// Proposition AST. And/Or keep flattened child lists; negation over a single
// literal lives in the literal's polarity flag, never as a Not node.
struct Prop {
  PropKind kind = PropKind::Lit;
  Literal lit;
  std::vector<Prop> children;

  bool operator==(const Prop&) const = default;

  static Prop make_lit(Literal l);
  static Prop make_not(Prop child);
  static Prop make_and(std::vector<Prop> children);
  static Prop make_or(std::vector<Prop> children);
};

struct QueryExpr {
  Prop target;
  std::optional<Prop> evidence;
};

// De Morgan pass: rewrite every Or(c1..ck) as Not(And(Not(c1)..Not(ck))).
// The result contains only And/Not/Lit nodes.
Prop to_cn_form(const Prop& p);

// Single linear pass over a CN-form proposition: drops Not-over-Not pairs and
// absorbs Not-over-Lit into literal polarity.
Prop eliminate_redundant_negations(const Prop& p);

// Number of Not nodes whose subtree mentions >= 2 distinct variables
// (the paper-facing q of a normalized query).
int count_spanning_negations(const Prop& p);

// Number of literal occurrences (the query size m).
int count_literal_refs(const Prop& p);

struct CanonicalTerm {
  enum class Kind { Term, Contradiction, Tautology };
  Kind kind = Kind::Tautology;
  std::vector<Literal> lits;  // sorted by (var, value, negated), deduplicated

  bool is_term() const { return kind == Kind::Term; }
  bool is_contradiction() const { return kind == Kind::Contradiction; }
  bool is_tautology() const { return kind == Kind::Tautology; }
};

// Deduplicate, sort, detect unsatisfiable pairs, drop exclusions implied by a
// positive literal, and turn d-1 distinct exclusions into the remaining
// positive value.
CanonicalTerm canonicalize_conjunction(const KnowledgeBase& kb, std::vector<Literal> lits);

// Renders in the query grammar so output re-parses: `x` / `!x` for binary
// t/f variables, `v=val` / `v!=val` otherwise, `&`, `|`, `!(...)`.
std::string print_literal(const KnowledgeBase& kb, const Literal& lit);
std::string print_prop(const KnowledgeBase& kb, const Prop& p);
std::string print_term(const KnowledgeBase& kb, const std::vector<Literal>& lits);

}  // namespace ppq
