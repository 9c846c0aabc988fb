#include "ppq/proposition.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ppq/errors.hpp"

namespace ppq {

Literal canonicalize_literal(const KnowledgeBase& kb, Literal lit) {
  const Variable& v = kb.variable(lit.var);
  if (lit.value < 0 || lit.value >= static_cast<int>(v.values.size()))
    throw ValidationError("value index out of range for variable '" + v.name + "'");
  if (lit.negated && v.values.size() == 2) {
    lit.value = 1 - lit.value;
    lit.negated = false;
  }
  return lit;
}

Prop Prop::make_lit(Literal l) {
  Prop p;
  p.kind = PropKind::Lit;
  p.lit = l;
  return p;
}

Prop Prop::make_not(Prop child) {
  if (child.kind == PropKind::Lit) {
    child.lit.negated = !child.lit.negated;
    return child;
  }
  if (child.kind == PropKind::Not) return std::move(child.children.front());
  Prop p;
  p.kind = PropKind::Not;
  p.children.push_back(std::move(child));
  return p;
}

static Prop make_nary(PropKind kind, std::vector<Prop> children) {
  std::vector<Prop> flat;
  for (Prop& c : children) {
    if (c.kind == kind)
      for (Prop& g : c.children) flat.push_back(std::move(g));
    else
      flat.push_back(std::move(c));
  }
  if (flat.size() == 1) return std::move(flat.front());
  Prop p;
  p.kind = kind;
  p.children = std::move(flat);
  return p;
}

Prop Prop::make_and(std::vector<Prop> children) { return make_nary(PropKind::And, std::move(children)); }
Prop Prop::make_or(std::vector<Prop> children) { return make_nary(PropKind::Or, std::move(children)); }

Prop to_cn_form(const Prop& p) {
  switch (p.kind) {
    case PropKind::Lit:
      return p;
    case PropKind::Not:
      return Prop::make_not(to_cn_form(p.children.front()));
    case PropKind::And: {
      std::vector<Prop> kids;
      kids.reserve(p.children.size());
      for (const Prop& c : p.children) kids.push_back(to_cn_form(c));
      return Prop::make_and(std::move(kids));
    }
    case PropKind::Or: {
      // X1 v X2  =>  !(!X1 & !X2)
      std::vector<Prop> kids;
      kids.reserve(p.children.size());
      for (const Prop& c : p.children) kids.push_back(Prop::make_not(to_cn_form(c)));
      return Prop::make_not(Prop::make_and(std::move(kids)));
    }
  }
  return p;
}

Prop eliminate_redundant_negations(const Prop& p) {
  switch (p.kind) {
    case PropKind::Lit:
      return p;
    case PropKind::Not: {
      Prop c = eliminate_redundant_negations(p.children.front());
      if (c.kind == PropKind::Not) return std::move(c.children.front());
      if (c.kind == PropKind::Lit) {
        c.lit.negated = !c.lit.negated;
        return c;
      }
      Prop out;
      out.kind = PropKind::Not;
      out.children.push_back(std::move(c));
      return out;
    }
    case PropKind::And:
    case PropKind::Or: {
      std::vector<Prop> kids;
      kids.reserve(p.children.size());
      for (const Prop& c : p.children) kids.push_back(eliminate_redundant_negations(c));
      return make_nary(p.kind, std::move(kids));
    }
  }
  return p;
}

namespace {

int count_spanning_impl(const Prop& p, std::set<int>& vars) {
  switch (p.kind) {
    case PropKind::Lit:
      vars.insert(p.lit.var);
      return 0;
    case PropKind::Not: {
      std::set<int> sub;
      int count = count_spanning_impl(p.children.front(), sub);
      if (sub.size() >= 2) ++count;
      vars.insert(sub.begin(), sub.end());
      return count;
    }
    case PropKind::And:
    case PropKind::Or: {
      int count = 0;
      for (const Prop& c : p.children) count += count_spanning_impl(c, vars);
      return count;
    }
  }
  return 0;
}

}  // namespace

int count_spanning_negations(const Prop& p) {
  std::set<int> vars;
  return count_spanning_impl(p, vars);
}

int count_literal_refs(const Prop& p) {
  if (p.kind == PropKind::Lit) return 1;
  int n = 0;
  for (const Prop& c : p.children) n += count_literal_refs(c);
  return n;
}

CanonicalTerm canonicalize_conjunction(const KnowledgeBase& kb, std::vector<Literal> lits) {
  struct PerVar {
    std::set<int> positive;
    std::set<int> excluded;
  };
  std::map<int, PerVar> by_var;
  for (Literal l : lits) {
    l = canonicalize_literal(kb, l);
    if (l.negated)
      by_var[l.var].excluded.insert(l.value);
    else
      by_var[l.var].positive.insert(l.value);
  }

  CanonicalTerm out;
  for (const auto& [var, entry] : by_var) {
    const std::size_t domain = kb.variable(var).values.size();
    if (entry.positive.size() >= 2) {
      out.kind = CanonicalTerm::Kind::Contradiction;
      return out;
    }
    if (entry.positive.size() == 1) {
      int v = *entry.positive.begin();
      if (entry.excluded.count(v)) {
        out.kind = CanonicalTerm::Kind::Contradiction;
        return out;
      }
      out.lits.push_back(Literal{var, v, false});  // exclusions are implied
      continue;
    }
    if (entry.excluded.size() >= domain) {
      out.kind = CanonicalTerm::Kind::Contradiction;
      return out;
    }
    if (entry.excluded.size() == domain - 1) {
      // All but one value ruled out: the remaining value must hold.
      for (int v = 0; v < static_cast<int>(domain); ++v)
        if (!entry.excluded.count(v)) {
          out.lits.push_back(Literal{var, v, false});
          break;
        }
      continue;
    }
    for (int v : entry.excluded) out.lits.push_back(Literal{var, v, true});
  }
  std::sort(out.lits.begin(), out.lits.end());
  out.kind = out.lits.empty() ? CanonicalTerm::Kind::Tautology : CanonicalTerm::Kind::Term;
  return out;
}

std::string print_literal(const KnowledgeBase& kb, const Literal& lit) {
  const Variable& v = kb.variable(lit.var);
  if (v.is_binary_tf()) {
    bool is_true = (lit.value == 0) != lit.negated;
    return is_true ? v.name : "!" + v.name;
  }
  return v.name + (lit.negated ? "!=" : "=") + v.values[static_cast<std::size_t>(lit.value)];
}

namespace {

void print_impl(const KnowledgeBase& kb, const Prop& p, bool parenthesize_or, std::string& out) {
  switch (p.kind) {
    case PropKind::Lit:
      out += print_literal(kb, p.lit);
      return;
    case PropKind::Not:
      out += "!(";
      print_impl(kb, p.children.front(), false, out);
      out += ")";
      return;
    case PropKind::And:
      for (std::size_t i = 0; i < p.children.size(); ++i) {
        if (i) out += " & ";
        print_impl(kb, p.children[i], true, out);
      }
      return;
    case PropKind::Or:
      if (parenthesize_or) out += "(";
      for (std::size_t i = 0; i < p.children.size(); ++i) {
        if (i) out += " | ";
        print_impl(kb, p.children[i], false, out);
      }
      if (parenthesize_or) out += ")";
      return;
  }
}

}  // namespace

std::string print_prop(const KnowledgeBase& kb, const Prop& p) {
  std::string out;
  print_impl(kb, p, false, out);
  return out;
}

std::string print_term(const KnowledgeBase& kb, const std::vector<Literal>& lits) {
  std::string out;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i) out += " & ";
    out += print_literal(kb, lits[i]);
  }
  return out;
}

}  // namespace ppq
