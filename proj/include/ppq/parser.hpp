#pragma once

#include <string>

#include "ppq/model.hpp"
#include "ppq/proposition.hpp"

namespace ppq {

// Query grammar:
//   query   := [ "P(" ] prop [ "given" prop ] [ ")" ]
//   prop    := conj { "|" conj }
//   conj    := unary { "&" unary }
//   unary   := "!" unary | "(" prop ")" | literal
//   literal := IDENT | IDENT "=" IDENT | IDENT "!=" IDENT
// Bare IDENT / "!" IDENT sugar requires a binary t/f domain.
QueryExpr parse_query(const std::string& text, const KnowledgeBase& kb);

// Parses a single proposition (no "given" clause, no P(...) wrapper).
Prop parse_prop(const std::string& text, const KnowledgeBase& kb);

}  // namespace ppq
