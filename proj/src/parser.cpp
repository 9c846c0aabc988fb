#include "ppq/parser.hpp"

#include <cctype>
#include <vector>

#include "ppq/errors.hpp"

namespace ppq {

namespace {

enum class Tok { Ident, LParen, RParen, Or, And, Not, Eq, Neq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      out.push_back({Tok::Ident, s.substr(start, i - start), start});
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", i}); break;
      case ')': out.push_back({Tok::RParen, ")", i}); break;
      case '|': out.push_back({Tok::Or, "|", i}); break;
      case '&': out.push_back({Tok::And, "&", i}); break;
      case '=': out.push_back({Tok::Eq, "=", i}); break;
      case '!':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          out.push_back({Tok::Neq, "!=", i});
          ++i;
        } else {
          out.push_back({Tok::Not, "!", i});
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const KnowledgeBase& kb) : kb_(kb), tokens_(lex(text)) {}

  QueryExpr parse_query() {
    bool wrapped = false;
    if (peek().kind == Tok::Ident && peek().text == "P" && tokens_[pos_ + 1].kind == Tok::LParen) {
      pos_ += 2;
      wrapped = true;
    }
    QueryExpr q;
    q.target = parse_prop();
    if (peek().kind == Tok::Ident && peek().text == "given") {
      advance();
      q.evidence = parse_prop();
    }
    if (wrapped) expect(Tok::RParen, "')'");
    expect(Tok::End, "end of query");
    return q;
  }

  Prop parse_prop_only() {
    Prop p = parse_prop();
    expect(Tok::End, "end of input");
    return p;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      throw ParseError(std::string("expected ") + what, peek().pos);
    advance();
  }

  Prop parse_prop() {
    std::vector<Prop> terms;
    terms.push_back(parse_conj());
    while (peek().kind == Tok::Or) {
      advance();
      terms.push_back(parse_conj());
    }
    return Prop::make_or(std::move(terms));
  }

  Prop parse_conj() {
    std::vector<Prop> terms;
    terms.push_back(parse_unary());
    while (peek().kind == Tok::And) {
      advance();
      terms.push_back(parse_unary());
    }
    return Prop::make_and(std::move(terms));
  }

  Prop parse_unary() {
    if (peek().kind == Tok::Not) {
      advance();
      Prop p = Prop::make_not(parse_unary());
      if (p.kind == PropKind::Lit) p.lit = canonicalize_literal(kb_, p.lit);
      return p;
    }
    if (peek().kind == Tok::LParen) {
      advance();
      Prop p = parse_prop();
      expect(Tok::RParen, "')'");
      return p;
    }
    return parse_literal();
  }

  Prop parse_literal() {
    if (peek().kind != Tok::Ident)
      throw ParseError("expected a variable name", peek().pos);
    Token name = advance();
    auto var = kb_.find_variable(name.text);
    if (!var) throw ParseError("unknown variable '" + name.text + "'", name.pos);
    const Variable& v = kb_.variable(*var);

    if (peek().kind == Tok::Eq || peek().kind == Tok::Neq) {
      bool negated = advance().kind == Tok::Neq;
      if (peek().kind != Tok::Ident)
        throw ParseError("expected a value name", peek().pos);
      Token value = advance();
      int idx = v.value_index(value.text);
      if (idx < 0)
        throw ParseError("unknown value '" + value.text + "' for variable '" + v.name + "'",
                         value.pos);
      return Prop::make_lit(canonicalize_literal(kb_, Literal{*var, idx, negated}));
    }

    if (!v.is_binary_tf())
      throw ParseError("bare syntax requires a binary t/f variable; use '" + v.name + "=<value>'",
                       name.pos);
    return Prop::make_lit(Literal{*var, 0, false});  // values are ["t","f"]
  }

  const KnowledgeBase& kb_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

QueryExpr parse_query(const std::string& text, const KnowledgeBase& kb) {
  return Parser(text, kb).parse_query();
}

Prop parse_prop(const std::string& text, const KnowledgeBase& kb) {
  return Parser(text, kb).parse_prop_only();
}

}  // namespace ppq
