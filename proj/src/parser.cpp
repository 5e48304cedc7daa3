#include "semfo/formula.hpp"

#include <cctype>

namespace semfo {

namespace {

enum class Tok { ident, tilde, lparen, rparen, comma, dot, amp, bar, eq, neq, leq, nleq, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t p = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
        ++i;
      out.push_back({Tok::ident, std::string(s.substr(p, i - p)), p});
      continue;
    }
    auto starts = [&](std::string_view t) { return s.substr(i, t.size()) == t; };
    if (starts("!<=")) {
      out.push_back({Tok::nleq, "!<=", p});
      i += 3;
    } else if (starts("!=")) {
      out.push_back({Tok::neq, "!=", p});
      i += 2;
    } else if (starts("<=")) {
      out.push_back({Tok::leq, "<=", p});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '~': k = Tok::tilde; break;
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        case ',': k = Tok::comma; break;
        case '.': k = Tok::dot; break;
        case '&': k = Tok::amp; break;
        case '|': k = Tok::bar; break;
        case '=': k = Tok::eq; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", p);
      }
      out.push_back({k, std::string(1, c), p});
      ++i;
    }
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
public:
  Parser(std::string_view text, const Vocabulary& vocab) : toks_(lex(text)), vocab_(vocab) {}

  Formula run() {
    Formula f = comparison();
    if (peek().kind != Tok::end) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

private:
  std::vector<Token> toks_;
  const Vocabulary& vocab_;
  std::size_t i_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) {
      const auto& t = peek();
      throw ParseError(std::string("expected ") + what + (t.kind == Tok::end ? " before end of input" : ", found '" + t.text + "'"),
                       t.pos);
    }
    next();
  }

  static std::optional<CmpOp> cmp_op(Tok k) {
    switch (k) {
      case Tok::eq: return CmpOp::eq;
      case Tok::neq: return CmpOp::neq;
      case Tok::leq: return CmpOp::leq;
      case Tok::nleq: return CmpOp::nleq;
      default: return std::nullopt;
    }
  }

  Formula comparison() {
    Formula a = disjunction();
    if (auto op = cmp_op(peek().kind)) {
      next();
      Formula b = disjunction();
      if (cmp_op(peek().kind))
        throw ParseError("comparisons do not associate; add parentheses", peek().pos);
      return compare(*op, a, b);
    }
    return a;
  }

  Formula disjunction() {
    Formula a = conjunction();
    while (peek().kind == Tok::bar) {
      next();
      a = disj(a, conjunction());
    }
    return a;
  }

  Formula conjunction() {
    Formula a = unary();
    while (peek().kind == Tok::amp) {
      next();
      a = conj(a, unary());
    }
    return a;
  }

  Formula unary() {
    const Token& t = peek();
    if (t.kind == Tok::ident && (t.text == "exists" || t.text == "forall") && peek(1).kind == Tok::ident) {
      bool ex = t.text == "exists";
      next();
      std::vector<std::string> xs;
      while (peek().kind == Tok::ident) xs.push_back(next().text);
      expect(Tok::dot, "'.'");
      Formula body = disjunction();
      return ex ? exists_all(xs, body) : forall_all(xs, body);
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    if (t.kind == Tok::lparen) {
      next();
      Formula f = comparison();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (t.kind == Tok::tilde) {
      next();
      if (peek().kind != Tok::ident || peek(1).kind != Tok::lparen)
        throw ParseError("negation applies only to atoms", peek().pos);
      return atomic(true);
    }
    if (t.kind != Tok::ident) {
      throw ParseError(t.kind == Tok::end ? "unexpected end of input" : "unexpected '" + t.text + "'", t.pos);
    }
    if (peek(1).kind == Tok::lparen) return atomic(false);
    std::string x = next().text;
    const Token& op = peek();
    if (op.kind != Tok::eq && op.kind != Tok::neq)
      throw ParseError("expected '=' or '!=' after variable '" + x + "'", op.pos);
    next();
    if (peek().kind != Tok::ident || peek(1).kind == Tok::lparen)
      throw ParseError("expected variable", peek().pos);
    std::string y = next().text;
    return op.kind == Tok::eq ? var_eq(x, y) : var_neq(x, y);
  }

  Formula atomic(bool negated) {
    const Token name = next();
    expect(Tok::lparen, "'('");
    std::vector<std::string> vars;
    if (peek().kind != Tok::rparen) {
      while (true) {
        if (peek().kind != Tok::ident) throw ParseError("expected variable", peek().pos);
        vars.push_back(next().text);
        if (peek().kind == Tok::comma) {
          next();
          continue;
        }
        break;
      }
    }
    expect(Tok::rparen, "')'");
    if (auto r = vocab_.relation_index(name.text)) {
      if (vocab_.relations[*r].arity != vars.size())
        throw ParseError("arity mismatch for '" + name.text + "'", name.pos);
      return negated ? neg_atom(name.text, vars) : atom(name.text, vars);
    }
    if (auto b = vocab_.builtin_index(name.text)) {
      if (vocab_.builtins[*b].arity != vars.size())
        throw ParseError("arity mismatch for '" + name.text + "'", name.pos);
      return negated ? neg_builtin_atom(name.text, vars) : builtin_atom(name.text, vars);
    }
    throw ParseError("unknown symbol '" + name.text + "'", name.pos);
  }
};

}  // namespace

Formula parse_formula(std::string_view text, const Vocabulary& vocab) { return Parser(text, vocab).run(); }

}  // namespace semfo
