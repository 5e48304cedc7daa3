#include "semfo/formula.hpp"

#include <algorithm>
#include <functional>

namespace semfo {

std::optional<std::size_t> Vocabulary::relation_index(std::string_view name) const {
  for (std::size_t i = 0; i < relations.size(); ++i)
    if (relations[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Vocabulary::builtin_index(std::string_view name) const {
  for (std::size_t i = 0; i < builtins.size(); ++i)
    if (builtins[i].name == name) return i;
  return std::nullopt;
}

void Vocabulary::check() const {
  std::set<std::string> seen;
  for (const auto& s : relations)
    if (!seen.insert(s.name).second) throw Error("duplicate symbol '" + s.name + "'");
  for (const auto& s : builtins) {
    if (!seen.insert(s.name).second) throw Error("duplicate symbol '" + s.name + "'");
    if (s.arity == 0) throw Error("built-in symbol '" + s.name + "' must have positive arity");
  }
}

namespace {

Formula make(NodeKind k, std::string sym, std::vector<std::string> vars, Formula l = nullptr,
             Formula r = nullptr, CmpOp op = CmpOp::eq) {
  return std::make_shared<const Node>(Node{k, std::move(sym), std::move(vars), op, std::move(l), std::move(r)});
}

}  // namespace

Formula var_eq(std::string x, std::string y) { return make(NodeKind::var_eq, "", {std::move(x), std::move(y)}); }
Formula var_neq(std::string x, std::string y) { return make(NodeKind::var_neq, "", {std::move(x), std::move(y)}); }
Formula atom(std::string rel, std::vector<std::string> vars) { return make(NodeKind::atom, std::move(rel), std::move(vars)); }
Formula neg_atom(std::string rel, std::vector<std::string> vars) {
  return make(NodeKind::neg_atom, std::move(rel), std::move(vars));
}
Formula builtin_atom(std::string sym, std::vector<std::string> vars) {
  return make(NodeKind::builtin, std::move(sym), std::move(vars));
}
Formula neg_builtin_atom(std::string sym, std::vector<std::string> vars) {
  return make(NodeKind::neg_builtin, std::move(sym), std::move(vars));
}
Formula conj(Formula a, Formula b) { return make(NodeKind::conj, "", {}, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return make(NodeKind::disj, "", {}, std::move(a), std::move(b)); }
Formula compare(CmpOp op, Formula a, Formula b) {
  return make(NodeKind::compare, "", {}, std::move(a), std::move(b), op);
}
Formula exists(std::string x, Formula body) { return make(NodeKind::exists, "", {std::move(x)}, std::move(body)); }
Formula forall(std::string x, Formula body) { return make(NodeKind::forall, "", {std::move(x)}, std::move(body)); }

Formula conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) throw Error("empty conjunction");
  Formula f = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) f = conj(f, parts[i]);
  return f;
}

Formula disj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) throw Error("empty disjunction");
  Formula f = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) f = disj(f, parts[i]);
  return f;
}

Formula exists_all(const std::vector<std::string>& xs, Formula body) {
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = exists(*it, body);
  return body;
}

Formula forall_all(const std::vector<std::string>& xs, Formula body) {
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = forall(*it, body);
  return body;
}

bool is_quantifier(NodeKind k) { return k == NodeKind::exists || k == NodeKind::forall; }

bool is_literal(NodeKind k) {
  switch (k) {
    case NodeKind::var_eq:
    case NodeKind::var_neq:
    case NodeKind::atom:
    case NodeKind::neg_atom:
    case NodeKind::builtin:
    case NodeKind::neg_builtin: return true;
    default: return false;
  }
}

bool same_formula(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->symbol != b->symbol || a->vars != b->vars) return false;
  if (a->kind == NodeKind::compare && a->op != b->op) return false;
  return same_formula(a->left, b->left) && same_formula(a->right, b->right);
}

std::string_view cmp_symbol(CmpOp op) {
  switch (op) {
    case CmpOp::eq: return "=";
    case CmpOp::neq: return "!=";
    case CmpOp::leq: return "<=";
    case CmpOp::nleq: return "!<=";
  }
  return "?";
}

namespace {

std::string args(const std::vector<std::string>& vs) {
  std::string s = "(";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ",";
    s += vs[i];
  }
  return s + ")";
}

std::string wrap(const Formula& f, bool paren) {
  std::string s = to_string(f);
  return paren ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const Formula& f) {
  const auto k = f->kind;
  switch (k) {
    case NodeKind::var_eq: return f->vars[0] + " = " + f->vars[1];
    case NodeKind::var_neq: return f->vars[0] + " != " + f->vars[1];
    case NodeKind::atom:
    case NodeKind::builtin: return f->symbol + args(f->vars);
    case NodeKind::neg_atom:
    case NodeKind::neg_builtin: return "~" + f->symbol + args(f->vars);
    case NodeKind::conj: {
      auto lk = f->left->kind, rk = f->right->kind;
      bool lp = lk == NodeKind::disj || lk == NodeKind::compare || is_quantifier(lk);
      bool rp = rk == NodeKind::conj || rk == NodeKind::disj || rk == NodeKind::compare || is_quantifier(rk);
      return wrap(f->left, lp) + " & " + wrap(f->right, rp);
    }
    case NodeKind::disj: {
      auto lk = f->left->kind, rk = f->right->kind;
      bool lp = lk == NodeKind::compare || is_quantifier(lk);
      bool rp = rk == NodeKind::disj || rk == NodeKind::compare || is_quantifier(rk);
      return wrap(f->left, lp) + " | " + wrap(f->right, rp);
    }
    case NodeKind::compare:
      return wrap(f->left, f->left->kind == NodeKind::compare) + " " + std::string(cmp_symbol(f->op)) + " " +
             wrap(f->right, f->right->kind == NodeKind::compare);
    case NodeKind::exists:
    case NodeKind::forall:
      return std::string(k == NodeKind::exists ? "exists " : "forall ") + f->vars[0] + ". " +
             wrap(f->left, f->left->kind == NodeKind::compare);
  }
  return "?";
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&, std::multiset<std::string>&)> go = [&](const Formula& g,
                                                                           std::multiset<std::string>& bound) {
    if (is_literal(g->kind)) {
      for (const auto& v : g->vars)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    if (is_quantifier(g->kind)) {
      auto it = bound.insert(g->vars[0]);
      go(g->left, bound);
      bound.erase(it);
      return;
    }
    go(g->left, bound);
    go(g->right, bound);
  };
  std::multiset<std::string> bound;
  go(f, bound);
  return out;
}

FormulaCounts count(const Formula& f) {
  FormulaCounts c;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    switch (g->kind) {
      case NodeKind::conj: ++c.conj; break;
      case NodeKind::disj: ++c.disj; break;
      case NodeKind::compare:
        ++c.compare;
        if (g->op == CmpOp::leq || g->op == CmpOp::nleq) c.uses_order = true;
        break;
      case NodeKind::exists:
      case NodeKind::forall: ++c.quantifiers; break;
      case NodeKind::builtin:
      case NodeKind::neg_builtin:
        c.uses_builtins = true;
        ++c.literals;
        break;
      default: ++c.literals; break;
    }
    if (g->left) go(g->left);
    if (g->right) go(g->right);
  };
  go(f);
  return c;
}

std::vector<std::string> validate_strict(const Formula& f) {
  std::vector<std::string> out;
  std::function<bool(const Formula&)> has_compare = [&](const Formula& g) -> bool {
    if (!g) return false;
    return g->kind == NodeKind::compare || has_compare(g->left) || has_compare(g->right);
  };
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (!g) return;
    if (g->kind == NodeKind::compare) {
      if (has_compare(g->left) || has_compare(g->right))
        out.push_back("nested comparison in " + to_string(g));
      return;
    }
    go(g->left);
    go(g->right);
  };
  go(f);
  return out;
}

std::vector<std::string> check_symbols(const Formula& f, const Vocabulary& vocab) {
  std::vector<std::string> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (!g) return;
    if (g->kind == NodeKind::atom || g->kind == NodeKind::neg_atom) {
      auto i = vocab.relation_index(g->symbol);
      if (!i)
        out.push_back("unknown relation '" + g->symbol + "'");
      else if (vocab.relations[*i].arity != g->vars.size())
        out.push_back("arity mismatch for '" + g->symbol + "'");
    } else if (g->kind == NodeKind::builtin || g->kind == NodeKind::neg_builtin) {
      auto i = vocab.builtin_index(g->symbol);
      if (!i)
        out.push_back("unknown built-in '" + g->symbol + "'");
      else if (vocab.builtins[*i].arity != g->vars.size())
        out.push_back("arity mismatch for '" + g->symbol + "'");
    }
    go(g->left);
    go(g->right);
  };
  go(f);
  return out;
}

}  // namespace semfo
