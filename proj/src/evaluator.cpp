#include "semfo/evaluator.hpp"

namespace semfo {

namespace {

struct CNode {
  NodeKind kind;
  std::size_t rel = 0;
  std::size_t arity = 0;
  std::vector<std::size_t> slots;
  CmpOp op = CmpOp::eq;
  int left = -1, right = -1;
  const Family* family = nullptr;
};

class Compiled {
public:
  Compiled(const Formula& f, const Interpretation& pi, const Assignment& s, const BuiltinInterpretation* rho)
      : pi_(pi), rho_(rho) {
    for (const auto& [name, pos] : s) {
      if (pos >= pi.size()) throw EvalError("assignment of '" + name + "' outside the universe");
      scope_.emplace_back(name, env_.size());
      env_.push_back(pos);
    }
    root_ = build(f);
  }

  EvalResult run(EvalOptions opts) {
    opts_ = opts;
    Element v = eval(root_, 1);
    return {std::move(v), stats_};
  }

private:
  const Interpretation& pi_;
  const BuiltinInterpretation* rho_;
  std::vector<CNode> nodes_;
  std::vector<std::pair<std::string, std::size_t>> scope_;
  std::vector<std::size_t> env_;
  int root_ = -1;
  EvalOptions opts_;
  EvalStats stats_;
  std::vector<std::size_t> args_;

  std::size_t lookup(const std::string& v) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == v) return it->second;
    throw EvalError("unbound variable '" + v + "'");
  }

  int build(const Formula& f) {
    CNode n;
    n.kind = f->kind;
    switch (f->kind) {
      case NodeKind::var_eq:
      case NodeKind::var_neq:
        n.slots = {lookup(f->vars[0]), lookup(f->vars[1])};
        break;
      case NodeKind::atom:
      case NodeKind::neg_atom: {
        auto r = pi_.relation_index(f->symbol);
        if (!r) throw EvalError("unknown relation '" + f->symbol + "'");
        if (pi_.relations()[*r].arity != f->vars.size()) throw EvalError("arity mismatch for '" + f->symbol + "'");
        n.rel = *r;
        for (const auto& v : f->vars) n.slots.push_back(lookup(v));
        break;
      }
      case NodeKind::builtin:
      case NodeKind::neg_builtin: {
        if (!rho_) throw EvalError("built-in '" + f->symbol + "' used without a built-in interpretation");
        const auto& e = rho_->entry(f->symbol);
        if (e.arity != f->vars.size()) throw EvalError("arity mismatch for '" + f->symbol + "'");
        n.family = f->kind == NodeKind::builtin ? &e.positive : &e.negative;
        for (const auto& v : f->vars) n.slots.push_back(lookup(v));
        break;
      }
      case NodeKind::conj:
      case NodeKind::disj:
      case NodeKind::compare:
        if ((f->op == CmpOp::leq || f->op == CmpOp::nleq) && f->kind == NodeKind::compare &&
            !pi_.semiring().ordered)
          throw UnsupportedOrder("order comparison over unordered " + std::string(pi_.semiring().name()));
        n.op = f->op;
        n.left = build(f->left);
        n.right = build(f->right);
        break;
      case NodeKind::exists:
      case NodeKind::forall: {
        std::size_t slot = env_.size();
        env_.push_back(0);
        n.slots = {slot};
        scope_.emplace_back(f->vars[0], slot);
        n.left = build(f->left);
        scope_.pop_back();
        break;
      }
    }
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size() - 1);
  }

  Element eval(int id, std::uint64_t depth) {
    const CNode& n = nodes_[id];
    const Semiring& k = pi_.semiring();
    ++stats_.calls;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (!is_quantifier(n.kind)) ++stats_.node_evaluations;
    switch (n.kind) {
      case NodeKind::var_eq: return k.from_bool(env_[n.slots[0]] == env_[n.slots[1]]);
      case NodeKind::var_neq: return k.from_bool(env_[n.slots[0]] != env_[n.slots[1]]);
      case NodeKind::atom:
      case NodeKind::neg_atom: {
        std::size_t rank = 0;
        for (auto s : n.slots) rank = rank * pi_.size() + env_[s];
        return pi_.value(n.rel, rank, n.kind == NodeKind::neg_atom);
      }
      case NodeKind::builtin:
      case NodeKind::neg_builtin: {
        args_.clear();
        for (auto s : n.slots) args_.push_back(env_[s] + 1);
        return n.family->at(k, pi_.size(), args_);
      }
      case NodeKind::conj: {
        ++stats_.conj;
        Element a = eval(n.left, depth + 1);
        if (opts_.short_circuit && k.is_zero(a)) return a;
        return k.mul(a, eval(n.right, depth + 1));
      }
      case NodeKind::disj: {
        ++stats_.disj;
        Element a = eval(n.left, depth + 1);
        return k.add(a, eval(n.right, depth + 1));
      }
      case NodeKind::compare: {
        ++stats_.comparisons;
        Element a = eval(n.left, depth + 1);
        Element b = eval(n.right, depth + 1);
        switch (n.op) {
          case CmpOp::eq: return k.from_bool(equal(a, b));
          case CmpOp::neq: return k.from_bool(!equal(a, b));
          case CmpOp::leq: return k.from_bool(k.leq(a, b));
          case CmpOp::nleq: return k.from_bool(!k.leq(a, b));
        }
        return k.zero;
      }
      case NodeKind::exists:
      case NodeKind::forall: {
        bool ex = n.kind == NodeKind::exists;
        std::size_t slot = n.slots[0];
        std::size_t saved = env_[slot];
        Element acc = ex ? k.zero : k.one;
        for (std::size_t a = 0; a < pi_.size(); ++a) {
          env_[slot] = a;
          ++stats_.quantifier_expansions;
          Element v = eval(n.left, depth + 1);
          acc = ex ? k.add(acc, v) : k.mul(acc, v);
          if (!ex && opts_.short_circuit && k.is_zero(acc)) break;
        }
        env_[slot] = saved;
        return acc;
      }
    }
    return k.zero;
  }
};

}  // namespace

EvalResult evaluate(const Formula& f, const Interpretation& pi, const Assignment& s,
                    const BuiltinInterpretation* rho, EvalOptions opts) {
  Compiled c(f, pi, s, rho);
  return c.run(opts);
}

mpz_class evaluation_bound(const Formula& f, std::size_t n) {
  auto c = count(f);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), n, c.quantifiers);
  return mpz_class(2 * (c.conj + c.disj + c.compare) + 1) * p;
}

}  // namespace semfo
