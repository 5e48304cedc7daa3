#pragma once

// Test-side reference implementations and random generators. Nothing here calls
// the library's evaluators; they only share the data types.

#include "semfo/circuit.hpp"
#include "semfo/formula.hpp"
#include "semfo/interpretation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>

namespace oracle {

using namespace semfo;

// ---------------------------------------------------------------- classical FO

struct Structure {
  std::size_t n = 0;
  std::map<std::string, std::set<Tuple>> rel;
};

inline bool holds(const Structure& a, const Formula& f, std::map<std::string, std::size_t>& s) {
  auto args = [&] {
    Tuple t;
    for (const auto& v : f->vars) t.push_back(s.at(v));
    return t;
  };
  switch (f->kind) {
    case NodeKind::var_eq: return s.at(f->vars[0]) == s.at(f->vars[1]);
    case NodeKind::var_neq: return s.at(f->vars[0]) != s.at(f->vars[1]);
    case NodeKind::atom: return a.rel.at(f->symbol).count(args()) > 0;
    case NodeKind::neg_atom: return a.rel.at(f->symbol).count(args()) == 0;
    case NodeKind::conj: return holds(a, f->left, s) && holds(a, f->right, s);
    case NodeKind::disj: return holds(a, f->left, s) || holds(a, f->right, s);
    case NodeKind::exists:
    case NodeKind::forall: {
      const std::string& x = f->vars[0];
      auto saved = s.find(x) == s.end() ? std::nullopt : std::optional<std::size_t>(s[x]);
      bool any = false, all = true;
      for (std::size_t i = 0; i < a.n; ++i) {
        s[x] = i;
        bool v = holds(a, f->left, s);
        any = any || v;
        all = all && v;
      }
      if (saved)
        s[x] = *saved;
      else
        s.erase(x);
      return f->kind == NodeKind::exists ? any : all;
    }
    default: throw std::logic_error("classical oracle: unsupported node");
  }
}

inline bool holds(const Structure& a, const Formula& f) {
  std::map<std::string, std::size_t> s;
  return holds(a, f, s);
}

inline std::vector<std::string> universe(std::size_t n) {
  std::vector<std::string> u;
  for (std::size_t i = 1; i <= n; ++i) u.push_back(std::to_string(i));
  return u;
}

// ---------------------------------------------------------------- circuits

inline Element naive_gate(const Circuit& c, std::size_t id, const std::vector<Element>& x) {
  const Semiring& k = c.k;
  const Gate* g = nullptr;
  for (const auto& h : c.gates)
    if (h.id == id) g = &h;
  if (!g) throw std::logic_error("naive circuit oracle: unknown gate");
  std::vector<Element> in;
  for (auto p : g->preds) in.push_back(naive_gate(c, p, x));
  switch (g->type) {
    case GateType::input: return x.at(*g->io);
    case GateType::constant: return *g->value;
    case GateType::add: {
      Element acc = k.zero;
      for (const auto& v : in) acc = k.add(acc, v);
      return acc;
    }
    case GateType::mul: {
      Element acc = k.one;
      for (const auto& v : in) acc = k.mul(acc, v);
      return acc;
    }
    case GateType::output: return in.at(0);
    case GateType::eq: return k.from_bool(equal(in[0], in[1]));
    case GateType::neq: return k.from_bool(!equal(in[0], in[1]));
    case GateType::leq: return k.from_bool(k.leq(in[0], in[1]));
    case GateType::nleq: return k.from_bool(!k.leq(in[0], in[1]));
  }
  return k.zero;
}

inline std::vector<Element> naive_circuit(const Circuit& c, const std::vector<Element>& x) {
  std::map<std::size_t, Element> out;
  for (const auto& g : c.gates)
    if (g.type == GateType::output) out.emplace(*g.io, naive_gate(c, g.id, x));
  std::vector<Element> v;
  for (auto& [i, e] : out) v.push_back(e);
  return v;
}

struct CircuitShape {
  std::size_t max_inputs = 3;
  std::size_t max_size = 12;
  std::size_t max_depth = 3;
  bool relations = true;
  bool constants = true;
};

// Random single-output circuit; gates on level L only read from levels < L, so the
// depth is at most max_depth. Unused non-input gates are pruned.
inline Circuit random_circuit(const Semiring& k, std::mt19937_64& rng, const CircuitShape& shape) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  while (true) {
    struct Proto {
      GateType type;
      std::vector<std::size_t> preds;
      std::optional<Element> value;
      std::size_t io = 0;
    };
    std::vector<Proto> g;
    std::vector<std::size_t> level;
    const std::size_t m = pick(1, shape.max_inputs);
    for (std::size_t i = 0; i < m; ++i) {
      g.push_back({GateType::input, {}, {}, i});
      level.push_back(0);
    }
    if (shape.constants && pick(0, 1)) {
      g.push_back({GateType::constant, {}, random_element(k, rng), 0});
      level.push_back(0);
    }
    for (std::size_t L = 1; L < shape.max_depth; ++L) {
      std::vector<std::size_t> lower;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (level[i] < L) lower.push_back(i);
      std::size_t count = pick(1, 3);
      for (std::size_t c = 0; c < count; ++c) {
        std::size_t t = pick(0, shape.relations && k.ordered ? 5 : (shape.relations ? 3 : 1));
        static const GateType types[] = {GateType::add, GateType::mul, GateType::eq,
                                         GateType::neq, GateType::leq, GateType::nleq};
        Proto p{types[t], {}, {}, 0};
        std::size_t arity = is_relation_gate(p.type) ? 2 : pick(1, 3);
        for (std::size_t a = 0; a < arity; ++a) p.preds.push_back(lower[pick(0, lower.size() - 1)]);
        g.push_back(p);
        level.push_back(L);
      }
    }
    std::size_t top = g.size() - 1;
    g.push_back({GateType::output, {top}, {}, 0});
    // prune gates that do not reach the output
    std::vector<bool> used(g.size(), false);
    used.back() = true;
    for (std::size_t i = g.size(); i-- > 0;)
      if (used[i] || g[i].type == GateType::input)
        for (auto p : g[i].preds) used[p] = true;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i].type == GateType::input) used[i] = true;
    Circuit c(k);
    std::map<std::size_t, std::size_t> id;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!used[i]) continue;
      std::vector<std::size_t> preds;
      for (auto p : g[i].preds) preds.push_back(id.at(p));
      switch (g[i].type) {
        case GateType::input: id[i] = c.add_input(g[i].io); break;
        case GateType::constant: id[i] = c.add_constant(*g[i].value); break;
        case GateType::output: id[i] = c.add_output(preds.at(0), 0); break;
        default: id[i] = c.add_gate(g[i].type, preds); break;
      }
    }
    if (c.gates.size() <= shape.max_size) return c;
  }
}

// ---------------------------------------------------------------- formulas

struct FormulaShape {
  std::vector<Symbol> relations;
  std::vector<std::string> vars = {"x", "y"};
  std::size_t depth = 3;
  bool comparisons = false;  // comparisons between comparison-free operands
  bool var_literals = true;
  bool order = true;         // allow <= and !<=
};

class FormulaGen {
public:
  FormulaGen(FormulaShape shape, std::mt19937_64& rng) : s_(std::move(shape)), rng_(rng) {}

  /// A sentence: the top is quantified until some variable is bound.
  Formula sentence() { return node(s_.depth, {}, s_.comparisons); }

  /// A formula over the given free variables.
  Formula formula(const std::set<std::string>& bound, bool comparisons) { return node(s_.depth, bound, comparisons); }

  /// A sentence with exactly one comparison somewhere below the top.
  Formula one_comparison_sentence() {
    while (true) {
      Formula f = node(s_.depth, {}, true);
      if (count(f).compare == 1) return f;
    }
  }

private:
  FormulaShape s_;
  std::mt19937_64& rng_;

  std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

  std::string some(const std::set<std::string>& bound) {
    std::vector<std::string> v(bound.begin(), bound.end());
    return v[pick(0, v.size() - 1)];
  }

  Formula literal(const std::set<std::string>& bound) {
    std::size_t choice = pick(0, s_.var_literals ? 5 : 3);
    if (choice >= 4) {
      std::string a = some(bound), b = some(bound);
      return choice == 4 ? var_eq(a, b) : var_neq(a, b);
    }
    const Symbol& r = s_.relations[pick(0, s_.relations.size() - 1)];
    std::vector<std::string> args;
    for (std::size_t i = 0; i < r.arity; ++i) args.push_back(some(bound));
    return choice % 2 ? neg_atom(r.name, args) : atom(r.name, args);
  }

  Formula quantified(std::size_t depth, std::set<std::string> bound, bool cmp) {
    std::string x = s_.vars[pick(0, s_.vars.size() - 1)];
    bool ex = pick(0, 1);
    bound.insert(x);
    Formula body = node(depth - 1, bound, cmp);
    return ex ? exists(x, body) : forall(x, body);
  }

  Formula node(std::size_t depth, const std::set<std::string>& bound, bool cmp) {
    if (bound.empty()) return quantified(std::max<std::size_t>(depth, 1), bound, cmp);
    if (depth == 0 || pick(0, 4) == 0) return literal(bound);
    std::size_t choice = pick(0, cmp ? 4 : 3);
    switch (choice) {
      case 0: return conj(node(depth - 1, bound, cmp), node(depth - 1, bound, cmp));
      case 1: return disj(node(depth - 1, bound, cmp), node(depth - 1, bound, cmp));
      case 2:
      case 3: return quantified(depth, bound, cmp);
      default: {
        static const CmpOp ops[] = {CmpOp::eq, CmpOp::neq, CmpOp::leq, CmpOp::nleq};
        CmpOp op = ops[pick(0, s_.order ? 3 : 1)];
        return compare(op, node(depth - 1, bound, false), node(depth - 1, bound, false));
      }
    }
  }
};

inline Interpretation random_interpretation(const Semiring& k, std::size_t n, const std::vector<Symbol>& rels,
                                            std::mt19937_64& rng) {
  Interpretation pi(k, universe(n), rels);
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (std::size_t t = 0; t < pi.tuple_count(r); ++t) {
      pi.set(r, t, false, random_element(k, rng));
      pi.set(r, t, true, random_element(k, rng));
    }
  return pi;
}

// Model-defining Boolean interpretation of a random structure.
inline Interpretation random_structure(std::size_t n, const std::vector<Symbol>& rels, std::mt19937_64& rng) {
  std::map<std::string, std::set<Tuple>> facts;
  Interpretation shape(Semiring::make(Kind::boolean), universe(n), rels);
  for (std::size_t r = 0; r < rels.size(); ++r) {
    facts[rels[r].name];
    for (std::size_t t = 0; t < shape.tuple_count(r); ++t)
      if (rng() & 1) facts[rels[r].name].insert(shape.tuple_at(r, t));
  }
  return canonical_boolean(universe(n), rels, facts);
}

// ---------------------------------------------------------------- gate counting

// Gates of formula_to_circuit: one per enc position, one output, and for the
// formula tree: relation literals reuse input gates, other literals are constants,
// connectives and comparisons add one gate, quantifiers one gate over n copies.
inline mpz_class expected_gate_count(const Formula& f, const std::vector<Symbol>& rels, std::size_t n) {
  std::function<mpz_class(const Formula&)> g = [&](const Formula& h) -> mpz_class {
    switch (h->kind) {
      case NodeKind::atom:
      case NodeKind::neg_atom: return 0;
      case NodeKind::var_eq:
      case NodeKind::var_neq:
      case NodeKind::builtin:
      case NodeKind::neg_builtin: return 1;
      case NodeKind::conj:
      case NodeKind::disj:
      case NodeKind::compare: return 1 + g(h->left) + g(h->right);
      case NodeKind::exists:
      case NodeKind::forall: return 1 + mpz_class(static_cast<unsigned long>(n)) * g(h->left);
    }
    return 0;
  };
  mpz_class enc = 0;
  for (const auto& r : rels) {
    mpz_class p = 1;
    for (std::size_t i = 0; i < std::max<std::size_t>(r.arity, 1); ++i) p *= static_cast<unsigned long>(n);
    enc += 2 * p;
  }
  return enc + 1 + g(f);
}

// ---------------------------------------------------------------- tropical

// Min-plus arithmetic on optional rationals (nullopt = infinity), folded per the
// semantics of comparisons with the natural order a <= b iff min(a, b) = b.
struct MinPlus {
  using V = std::optional<mpq_class>;
  static V add(const V& a, const V& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
  }
  static V mul(const V& a, const V& b) {
    if (!a || !b) return std::nullopt;
    return V(*a + *b);
  }
  static bool leq(const V& a, const V& b) { return add(a, b) == b; }
};

}  // namespace oracle
