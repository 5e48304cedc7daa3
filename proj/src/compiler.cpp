#include "semfo/compiler.hpp"

#include <map>
#include <memory>
#include <unordered_map>

namespace semfo {

// ------------------------------------------------------------ formula -> circuit

namespace {

class FormulaCompiler {
public:
  FormulaCompiler(const Semiring& k, const Vocabulary& vocab, const BuiltinInterpretation* rho, std::size_t n)
      : k_(k), vocab_(vocab), rho_(rho), n_(n), circuit_(k) {
    std::size_t offset = 0;
    for (const auto& r : vocab.relations) {
      offsets_.push_back(offset);
      std::size_t block = 1;
      for (std::size_t i = 0; i < std::max<std::size_t>(r.arity, 1); ++i) block *= n;
      blocks_.push_back(block);
      offset += 2 * block;
    }
    for (std::size_t i = 0; i < offset; ++i) circuit_.add_input(i);
  }

  Circuit run(const Formula& f) {
    std::size_t top = build(f);
    circuit_.add_output(top, 0);
    return std::move(circuit_);
  }

private:
  const Semiring& k_;
  const Vocabulary& vocab_;
  const BuiltinInterpretation* rho_;
  std::size_t n_;
  Circuit circuit_;
  std::vector<std::size_t> offsets_, blocks_;
  std::vector<std::pair<std::string, std::size_t>> scope_;

  std::size_t value_of(const std::string& v) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == v) return it->second;
    throw Error("formula is not a sentence: free variable '" + v + "'");
  }

  std::size_t build(const Formula& f) {
    switch (f->kind) {
      case NodeKind::exists:
      case NodeKind::forall: {
        std::vector<std::size_t> preds;
        for (std::size_t a = 0; a < n_; ++a) {
          scope_.emplace_back(f->vars[0], a);
          preds.push_back(build(f->left));
          scope_.pop_back();
        }
        return circuit_.add_gate(f->kind == NodeKind::exists ? GateType::add : GateType::mul, std::move(preds));
      }
      case NodeKind::disj:
      case NodeKind::conj: {
        std::size_t a = build(f->left);
        std::size_t b = build(f->right);
        return circuit_.add_gate(f->kind == NodeKind::disj ? GateType::add : GateType::mul, {a, b});
      }
      case NodeKind::compare: {
        std::size_t a = build(f->left);
        std::size_t b = build(f->right);
        static const GateType types[] = {GateType::eq, GateType::neq, GateType::leq, GateType::nleq};
        return circuit_.add_gate(types[static_cast<int>(f->op)], {a, b});
      }
      case NodeKind::var_eq:
      case NodeKind::var_neq: {
        bool same = value_of(f->vars[0]) == value_of(f->vars[1]);
        return circuit_.add_constant(k_.from_bool(f->kind == NodeKind::var_eq ? same : !same));
      }
      case NodeKind::atom:
      case NodeKind::neg_atom: {
        auto r = vocab_.relation_index(f->symbol);
        if (!r) throw Error("unknown relation '" + f->symbol + "'");
        std::size_t rank = 0;
        for (const auto& v : f->vars) rank = rank * n_ + value_of(v);
        std::size_t index = offsets_[*r] + (f->kind == NodeKind::neg_atom ? blocks_[*r] : 0) + rank;
        return circuit_.gates[index].id;
      }
      case NodeKind::builtin:
      case NodeKind::neg_builtin: {
        if (!rho_) throw Error("built-in '" + f->symbol + "' used without a built-in interpretation");
        const auto& e = rho_->entry(f->symbol);
        std::vector<std::size_t> args;
        for (const auto& v : f->vars) args.push_back(value_of(v) + 1);
        const Family& fam = f->kind == NodeKind::builtin ? e.positive : e.negative;
        return circuit_.add_constant(fam.at(k_, n_, args));
      }
    }
    throw Error("unreachable");
  }
};

}  // namespace

Circuit formula_to_circuit(const Formula& f, const Semiring& k, const Vocabulary& vocab,
                           const BuiltinInterpretation* rho, std::size_t n) {
  if (n == 0) throw Error("formula_to_circuit needs a nonempty universe");
  if (!free_vars(f).empty()) throw Error("formula_to_circuit needs a sentence");
  auto bad = check_symbols(f, vocab);
  if (!bad.empty()) throw Error(bad.front());
  return FormulaCompiler(k, vocab, rho, n).run(f);
}

// ------------------------------------------------------------ circuit -> formula

std::vector<std::size_t> GateEncoding::tuple(std::size_t gate) const {
  std::vector<std::size_t> t(q);
  for (std::size_t i = q; i-- > 0;) {
    t[i] = gate % n + 1;
    gate /= n;
  }
  return t;
}

std::optional<std::size_t> GateEncoding::gate(const std::vector<std::size_t>& args, std::size_t offset) const {
  std::size_t g = 0;
  for (std::size_t i = 0; i < q; ++i) g = g * n + (args[offset + i] - 1);
  if (g >= gates) return std::nullopt;
  return g;
}

namespace {

// Tree in which every gate, inputs included, has fan-out at most 1.
struct Layered {
  std::vector<GateType> type;
  std::vector<std::vector<std::size_t>> preds;
  std::vector<std::optional<Element>> value;
  std::vector<std::size_t> input_index;
  std::vector<std::size_t> succ;  // SIZE_MAX for the output
  std::size_t output = 0;
  std::size_t depth = 0;
};

Layered expand_inputs(const Circuit& tree) {
  Layered l;
  std::unordered_map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < tree.gates.size(); ++i) pos.emplace(tree.gates[i].id, i);
  auto push = [&](GateType t) {
    l.type.push_back(t);
    l.preds.emplace_back();
    l.value.emplace_back();
    l.input_index.push_back(0);
    l.succ.push_back(SIZE_MAX);
    return l.type.size() - 1;
  };
  std::vector<std::size_t> heights(tree.gates.size(), 0);
  std::vector<std::size_t> copy(tree.gates.size(), SIZE_MAX);
  for (std::size_t i = 0; i < tree.gates.size(); ++i) {
    const Gate& g = tree.gates[i];
    if (g.type == GateType::input) continue;
    if (g.type == GateType::constant) {
      copy[i] = push(g.type);
      l.value[copy[i]] = g.value;
      continue;
    }
    std::vector<std::size_t> preds;
    for (auto p : g.preds) {
      std::size_t j = pos.at(p);
      heights[i] = std::max(heights[i], heights[j] + 1);
      if (tree.gates[j].type == GateType::input) {
        std::size_t c = push(GateType::input);
        l.input_index[c] = *tree.gates[j].io;
        preds.push_back(c);
      } else {
        preds.push_back(copy[j]);
      }
    }
    copy[i] = push(g.type);
    for (auto p : preds) l.succ[p] = copy[i];
    l.preds[copy[i]] = std::move(preds);
    if (g.type == GateType::output) {
      l.output = copy[i];
      l.depth = heights[i];
    }
  }
  return l;
}

struct Structure {
  Layered circuit;
  GateEncoding enc;
  Element one, zero;
};

Family make_family(std::shared_ptr<const Structure> s,
                   std::function<Element(const Structure&, const std::vector<std::size_t>&)> f) {
  return Family::function([s, f](std::size_t n, const std::vector<std::size_t>& args) {
    if (n != s->enc.n) throw Error("structure built-ins are defined for n = " + std::to_string(s->enc.n) + " only");
    return f(*s, args);
  });
}

std::vector<std::string> names(const std::string& prefix, std::size_t q) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= q; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

class SentenceBuilder {
public:
  explicit SentenceBuilder(std::size_t q) : q_(q) {}

  Formula guard(int code, const std::vector<std::string>& x) const {
    std::vector<Formula> bits;
    for (int b = 0; b < 4; ++b) {
      std::string sym = "t" + std::to_string(b + 1);
      bool set = (code >> (3 - b)) & 1;
      bits.push_back(set ? builtin_atom(sym, x) : neg_builtin_atom(sym, x));
    }
    return conj_all(bits);
  }

  Formula phi(std::size_t d, const std::vector<std::string>& x) {
    auto key = std::make_pair(d, x);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Formula f;
    if (d == 0) {
      std::string y = "u";
      f = disj(exists(y, conj(builtin_atom("in", concat(x, {y})), atom("R", {y}))), builtin_atom("c", x));
    } else {
      auto y = names("y" + std::to_string(d) + "_", q_);
      auto z = names("z" + std::to_string(d) + "_", q_);
      Formula ey = builtin_atom("e", concat(y, x));
      Formula ez = builtin_atom("e", concat(z, x));
      Formula py = phi(d - 1, y);
      Formula pz = phi(d - 1, z);
      auto pair = [&](CmpOp op) {
        return exists_all(concat(y, z),
                          conj(conj(conj(ey, ez), builtin_atom("left", concat(y, z))), compare(op, py, pz)));
      };
      std::vector<Formula> cases = {
          conj(guard(2, x), builtin_atom("c", x)),
          conj(guard(3, x), exists_all(y, conj(ey, py))),
          conj(guard(4, x), forall_all(y, disj(neg_builtin_atom("e", concat(y, x)), conj(ey, py)))),
          conj(guard(5, x), exists_all(y, conj(ey, py))),
          conj(guard(6, x), pair(CmpOp::eq)),
          conj(guard(7, x), pair(CmpOp::neq)),
          conj(guard(8, x), pair(CmpOp::leq)),
          conj(guard(9, x), pair(CmpOp::nleq)),
      };
      f = disj_all(cases);
    }
    memo_.emplace(key, f);
    return f;
  }

private:
  std::size_t q_;
  std::map<std::pair<std::size_t, std::vector<std::string>>, Formula> memo_;
};

}  // namespace

CircuitSentence circuit_to_formula(const Circuit& c, CircuitToFormulaOptions opts) {
  if (c.output_count() != 1) throw Error("circuit_to_formula needs exactly one output gate");
  Circuit tree = normalize_to_tree(c);
  auto s = std::make_shared<Structure>();
  s->circuit = expand_inputs(tree);
  s->one = c.k.one;
  s->zero = c.k.zero;
  const std::size_t size = s->circuit.type.size();
  std::size_t n = opts.n ? opts.n : std::max<std::size_t>(c.input_count(), 2);
  if (n < c.input_count()) throw Error("universe smaller than the number of inputs");
  if (n < 2) throw Error("universe size must be at least 2");
  std::size_t q = opts.q;
  if (q == 0) {
    q = 1;
    for (std::size_t cap = n; cap < size; cap *= n) ++q;
  }
  {
    std::size_t cap = 1;
    for (std::size_t i = 0; i < q && cap < size; ++i) cap *= n;
    if (cap < size)
      throw Error("circuit size " + std::to_string(size) + " exceeds n^q = " + std::to_string(n) + "^" +
                  std::to_string(q) + "; choose a larger q");
  }
  s->enc = {n, q, size};
  std::shared_ptr<const Structure> cs = s;

  CircuitSentence out;
  out.encoding = s->enc;
  out.depth = s->circuit.depth;
  out.vocab.relations = {{"R", 1}};
  const auto one_zero = [](const Structure& st, bool b) { return b ? st.one : st.zero; };

  for (int b = 0; b < 4; ++b) {
    auto bit = [b](const Structure& st, const std::vector<std::size_t>& a) -> std::optional<bool> {
      auto g = st.enc.gate(a);
      if (!g) return std::nullopt;
      return ((static_cast<int>(st.circuit.type[*g]) >> (3 - b)) & 1) != 0;
    };
    BuiltinInterpretation::Entry e;
    e.arity = q;
    e.positive = make_family(cs, [bit, one_zero](const Structure& st, const std::vector<std::size_t>& a) {
      return one_zero(st, bit(st, a).value_or(false));
    });
    e.negative = make_family(cs, [bit, one_zero](const Structure& st, const std::vector<std::size_t>& a) {
      return one_zero(st, !bit(st, a).value_or(false));
    });
    std::string name = "t" + std::to_string(b + 1);
    out.rho.symbols[name] = e;
    out.vocab.builtins.push_back({name, q});
  }

  auto zero_family = [&] { return make_family(cs, [](const Structure& st, const auto&) { return st.zero; }); };

  BuiltinInterpretation::Entry c_entry;
  c_entry.arity = q;
  c_entry.positive = make_family(cs, [](const Structure& st, const std::vector<std::size_t>& a) {
    auto g = st.enc.gate(a);
    if (g && st.circuit.type[*g] == GateType::constant) return *st.circuit.value[*g];
    return st.zero;
  });
  c_entry.negative = zero_family();
  out.rho.symbols["c"] = c_entry;
  out.vocab.builtins.push_back({"c", q});

  BuiltinInterpretation::Entry in_entry;
  in_entry.arity = q + 1;
  in_entry.positive = make_family(cs, [one_zero, q](const Structure& st, const std::vector<std::size_t>& a) {
    auto g = st.enc.gate(a);
    bool hit = g && st.circuit.type[*g] == GateType::input && st.circuit.input_index[*g] + 1 == a[q];
    return one_zero(st, hit);
  });
  in_entry.negative = zero_family();
  out.rho.symbols["in"] = in_entry;
  out.vocab.builtins.push_back({"in", q + 1});

  auto edge = [q](const Structure& st, const std::vector<std::size_t>& a) {
    auto from = st.enc.gate(a, 0);
    auto to = st.enc.gate(a, q);
    return from && to && st.circuit.succ[*from] == *to;
  };
  BuiltinInterpretation::Entry e_entry;
  e_entry.arity = 2 * q;
  e_entry.positive = make_family(cs, [edge, one_zero](const Structure& st, const std::vector<std::size_t>& a) {
    return one_zero(st, edge(st, a));
  });
  e_entry.negative = make_family(cs, [edge, one_zero](const Structure& st, const std::vector<std::size_t>& a) {
    return one_zero(st, !edge(st, a));
  });
  out.rho.symbols["e"] = e_entry;
  out.vocab.builtins.push_back({"e", 2 * q});

  BuiltinInterpretation::Entry left_entry;
  left_entry.arity = 2 * q;
  left_entry.positive = make_family(cs, [one_zero, q](const Structure& st, const std::vector<std::size_t>& a) {
    auto y = st.enc.gate(a, 0);
    auto z = st.enc.gate(a, q);
    bool hit = false;
    if (y && z && st.circuit.succ[*y] != SIZE_MAX) {
      const auto& ps = st.circuit.preds[st.circuit.succ[*y]];
      hit = ps.size() == 2 && ps[0] == *y && ps[1] == *z;
    }
    return one_zero(st, hit);
  });
  left_entry.negative = zero_family();
  out.rho.symbols["left"] = left_entry;
  out.vocab.builtins.push_back({"left", 2 * q});

  SentenceBuilder builder(q);
  auto x = names("x", q);
  out.sentence = exists_all(x, conj(builder.guard(static_cast<int>(GateType::output), x), builder.phi(out.depth, x)));
  return out;
}

Interpretation input_interpretation(const Semiring& k, std::size_t n, const std::vector<Element>& inputs) {
  if (inputs.size() > n) throw Error("more inputs than universe elements");
  std::vector<std::string> universe;
  for (std::size_t i = 1; i <= n; ++i) universe.push_back(std::to_string(i));
  Interpretation pi(k, universe, {{"R", 1}});
  for (std::size_t i = 0; i < inputs.size(); ++i) pi.set(0, i, false, inputs[i]);
  return pi;
}

}  // namespace semfo
