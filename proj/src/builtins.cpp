#include "semfo/builtins.hpp"

namespace semfo {

Family Family::constant(Element v) {
  Family f;
  f.generator = Generator::constant;
  f.value = std::move(v);
  return f;
}

Family Family::equality(Element one) {
  Family f = constant(std::move(one));
  f.generator = Generator::equality;
  return f;
}

Family Family::successor(Element one) {
  Family f = constant(std::move(one));
  f.generator = Generator::successor;
  return f;
}

Family Family::less(Element one) {
  Family f = constant(std::move(one));
  f.generator = Generator::less;
  return f;
}

Family Family::function(std::function<Element(std::size_t, const std::vector<std::size_t>&)> g) {
  Family f;
  f.generator = Generator::function;
  f.fn = std::move(g);
  return f;
}

Element Family::at(const Semiring& k, std::size_t n, const std::vector<std::size_t>& args) const {
  for (auto a : args)
    if (a < 1 || a > n) throw Error("built-in argument outside {1.." + std::to_string(n) + "}");
  auto indicator = [&](bool b) { return b ? value : k.zero; };
  switch (generator) {
    case Generator::constant: return value;
    case Generator::equality: {
      bool all = true;
      for (auto a : args) all = all && a == args.front();
      return indicator(all);
    }
    case Generator::successor:
      if (args.size() != 2) throw Error("successor generator needs arity 2");
      return indicator(args[1] == args[0] + 1);
    case Generator::less:
      if (args.size() != 2) throw Error("less generator needs arity 2");
      return indicator(args[0] < args[1]);
    case Generator::table: {
      auto t = tables.find(n);
      if (t == tables.end()) throw Error("built-in table undefined for n = " + std::to_string(n));
      auto e = t->second.entries.find(args);
      return e == t->second.entries.end() ? t->second.fallback : e->second;
    }
    case Generator::function: return fn(n, args);
  }
  return k.zero;
}

std::vector<Symbol> BuiltinInterpretation::vocabulary() const {
  std::vector<Symbol> out;
  for (const auto& [name, e] : symbols) out.push_back({name, e.arity});
  return out;
}

const BuiltinInterpretation::Entry& BuiltinInterpretation::entry(const std::string& name) const {
  auto it = symbols.find(name);
  if (it == symbols.end()) throw Error("no interpretation for built-in '" + name + "'");
  return it->second;
}

}  // namespace semfo
