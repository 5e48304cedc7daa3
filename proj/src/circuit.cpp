#include "semfo/circuit.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace semfo {

std::string_view gate_type_name(GateType t) {
  switch (t) {
    case GateType::input: return "input";
    case GateType::constant: return "const";
    case GateType::add: return "+";
    case GateType::mul: return "*";
    case GateType::output: return "output";
    case GateType::eq: return "=";
    case GateType::neq: return "!=";
    case GateType::leq: return "<=";
    case GateType::nleq: return "!<=";
  }
  return "?";
}

bool is_relation_gate(GateType t) {
  return t == GateType::eq || t == GateType::neq || t == GateType::leq || t == GateType::nleq;
}

std::size_t Circuit::add_input(std::size_t index) {
  gates.push_back({gates.size(), GateType::input, {}, std::nullopt, index});
  return gates.back().id;
}

std::size_t Circuit::add_constant(Element v) {
  gates.push_back({gates.size(), GateType::constant, {}, std::move(v), std::nullopt});
  return gates.back().id;
}

std::size_t Circuit::add_gate(GateType t, std::vector<std::size_t> preds) {
  gates.push_back({gates.size(), t, std::move(preds), std::nullopt, std::nullopt});
  return gates.back().id;
}

std::size_t Circuit::add_output(std::size_t pred, std::size_t index) {
  gates.push_back({gates.size(), GateType::output, {pred}, std::nullopt, index});
  return gates.back().id;
}

std::size_t Circuit::input_count() const {
  return std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.type == GateType::input; });
}

std::size_t Circuit::output_count() const {
  return std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.type == GateType::output; });
}

std::size_t Circuit::position(std::size_t id) const {
  if (id < gates.size() && gates[id].id == id) return id;
  for (std::size_t i = 0; i < gates.size(); ++i)
    if (gates[i].id == id) return i;
  throw CircuitError("unknown gate id " + std::to_string(id));
}

namespace {

std::unordered_map<std::size_t, std::size_t> position_map(const Circuit& c) {
  std::unordered_map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < c.gates.size(); ++i) pos.emplace(c.gates[i].id, i);
  return pos;
}

void require_valid(const Circuit& c) {
  auto v = validate(c);
  if (!v.empty()) throw CircuitError("malformed circuit: " + v.front());
}

}  // namespace

std::vector<std::string> validate(const Circuit& c) {
  std::vector<std::string> out;
  if (c.gates.empty()) {
    out.push_back("circuit has no gates");
    return out;
  }
  std::unordered_map<std::size_t, std::size_t> pos;
  std::set<std::size_t> inputs, outputs;
  std::vector<std::size_t> fanout(c.gates.size(), 0);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    std::string name = "gate " + std::to_string(g.id);
    int t = static_cast<int>(g.type);
    if (t < 1 || t > 9) out.push_back(name + ": unknown type " + std::to_string(t));
    for (auto p : g.preds) {
      auto it = pos.find(p);
      if (it == pos.end()) {
        out.push_back(name + ": predecessor " + std::to_string(p) + " missing or not earlier");
        continue;
      }
      ++fanout[it->second];
      if (c.gates[it->second].type == GateType::output)
        out.push_back(name + ": output gate " + std::to_string(p) + " used as predecessor");
    }
    if (!pos.emplace(g.id, i).second) out.push_back(name + ": duplicate id");
    switch (g.type) {
      case GateType::input:
        if (!g.preds.empty()) out.push_back(name + ": input gate with predecessors");
        if (!g.io)
          out.push_back(name + ": input gate without index");
        else if (!inputs.insert(*g.io).second)
          out.push_back(name + ": duplicate input index " + std::to_string(*g.io));
        break;
      case GateType::constant:
        if (!g.preds.empty()) out.push_back(name + ": constant gate with predecessors");
        break;
      case GateType::add:
      case GateType::mul:
        if (g.preds.empty()) out.push_back(name + ": arithmetic gate without predecessors");
        break;
      case GateType::output:
        if (g.preds.size() != 1) out.push_back(name + ": output gate needs exactly one predecessor");
        if (!g.io)
          out.push_back(name + ": output gate without index");
        else if (!outputs.insert(*g.io).second)
          out.push_back(name + ": duplicate output index " + std::to_string(*g.io));
        break;
      default:
        if (g.preds.size() != 2) out.push_back(name + ": relation gate needs exactly two predecessors");
        if ((g.type == GateType::leq || g.type == GateType::nleq) && !c.k.ordered)
          out.push_back(name + ": order gate over unordered semiring");
        break;
    }
    if ((g.type == GateType::constant) != g.value.has_value())
      out.push_back(name + (g.value ? ": value on non-constant gate" : ": constant gate without value"));
    if (g.value && !c.k.contains(*g.value)) out.push_back(name + ": constant outside the semiring");
    if (g.io && g.type != GateType::input && g.type != GateType::output)
      out.push_back(name + ": io index on non-io gate");
  }
  auto gap_free = [](const std::set<std::size_t>& s) { return s.empty() || *s.rbegin() + 1 == s.size(); };
  if (!gap_free(inputs)) out.push_back("input indices are not 0..k-1");
  if (!gap_free(outputs)) out.push_back("output indices are not 0..k-1");
  if (outputs.empty()) out.push_back("circuit has no output gate");
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    if (g.type != GateType::output && g.type != GateType::input && fanout[i] == 0)
      out.push_back("gate " + std::to_string(g.id) + ": not connected to an output");
  }
  return out;
}

std::vector<Element> evaluate_circuit(const Circuit& c, const std::vector<Element>& inputs) {
  require_valid(c);
  if (inputs.size() != c.input_count())
    throw CircuitError("expected " + std::to_string(c.input_count()) + " inputs, got " +
                       std::to_string(inputs.size()));
  for (const auto& x : inputs)
    if (!c.k.contains(x)) throw InstanceMismatch("circuit input outside " + std::string(c.k.name()));
  auto pos = position_map(c);
  std::vector<Element> val(c.gates.size());
  std::vector<Element> out(c.output_count());
  const Semiring& k = c.k;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    auto arg = [&](std::size_t j) -> const Element& { return val[pos.at(g.preds[j])]; };
    switch (g.type) {
      case GateType::input: val[i] = inputs[*g.io]; break;
      case GateType::constant: val[i] = *g.value; break;
      case GateType::add: {
        Element acc = k.zero;
        for (std::size_t j = 0; j < g.preds.size(); ++j) acc = k.add(acc, arg(j));
        val[i] = std::move(acc);
        break;
      }
      case GateType::mul: {
        Element acc = k.one;
        for (std::size_t j = 0; j < g.preds.size(); ++j) acc = k.mul(acc, arg(j));
        val[i] = std::move(acc);
        break;
      }
      case GateType::output:
        val[i] = arg(0);
        out[*g.io] = val[i];
        break;
      case GateType::eq: val[i] = k.from_bool(equal(arg(0), arg(1))); break;
      case GateType::neq: val[i] = k.from_bool(!equal(arg(0), arg(1))); break;
      case GateType::leq: val[i] = k.from_bool(k.leq(arg(0), arg(1))); break;
      case GateType::nleq: val[i] = k.from_bool(!k.leq(arg(0), arg(1))); break;
    }
  }
  return out;
}

namespace {

std::vector<std::size_t> heights(const Circuit& c) {
  auto pos = position_map(c);
  std::vector<std::size_t> h(c.gates.size(), 0);
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    for (auto p : c.gates[i].preds) h[i] = std::max(h[i], h[pos.at(p)] + 1);
  return h;
}

}  // namespace

CircuitMeasure measure(const Circuit& c) {
  require_valid(c);
  auto h = heights(c);
  CircuitMeasure m;
  m.size = c.gates.size();
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    if (c.gates[i].type == GateType::output) m.depth = std::max(m.depth, h[i]);
  return m;
}

Circuit normalize_to_tree(const Circuit& c) {
  require_valid(c);
  auto pos = position_map(c);
  auto h = heights(c);
  Circuit out(c.k);
  // Input gates are shared, created first in index order.
  std::map<std::size_t, std::size_t> input_gate;  // input index -> new id
  std::vector<std::size_t> input_positions;
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    if (c.gates[i].type == GateType::input) input_positions.push_back(i);
  std::sort(input_positions.begin(), input_positions.end(),
            [&](auto a, auto b) { return *c.gates[a].io < *c.gates[b].io; });
  for (auto i : input_positions) input_gate[*c.gates[i].io] = out.add_input(*c.gates[i].io);

  // Builds a fresh copy of gate i whose every source path has length `height`.
  auto build = [&](auto&& self, std::size_t i, std::size_t height) -> std::size_t {
    const Gate& g = c.gates[i];
    if (height > h[i]) {
      std::size_t inner = self(self, i, height - 1);
      return out.add_gate(GateType::add, {inner});
    }
    switch (g.type) {
      case GateType::input: return input_gate.at(*g.io);
      case GateType::constant: return out.add_constant(*g.value);
      default: {
        std::vector<std::size_t> preds;
        for (auto p : g.preds) preds.push_back(self(self, pos.at(p), height - 1));
        if (g.type == GateType::output) return out.add_output(preds[0], *g.io);
        return out.add_gate(g.type, std::move(preds));
      }
    }
  };
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    if (c.gates[i].type == GateType::output) build(build, i, h[i]);
  return out;
}

bool is_tree_normalized(const Circuit& c) {
  if (!validate(c).empty()) return false;
  auto pos = position_map(c);
  std::vector<std::size_t> fanout(c.gates.size(), 0);
  for (const auto& g : c.gates)
    for (auto p : g.preds) ++fanout[pos.at(p)];
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    if (c.gates[i].type != GateType::input && fanout[i] > 1) return false;
  // Shortest and longest source distances agree for every gate.
  std::vector<std::size_t> lo(c.gates.size(), 0), hi(c.gates.size(), 0);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    if (g.preds.empty()) continue;
    lo[i] = SIZE_MAX;
    for (auto p : g.preds) {
      lo[i] = std::min(lo[i], lo[pos.at(p)] + 1);
      hi[i] = std::max(hi[i], hi[pos.at(p)] + 1);
    }
    if (lo[i] != hi[i]) return false;
  }
  return true;
}

std::string to_dot(const Circuit& c) {
  std::ostringstream out;
  out << "digraph circuit {\n  rankdir=BT;\n";
  for (const auto& g : c.gates) {
    std::string label(gate_type_name(g.type));
    if (g.type == GateType::constant) label = c.k.format(*g.value);
    if (g.type == GateType::input) label = "x" + std::to_string(*g.io);
    if (g.type == GateType::output) label = "y" + std::to_string(*g.io);
    const char* shape = g.type == GateType::input || g.type == GateType::output ? "box" : "circle";
    out << "  g" << g.id << " [label=\"" << label << "\", shape=" << shape << "];\n";
  }
  for (const auto& g : c.gates)
    for (std::size_t j = 0; j < g.preds.size(); ++j) {
      out << "  g" << g.preds[j] << " -> g" << g.id;
      if (is_relation_gate(g.type)) out << " [label=\"" << j << "\"]";
      out << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace semfo
