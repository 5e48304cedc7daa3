// Python bindings. Documents are exchanged as JSON text and elements as strings,
// matching the command-line tool's file formats.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "semfo/bss.hpp"
#include "semfo/compiler.hpp"
#include "semfo/evaluator.hpp"
#include "semfo/io.hpp"
#include "semfo/ktm.hpp"
#include "semfo/transforms.hpp"

namespace py = pybind11;
using namespace semfo;

namespace {

using SymbolList = std::vector<std::pair<std::string, std::size_t>>;

std::vector<Symbol> symbols(const SymbolList& list) {
  std::vector<Symbol> out;
  for (const auto& [name, arity] : list) out.push_back({name, arity});
  return out;
}

std::vector<std::string> formatted(const Semiring& k, const std::vector<Element>& v) {
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(k.format(e));
  return out;
}

std::vector<Element> parsed(const Semiring& k, const std::vector<std::string>& v) {
  std::vector<Element> out;
  for (const auto& s : v) out.push_back(k.parse(s));
  return out;
}

py::dict evaluate_py(const std::string& formula, const std::string& interpretation,
                     const std::optional<std::string>& builtins, const std::string& assignment,
                     bool short_circuit) {
  Interpretation pi = interpretation_from_json(interpretation);
  Vocabulary vocab{pi.relations(), {}};
  std::optional<BuiltinInterpretation> rho;
  if (builtins) {
    rho = builtins_from_json(*builtins, pi.semiring());
    vocab.builtins = rho->vocabulary();
  }
  Formula f = parse_formula(formula, vocab);
  EvalResult r = evaluate(f, pi, parse_assignment(pi, assignment), rho ? &*rho : nullptr, {short_circuit});
  py::dict stats;
  stats["calls"] = r.stats.calls;
  stats["node_evaluations"] = r.stats.node_evaluations;
  stats["conj"] = r.stats.conj;
  stats["disj"] = r.stats.disj;
  stats["comparisons"] = r.stats.comparisons;
  stats["quantifier_expansions"] = r.stats.quantifier_expansions;
  stats["max_depth"] = r.stats.max_depth;
  stats["bound"] = evaluation_bound(f, pi.size()).get_str();
  py::dict out;
  out["value"] = pi.semiring().format(r.value);
  out["nonzero"] = !pi.semiring().is_zero(r.value);
  out["stats"] = stats;
  return out;
}

py::dict machine_result(const Semiring& k, const std::vector<Element>& output, std::uint64_t steps,
                        std::size_t span) {
  py::dict d;
  d["output"] = formatted(k, output);
  d["steps"] = steps;
  d["span"] = span;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Semiring semantics for first-order logic, circuits and machines.";
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.def("semirings", [] {
    std::vector<std::string> names;
    for (Kind k : all_kinds()) names.emplace_back(kind_name(k));
    return names;
  });
  m.def("add", [](const std::string& s, const std::string& a, const std::string& b) {
    Semiring k = Semiring::from_name(s);
    return k.format(k.add(k.parse(a), k.parse(b)));
  });
  m.def("mul", [](const std::string& s, const std::string& a, const std::string& b) {
    Semiring k = Semiring::from_name(s);
    return k.format(k.mul(k.parse(a), k.parse(b)));
  });
  m.def("leq", [](const std::string& s, const std::string& a, const std::string& b) {
    Semiring k = Semiring::from_name(s);
    return k.leq(k.parse(a), k.parse(b));
  });
  m.def("check_laws", [](const std::string& s, const std::vector<std::string>& samples) {
    Semiring k = Semiring::from_name(s);
    auto elems = parsed(k, samples);
    return check_laws(k, elems).violations;
  });

  m.def("parse_formula", [](const std::string& text, const SymbolList& relations, const SymbolList& builtins) {
    return to_string(parse_formula(text, Vocabulary{symbols(relations), symbols(builtins)}));
  }, py::arg("text"), py::arg("relations"), py::arg("builtins") = SymbolList{});
  m.def("eliminate_comparisons", [](const std::string& text, const SymbolList& relations) {
    return to_string(eliminate_comparisons_boolean(parse_formula(text, Vocabulary{symbols(relations), {}})));
  });
  m.def("evaluate", &evaluate_py, py::arg("formula"), py::arg("interpretation"), py::arg("builtins") = py::none(),
        py::arg("assignment") = "", py::arg("short_circuit") = false);

  m.def("encode", [](const std::string& interpretation) {
    Interpretation pi = interpretation_from_json(interpretation);
    return formatted(pi.semiring(), encode(pi));
  });
  m.def("decode_universe_size", [](const std::string& length, const SymbolList& relations) {
    auto r = decode_universe_size(mpz_class(length), symbols(relations));
    return std::make_pair(r.n, r.probes);
  });

  m.def("formula_to_circuit", [](const std::string& formula, const std::string& semiring,
                                 const SymbolList& relations, std::size_t n) {
    Vocabulary vocab{symbols(relations), {}};
    return circuit_to_json(formula_to_circuit(parse_formula(formula, vocab), Semiring::from_name(semiring), vocab,
                                              nullptr, n));
  });
  m.def("evaluate_circuit", [](const std::string& circuit, const std::vector<std::string>& inputs) {
    Circuit c = circuit_from_json(circuit);
    return formatted(c.k, evaluate_circuit(c, parsed(c.k, inputs)));
  });
  m.def("measure", [](const std::string& circuit) {
    auto r = measure(circuit_from_json(circuit));
    return std::make_pair(r.size, r.depth);
  });
  m.def("normalize_to_tree", [](const std::string& circuit) {
    return circuit_to_json(normalize_to_tree(circuit_from_json(circuit)));
  });
  m.def("circuit_to_formula", [](const std::string& circuit, std::size_t n, std::size_t q) {
    Circuit c = circuit_from_json(circuit);
    CircuitSentence cs = circuit_to_formula(c, {n, q});
    return std::make_pair(to_string(cs.sentence), builtins_to_json(cs.rho, c.k, cs.encoding.n));
  }, py::arg("circuit"), py::arg("n") = 0, py::arg("q") = 0);

  m.def("bss_run", [](const std::string& program, const std::vector<std::string>& inputs, std::uint64_t limit) {
    BssProgram p = bss_from_json(program);
    BssRunOptions opts;
    opts.step_limit = limit;
    auto r = bss_run(p, parsed(p.k, inputs), opts);
    return machine_result(p.k, r.output, r.steps, r.span);
  }, py::arg("program"), py::arg("inputs"), py::arg("step_limit") = 10'000'000);
  m.def("ktm_run", [](const std::string& program, const std::vector<std::string>& inputs, std::uint64_t limit) {
    KtmProgram p = ktm_from_json(program);
    KtmRunOptions opts;
    opts.step_limit = limit;
    std::string joined;
    for (std::size_t i = 0; i < inputs.size(); ++i) joined += (i ? "," : "") + inputs[i];
    auto r = ktm_run(p, parse_cell_list(p, joined), opts);
    py::dict d;
    std::vector<std::string> out;
    for (const auto& c : r.output) out.push_back(c.is_value ? p.k.format(c.value) : c.symbol);
    d["output"] = out;
    d["steps"] = r.steps;
    d["span"] = r.span;
    d["state"] = r.final_state;
    return d;
  }, py::arg("program"), py::arg("inputs"), py::arg("step_limit") = 10'000'000);
  m.def("ktm_compile", [](const std::string& program) {
    auto r = ktm_to_bss(ktm_from_json(program));
    py::dict d;
    d["program"] = bss_to_json(r.program);
    d["constant"] = r.constant;
    d["block"] = r.block;
    return d;
  });

  m.def("fixture", [](const std::string& name, const std::string& semiring) {
    Semiring k = Semiring::from_name(semiring);
    if (name == "gap-init") return bss_to_json(gap_init(k, false));
    if (name == "gap-init-reverse") return bss_to_json(gap_init(k, true));
    if (name == "ktm-shift-copy") return ktm_to_json(ktm_fixture_shift_copy(k));
    if (name == "ktm-register-multiply") return ktm_to_json(ktm_fixture_register_multiply(k));
    if (name == "ktm-leq-indicator") return ktm_to_json(ktm_fixture_leq_indicator(k));
    throw Error("unknown fixture '" + name + "'");
  }, py::arg("name"), py::arg("semiring") = "nat");
}
