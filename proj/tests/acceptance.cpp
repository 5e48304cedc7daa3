// Acceptance run: one PASS/FAIL line per criterion.

#include "oracles.hpp"

#include "semfo/bss.hpp"
#include "semfo/compiler.hpp"
#include "semfo/evaluator.hpp"
#include "semfo/io.hpp"
#include "semfo/ktm.hpp"
#include "semfo/transforms.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

using namespace semfo;

namespace {

const std::string data_dir = SEMFO_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<Symbol> unary_binary = {{"P", 1}, {"E", 2}};

Outcome comparison_example() {
  auto t0 = Clock::now();
  Vocabulary vocab{{{"P", 1}, {"Q", 1}}, {}};
  Formula phi = parse_formula(read_text_file(data_dir + "/comparison/phi.txt"), vocab);
  Formula fq = parse_formula("forall x. Q(x)", vocab);
  Semiring nat = Semiring::make(Kind::natural);
  auto pi = interpretation_from_json(read_text_file(data_dir + "/comparison/pi.json"), nat);
  auto pi2 = interpretation_from_json(read_text_file(data_dir + "/comparison/pi_prime.json"), nat);
  Element a = evaluate(phi, pi).value, b = evaluate(phi, pi2).value, c = evaluate(fq, pi2).value;
  double t = seconds_since(t0);
  Outcome o;
  o.pass = pi.size() == 3 && equal(a, nat.one) && equal(b, nat.zero) && equal(c, Element(mpz_class(8))) && t < 1.0;
  o.detail = "pi -> " + nat.format(a) + ", pi' -> " + nat.format(b) + ", forall x. Q(x) under pi' -> " +
             nat.format(c) + ", " + std::to_string(t) + " s";
  return o;
}

Outcome classical_agreement() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(2201);
  oracle::FormulaGen gen({unary_binary, {"x", "y"}, 3, false, true, true}, rng);
  std::vector<Formula> formulas;
  std::set<std::string> seen;
  while (formulas.size() < 150) {
    Formula f = gen.sentence();
    if (seen.insert(to_string(f)).second) formulas.push_back(f);
  }
  std::size_t checks = 0, mismatches = 0, structures = 0;
  Semiring boolean = Semiring::make(Kind::boolean);
  for (std::size_t n = 1; n <= 3; ++n) {
    auto u = oracle::universe(n);
    std::size_t bits = n + n * n;
    for (std::size_t mask = 0; mask < (std::size_t{1} << bits); ++mask) {
      oracle::Structure s{n, {{"P", {}}, {"E", {}}}};
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) s.rel["P"].insert({i});
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (mask >> (n + i * n + j) & 1) s.rel["E"].insert({i, j});
      Interpretation pi = canonical_boolean(u, unary_binary, s.rel);
      ++structures;
      for (const auto& f : formulas) {
        bool ours = equal(evaluate(f, pi).value, boolean.one);
        if (ours != oracle::holds(s, f)) ++mismatches;
        ++checks;
      }
    }
  }
  double t = seconds_since(t0);
  return {mismatches == 0 && t < 60.0, std::to_string(formulas.size()) + " formulas x " + std::to_string(structures) +
                                           " structures, " + std::to_string(mismatches) + " mismatches in " +
                                           std::to_string(checks) + ", " + std::to_string(t) + " s"};
}

Outcome positivity() {
  std::mt19937_64 rng(2101);
  std::size_t specs = 0, mismatches = 0;
  std::string names;
  for (Kind kind : all_kinds()) {
    Semiring k = Semiring::make(kind);
    if (!k.positive) continue;
    ++specs;
    names += std::string(names.empty() ? "" : ",") + std::string(k.name());
    oracle::FormulaGen gen({unary_binary, {"x", "y"}, 3, false, true, true}, rng);
    for (int i = 0; i < 500; ++i) {
      Formula f = gen.sentence();
      std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
      Interpretation pi = oracle::random_interpretation(k, n, unary_binary, rng);
      bool z = k.is_zero(evaluate(f, pi).value);
      Semiring b = Semiring::make(Kind::boolean);
      bool zb = b.is_zero(evaluate(f, xi_interpretation(pi)).value);
      if (z != zb) ++mismatches;
    }
  }
  return {mismatches == 0 && specs >= 5,
          "500 pairs for each of " + names + ", " + std::to_string(mismatches) + " mismatches"};
}

Outcome elimination() {
  std::mt19937_64 rng(2601);
  Semiring b = Semiring::make(Kind::boolean);
  oracle::FormulaGen gen({unary_binary, {"x", "y"}, 3, true, true, true}, rng);
  std::size_t mismatches = 0, defining_mismatches = 0, leftover = 0;
  for (int i = 0; i < 200; ++i) {
    Formula f = gen.one_comparison_sentence();
    Formula g = eliminate_comparisons_boolean(f);
    if (count(g).compare != 0) ++leftover;
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    Interpretation pi = oracle::random_interpretation(b, n, unary_binary, rng);
    if (!equal(evaluate(f, pi).value, evaluate(g, pi).value)) ++mismatches;
    Interpretation md = oracle::random_structure(n, unary_binary, rng);
    if (!equal(evaluate(f, md).value, evaluate(g, md).value)) ++defining_mismatches;
  }
  return {mismatches == 0 && defining_mismatches == 0 && leftover == 0,
          "200 formulas, " + std::to_string(mismatches) + " mismatches on arbitrary interpretations, " +
              std::to_string(defining_mismatches) + " on model-defining ones, " + std::to_string(leftover) +
              " with comparisons left"};
}

Outcome forward_compiler() {
  std::mt19937_64 rng(2801);
  Vocabulary vocab{unary_binary, {}};
  oracle::FormulaGen gen({unary_binary, {"x", "y"}, 3, true, true, true}, rng);
  std::size_t value_bad = 0, depth_bad = 0, size_bad = 0, runs = 0;
  for (int i = 0; i < 100; ++i) {
    Formula f = gen.sentence();
    for (Kind kind : {Kind::natural, Kind::tropical}) {
      Semiring k = Semiring::make(kind);
      for (std::size_t n = 1; n <= 3; ++n) {
        Circuit c = formula_to_circuit(f, k, vocab, nullptr, n);
        Interpretation pi = oracle::random_interpretation(k, n, unary_binary, rng);
        auto out = evaluate_circuit(c, encode(pi));
        if (out.size() != 1 || !equal(out[0], evaluate(f, pi).value)) ++value_bad;
        ++runs;
      }
    }
    Semiring nat = Semiring::make(Kind::natural);
    std::optional<std::size_t> depth;
    for (std::size_t n = 1; n <= 6; ++n) {
      Circuit c = formula_to_circuit(f, nat, vocab, nullptr, n);
      auto m = measure(c);
      if (depth && *depth != m.depth) ++depth_bad;
      depth = m.depth;
      if (mpz_class(static_cast<unsigned long>(m.size)) != oracle::expected_gate_count(f, unary_binary, n)) ++size_bad;
    }
  }
  return {value_bad + depth_bad + size_bad == 0,
          std::to_string(runs) + " circuit evaluations, " + std::to_string(value_bad) + " value mismatches, " +
              std::to_string(depth_bad) + " depth changes, " + std::to_string(size_bad) + " size mismatches (n = 1..6)"};
}

Outcome backward_compiler() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(2802);
  std::size_t mismatches = 0, circuits = 0, evaluations = 0;
  for (Kind kind : {Kind::natural, Kind::tropical}) {
    Semiring k = Semiring::make(kind);
    for (int i = 0; i < 50; ++i) {
      Circuit c(k);
      do {
        c = normalize_to_tree(oracle::random_circuit(k, rng, {3, 12, 3, true, true}));
      } while (c.gates.size() > 12 || measure(c).depth > 3);
      ++circuits;
      CircuitSentence cs = circuit_to_formula(c);
      for (int j = 0; j < 20; ++j) {
        std::vector<Element> x;
        for (std::size_t a = 0; a < c.input_count(); ++a) x.push_back(random_element(k, rng));
        Interpretation pi = input_interpretation(k, cs.encoding.n, x);
        Element v = evaluate(cs.sentence, pi, {}, &cs.rho, {true}).value;
        if (!equal(v, oracle::naive_circuit(c, x).at(0))) ++mismatches;
        ++evaluations;
      }
    }
  }
  return {mismatches == 0, std::to_string(circuits) + " circuits, " + std::to_string(evaluations) + " inputs, " +
                               std::to_string(mismatches) + " mismatches, " + std::to_string(seconds_since(t0)) + " s"};
}

// Structural checks done here rather than through is_tree_normalized.
bool tree_shaped(const Circuit& c) {
  std::map<std::size_t, std::size_t> fanout;
  std::map<std::size_t, std::set<std::size_t>> dist;
  for (const auto& g : c.gates) {
    for (auto p : g.preds) ++fanout[p];
    if (g.preds.empty()) {
      dist[g.id] = {0};
    } else {
      for (auto p : g.preds)
        for (auto d : dist[p]) dist[g.id].insert(d + 1);
    }
    if (dist[g.id].size() != 1) return false;
  }
  for (const auto& g : c.gates)
    if (g.type != GateType::input && g.type != GateType::output && fanout[g.id] != 1) return false;
  return true;
}

Outcome normalization() {
  std::mt19937_64 rng(1501);
  std::size_t mismatches = 0, shape_bad = 0, circuits = 0;
  for (int i = 0; i < 50; ++i) {
    Kind kind = std::array{Kind::natural, Kind::tropical, Kind::boolean, Kind::polynomial}[i % 4];
    Semiring k = Semiring::make(kind);
    Circuit c = oracle::random_circuit(k, rng, {3, 16, 4, true, true});
    Circuit t = normalize_to_tree(c);
    ++circuits;
    if (!tree_shaped(t) || !is_tree_normalized(t) || !validate(t).empty()) ++shape_bad;
    for (int j = 0; j < 20; ++j) {
      std::vector<Element> x;
      for (std::size_t a = 0; a < c.input_count(); ++a) x.push_back(random_element(k, rng));
      auto want = oracle::naive_circuit(c, x);
      auto got = evaluate_circuit(t, x);
      if (want.size() != got.size() || !std::equal(want.begin(), want.end(), got.begin(), equal)) ++mismatches;
    }
  }
  return {mismatches + shape_bad == 0, std::to_string(circuits) + " circuits x 20 inputs, " +
                                           std::to_string(mismatches) + " output mismatches, " +
                                           std::to_string(shape_bad) + " structural violations"};
}

Outcome gap_normal_form() {
  Semiring nat = Semiring::make(Kind::natural);
  BssProgram fwd = bss_from_json(read_text_file(data_dir + "/bss/gap-init.json"), nat);
  BssProgram rev = bss_from_json(read_text_file(data_dir + "/bss/gap-init-reverse.json"), nat);
  bool fixtures_current = bss_to_json(fwd) == bss_to_json(gap_init(nat, false)) &&
                          bss_to_json(rev) == bss_to_json(gap_init(nat, true));
  std::mt19937_64 rng(601);
  std::map<std::size_t, std::uint64_t> steps;
  bool identity = true;
  for (std::size_t n : {4, 8, 16, 32}) {
    std::vector<Element> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(random_element(nat, rng));
    BssState start = bss_input_state(nat, x);
    auto before = start.snapshot();
    auto r1 = bss_run_state(fwd, start);
    BssState mid(nat);
    for (const auto& [i, v] : r1.final_state) mid.set(i, v);
    auto r2 = bss_run_state(rev, mid);
    auto same = r2.final_state.size() == before.size() &&
                std::equal(before.begin(), before.end(), r2.final_state.begin(),
                           [](const auto& a, const auto& b) { return a.first == b.first && equal(a.second, b.second); });
    identity = identity && same;
    steps[n] = r1.steps;
  }
  std::ostringstream d;
  bool ratio_ok = true;
  d << "forward steps";
  for (auto [n, s] : steps) d << " n=" << n << ":" << s;
  for (std::size_t n : {8, 16}) {
    double r = double(steps[2 * n]) / double(steps[n]);
    ratio_ok = ratio_ok && r <= 4.5;
    d << ", steps(" << 2 * n << ")/steps(" << n << ")=" << r;
  }
  d << ", round trip " << (identity ? "identity" : "differs") << ", fixtures " << (fixtures_current ? "current" : "stale");
  return {identity && ratio_ok && fixtures_current, d.str()};
}

Outcome ktm_compilation() {
  std::mt19937_64 rng(1001);
  std::size_t runs = 0, mismatches = 0, over = 0;
  double worst = 0;
  for (Kind kind : {Kind::natural, Kind::tropical}) {
    Semiring k = Semiring::make(kind);
    for (auto make : {ktm_fixture_shift_copy, ktm_fixture_register_multiply, ktm_fixture_leq_indicator}) {
      KtmProgram m = make(k);
      KtmCompileResult compiled = ktm_to_bss(m);
      for (int i = 0; i < 20; ++i) {
        std::size_t len = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
        std::vector<Element> x;
        for (std::size_t j = 0; j < len; ++j) x.push_back(random_element(k, rng));
        auto want = ktm_run(m, values_to_cells(x));
        auto fx = cells_to_values(want.output);
        auto got = bss_run(compiled.program, x);
        ++runs;
        if (got.output.size() != fx.size() || !std::equal(fx.begin(), fx.end(), got.output.begin(), equal))
          ++mismatches;
        double bound = double(compiled.constant) *
                       double(want.steps + len * len + fx.size() * fx.size() + 1);
        if (double(got.steps) > bound) ++over;
        worst = std::max(worst, double(got.steps) / bound);
      }
    }
  }
  return {mismatches + over == 0, std::to_string(runs) + " runs, " + std::to_string(mismatches) +
                                      " output mismatches, " + std::to_string(over) +
                                      " over the step bound, largest steps/bound " + std::to_string(worst)};
}

Outcome evaluation_steps() {
  std::mt19937_64 rng(1);
  std::size_t over_nodes = 0, over_calls = 0;
  for (int i = 0; i < 100; ++i) {
    Semiring k = Semiring::make(all_kinds()[i % all_kinds().size()]);
    oracle::FormulaGen gen({unary_binary, {"x", "y", "z"}, 4, false, true, true}, rng);
    Formula f = gen.sentence();
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    Interpretation pi = oracle::random_interpretation(k, n, unary_binary, rng);
    auto stats = evaluate(f, pi).stats;
    FormulaCounts c = count(f);
    mpz_class bound = 2 * (c.conj + c.disj) + 1;
    for (std::size_t q = 0; q < c.quantifiers; ++q) bound *= static_cast<unsigned long>(n);
    if (mpz_class(std::to_string(stats.node_evaluations)) > bound) ++over_nodes;
    if (mpz_class(std::to_string(stats.calls)) > bound) ++over_calls;
  }
  return {over_nodes == 0, "100 formulas, " + std::to_string(over_nodes) +
                               " over the bound counting evaluated subformula instances (" +
                               std::to_string(over_calls) + " would exceed it if quantifier nodes were also counted)"};
}

Outcome universe_decoding() {
  Semiring nat = Semiring::make(Kind::natural);
  std::size_t vocabularies = 0, checks = 0, bad = 0;
  std::vector<std::vector<std::size_t>> arities;
  for (std::size_t a = 0; a <= 3; ++a) {
    arities.push_back({a});
    for (std::size_t b = a; b <= 3; ++b) {
      arities.push_back({a, b});
      for (std::size_t c = b; c <= 3; ++c) arities.push_back({a, b, c});
    }
  }
  for (const auto& ar : arities) {
    std::vector<Symbol> rels;
    for (std::size_t i = 0; i < ar.size(); ++i) rels.push_back({"R" + std::to_string(i), ar[i]});
    ++vocabularies;
    for (std::size_t n = 0; n <= 20; ++n) {
      mpz_class len = 0;
      for (auto a : ar) {
        mpz_class p = 1;
        for (std::size_t i = 0; i < std::max<std::size_t>(a, 1); ++i) p *= static_cast<unsigned long>(n);
        len += 2 * p;
      }
      bool ok = encoding_length(rels, n) == len;
      if (n <= 6) ok = ok && encode(Interpretation(nat, oracle::universe(n), rels)).size() == len.get_ui();
      auto r = decode_universe_size(len, rels);
      std::size_t limit = static_cast<std::size_t>(std::ceil(std::log2(len.get_d() + 2)));
      ok = ok && r.n == n && r.probes <= limit;
      ++checks;
      if (!ok) ++bad;
    }
  }
  return {bad == 0, std::to_string(vocabularies) + " vocabularies x |A| = 0..20, " + std::to_string(bad) +
                        " failures in " + std::to_string(checks)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"comparison example values", comparison_example},
      {"Boolean semantics agrees with classical model checking", classical_agreement},
      {"zero-ness is preserved by the characteristic map", positivity},
      {"Boolean comparison elimination", elimination},
      {"formula to circuit compilation", forward_compiler},
      {"circuit to formula compilation", backward_compiler},
      {"tree normalization", normalization},
      {"gap normal form step bound", gap_normal_form},
      {"K-TM to BSS compilation", ktm_compilation},
      {"evaluation step bound", evaluation_steps},
      {"universe size decoding", universe_decoding},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << index << " " << c.name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
