#include "semfo/compiler.hpp"
#include "semfo/evaluator.hpp"
#include "semfo/io.hpp"
#include "semfo/transforms.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <sstream>

using namespace semfo;

namespace {

struct Failure {
  int code;
};

std::optional<Semiring> selected(const std::string& name) {
  if (name.empty()) return std::nullopt;
  return Semiring::from_name(name);
}

std::vector<Symbol> parse_vocabulary(const std::string& text) {
  std::vector<Symbol> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    auto slash = item.find('/');
    if (slash == std::string::npos) throw Error("vocabulary item '" + item + "' must look like NAME/ARITY");
    out.push_back({item.substr(0, slash), static_cast<std::size_t>(std::stoul(item.substr(slash + 1)))});
  }
  return out;
}

Formula load_formula(const std::string& path, const Vocabulary& vocab, bool strict) {
  std::string text = read_text_file(path);
  Formula f;
  try {
    f = parse_formula(text, vocab);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
  if (strict) {
    auto v = validate_strict(f);
    if (!v.empty()) throw Error(path + ": " + v.front());
  }
  return f;
}

Interpretation random_interpretation(const Semiring& k, std::size_t n, const std::vector<Symbol>& rels,
                                     std::mt19937_64& rng) {
  std::vector<std::string> universe;
  for (std::size_t i = 1; i <= n; ++i) universe.push_back(std::to_string(i));
  Interpretation pi(k, universe, rels);
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (std::size_t t = 0; t < pi.tuple_count(r); ++t) {
      pi.set(r, t, false, random_element(k, rng));
      pi.set(r, t, true, random_element(k, rng));
    }
  return pi;
}

void print_trace_bss(const BssTraceEntry& t) {
  std::cerr << "step " << t.step << " node " << t.node << " offset " << t.offset << " span " << t.span << "\n";
}

void print_trace_ktm(const KtmTraceEntry& t) {
  std::cerr << "step " << t.step << " state " << t.state << " head " << t.head << " span " << t.span << "\n";
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semfo: semiring semantics for first-order logic, circuits and machines"};
  app.require_subcommand(1, 1);
  std::function<void()> run;

  std::string semiring_name;
  auto add_semiring = [&](CLI::App* c) {
    c->add_option("--semiring", semiring_name, "semiring instance (bool, nat, tropical, lukasiewicz, prob, poly)");
  };

  // ---- eval
  std::string formula_path, interp_path, builtins_path, assignment;
  bool mc = false, stats = false, strict = false, short_circuit = false;
  auto* eval = app.add_subcommand("eval", "evaluate a formula in an interpretation");
  eval->add_option("formula", formula_path, "formula file")->required()->check(CLI::ExistingFile);
  eval->add_option("interpretation", interp_path, "interpretation file")->required()->check(CLI::ExistingFile);
  eval->add_option("--builtins", builtins_path, "built-in interpretation file")->check(CLI::ExistingFile);
  eval->add_option("--assign", assignment, "assignment, e.g. \"x=a, y=b\"");
  eval->add_flag("--mc", mc, "also answer whether the value is nonzero");
  eval->add_flag("--stats", stats, "print evaluation statistics");
  eval->add_flag("--strict-grammar", strict, "reject comparisons between comparison-bearing formulas");
  eval->add_flag("--short-circuit", short_circuit, "skip subformulas that cannot change the value");
  add_semiring(eval);
  eval->callback([&] {
    run = [&] {
      Interpretation pi = interpretation_from_json(read_text_file(interp_path), selected(semiring_name));
      Vocabulary vocab;
      vocab.relations = pi.relations();
      std::optional<BuiltinInterpretation> rho;
      if (!builtins_path.empty()) {
        rho = builtins_from_json(read_text_file(builtins_path), pi.semiring());
        vocab.builtins = rho->vocabulary();
      }
      Formula f = load_formula(formula_path, vocab, strict);
      Assignment s = parse_assignment(pi, assignment);
      EvalOptions opts;
      opts.short_circuit = short_circuit;
      EvalResult r = evaluate(f, pi, s, rho ? &*rho : nullptr, opts);
      std::cout << pi.semiring().format(r.value) << "\n";
      if (mc) std::cout << "model-check: " << (pi.semiring().is_zero(r.value) ? "no" : "yes") << "\n";
      if (stats) {
        const auto& st = r.stats;
        std::cout << "stats: calls=" << st.calls << " node_evaluations=" << st.node_evaluations
                  << " conj=" << st.conj << " disj=" << st.disj << " comparisons=" << st.comparisons
                  << " quantifier_expansions=" << st.quantifier_expansions << " max_depth=" << st.max_depth
                  << " bound=" << evaluation_bound(f, pi.size()).get_str() << "\n";
      }
    };
  });

  // ---- encode
  auto* enc = app.add_subcommand("encode", "print the flat encoding of an interpretation");
  enc->add_option("interpretation", interp_path, "interpretation file")->required()->check(CLI::ExistingFile);
  add_semiring(enc);
  enc->callback([&] {
    run = [&] {
      Interpretation pi = interpretation_from_json(read_text_file(interp_path), selected(semiring_name));
      auto v = encode(pi);
      std::cout << format_element_list(pi.semiring(), v) << "\n";
      std::cout << "length: " << v.size() << "\n";
    };
  });

  // ---- decode-size
  std::string length_text, vocab_text;
  auto* dec = app.add_subcommand("decode-size", "recover the universe size from an encoding length");
  dec->add_option("length", length_text, "encoding length")->required();
  dec->add_option("--vocabulary", vocab_text, "relations, e.g. \"E/2, P/1\"")->required();
  dec->callback([&] {
    run = [&] {
      mpz_class len;
      if (len.set_str(length_text, 10) != 0 || len < 0) throw Error("length must be a natural number");
      auto r = decode_universe_size(len, parse_vocabulary(vocab_text));
      std::cout << "n: " << r.n << "\nprobes: " << r.probes << "\n";
    };
  });

  // ---- compile
  std::string direction, input_path, out_path, builtins_out;
  std::size_t n = 0, q = 0, verify = 0;
  std::uint64_t seed = 1;
  auto* comp = app.add_subcommand("compile", "translate between sentences and circuits");
  comp->add_option("direction", direction, "to-circuit or to-formula")
      ->required()
      ->check(CLI::IsMember({"to-circuit", "to-formula"}));
  comp->add_option("input", input_path, "formula file (to-circuit) or circuit file (to-formula)")
      ->required()
      ->check(CLI::ExistingFile);
  comp->add_option("-n", n, "universe size");
  comp->add_option("-q", q, "tuple width for gate encoding (to-formula)");
  comp->add_option("-o,--output", out_path, "output file, default stdout");
  comp->add_option("--builtins-out", builtins_out, "built-in interpretation output (to-formula)");
  comp->add_option("--vocabulary", vocab_text, "relations of the formula, e.g. \"P/1\" (to-circuit)");
  comp->add_option("--builtins", builtins_path, "built-in interpretation file (to-circuit)")->check(CLI::ExistingFile);
  comp->add_option("--verify", verify, "cross-check on this many random inputs");
  comp->add_option("--seed", seed, "random seed for --verify");
  comp->add_flag("--strict-grammar", strict, "reject comparisons between comparison-bearing formulas");
  add_semiring(comp);
  comp->callback([&] {
    run = [&] {
      std::mt19937_64 rng(seed);
      if (direction == "to-circuit") {
        if (semiring_name.empty()) throw Error("to-circuit needs --semiring");
        if (n == 0) throw Error("to-circuit needs -n >= 1");
        Semiring k = Semiring::from_name(semiring_name);
        Vocabulary vocab;
        vocab.relations = parse_vocabulary(vocab_text);
        std::optional<BuiltinInterpretation> rho;
        if (!builtins_path.empty()) {
          rho = builtins_from_json(read_text_file(builtins_path), k);
          vocab.builtins = rho->vocabulary();
        }
        Formula f = load_formula(input_path, vocab, strict);
        Circuit c = formula_to_circuit(f, k, vocab, rho ? &*rho : nullptr, n);
        emit(out_path, circuit_to_json(c));
        auto m = measure(c);
        std::cerr << "size " << m.size << ", depth " << m.depth << "\n";
        if (verify) {
          std::size_t bad = 0;
          for (std::size_t i = 0; i < verify; ++i) {
            Interpretation pi = random_interpretation(k, n, vocab.relations, rng);
            Element a = evaluate(f, pi, {}, rho ? &*rho : nullptr).value;
            Element b = evaluate_circuit(c, encode(pi)).at(0);
            if (!equal(a, b)) ++bad;
          }
          std::cout << "verify: " << (bad ? "fail" : "pass") << " (" << verify - bad << "/" << verify << ")\n";
          if (bad) throw Failure{1};
        }
      } else {
        Circuit c = circuit_from_json(read_text_file(input_path), selected(semiring_name));
        auto problems = validate(c);
        if (!problems.empty()) throw CircuitError(input_path + ": " + problems.front());
        CircuitToFormulaOptions opts;
        opts.n = n;
        opts.q = q;
        CircuitSentence cs = circuit_to_formula(c, opts);
        emit(out_path, to_string(cs.sentence) + "\n");
        if (!builtins_out.empty()) write_text_file(builtins_out, builtins_to_json(cs.rho, c.k, cs.encoding.n));
        std::cerr << "n " << cs.encoding.n << ", q " << cs.encoding.q << ", depth " << cs.depth << "\n";
        if (verify) {
          std::size_t bad = 0;
          for (std::size_t i = 0; i < verify; ++i) {
            std::vector<Element> x;
            for (std::size_t j = 0; j < c.input_count(); ++j) x.push_back(random_element(c.k, rng));
            Element a = evaluate(cs.sentence, input_interpretation(c.k, cs.encoding.n, x), {}, &cs.rho, {true}).value;
            Element b = evaluate_circuit(c, x).at(0);
            if (!equal(a, b)) ++bad;
          }
          std::cout << "verify: " << (bad ? "fail" : "pass") << " (" << verify - bad << "/" << verify << ")\n";
          if (bad) throw Failure{1};
        }
      }
    };
  });

  // ---- circuit-eval
  std::string circuit_path, input_text;
  bool normalize = false, dot = false;
  auto* ce = app.add_subcommand("circuit-eval", "evaluate a circuit");
  ce->add_option("circuit", circuit_path, "circuit file")->required()->check(CLI::ExistingFile);
  ce->add_option("--input", input_text, "comma-separated input values");
  ce->add_flag("--stats", stats, "print size and depth");
  ce->add_flag("--normalize", normalize, "evaluate the tree-normalized circuit and write it to -o");
  ce->add_flag("--dot", dot, "print the circuit in DOT format instead of evaluating");
  ce->add_option("-o,--output", out_path, "file for the normalized circuit");
  add_semiring(ce);
  ce->callback([&] {
    run = [&] {
      Circuit c = circuit_from_json(read_text_file(circuit_path), selected(semiring_name));
      auto problems = validate(c);
      if (!problems.empty()) throw CircuitError(circuit_path + ": " + problems.front());
      if (normalize) {
        c = normalize_to_tree(c);
        if (!out_path.empty()) write_text_file(out_path, circuit_to_json(c));
      }
      if (dot) {
        std::cout << to_dot(c);
        return;
      }
      auto out = evaluate_circuit(c, parse_element_list(c.k, input_text));
      std::cout << format_element_list(c.k, out) << "\n";
      if (stats) {
        auto m = measure(c);
        std::cout << "size: " << m.size << "\ndepth: " << m.depth << "\n";
      }
    };
  });

  // ---- bss-run
  std::string program_path;
  std::uint64_t step_limit = 10'000'000;
  bool trace = false, show_state = false;
  auto* br = app.add_subcommand("bss-run", "run a BSS program");
  br->add_option("program", program_path, "BSS program file")->required()->check(CLI::ExistingFile);
  br->add_option("--input", input_text, "comma-separated input values");
  br->add_option("--step-limit", step_limit, "abort after this many steps")->check(CLI::PositiveNumber);
  br->add_flag("--trace", trace, "one line per step on stderr");
  br->add_flag("--state", show_state, "print the nonzero coordinates of the final state");
  add_semiring(br);
  br->callback([&] {
    run = [&] {
      BssProgram p = bss_from_json(read_text_file(program_path), selected(semiring_name));
      BssRunOptions opts;
      opts.step_limit = step_limit;
      if (trace) opts.trace = print_trace_bss;
      auto r = bss_run(p, parse_element_list(p.k, input_text), opts);
      std::cout << "output: " << format_element_list(p.k, r.output) << "\nsteps: " << r.steps
                << "\nspan: " << r.span << "\n";
      if (show_state) {
        std::cout << "state:";
        for (const auto& [i, v] : r.final_state) std::cout << " " << i << "=" << p.k.format(v);
        std::cout << "\n";
      }
    };
  });

  // ---- ktm-run
  auto* kr = app.add_subcommand("ktm-run", "run a K-Turing machine");
  kr->add_option("program", program_path, "K-TM file")->required()->check(CLI::ExistingFile);
  kr->add_option("--input", input_text, "comma-separated tape contents (symbols or values)");
  kr->add_option("--step-limit", step_limit, "abort after this many steps")->check(CLI::PositiveNumber);
  kr->add_flag("--trace", trace, "one line per step on stderr");
  add_semiring(kr);
  kr->callback([&] {
    run = [&] {
      KtmProgram p = ktm_from_json(read_text_file(program_path), selected(semiring_name));
      KtmRunOptions opts;
      opts.step_limit = step_limit;
      if (trace) opts.trace = print_trace_ktm;
      auto r = ktm_run(p, parse_cell_list(p, input_text), opts);
      std::cout << "output: " << format_cell_list(p.k, r.output) << "\nsteps: " << r.steps << "\nspan: " << r.span
                << "\nstate: " << r.final_state << "\n";
      if (r.ill_typed_halt) std::cout << "halted on an ill-typed action\n";
    };
  });

  // ---- ktm-compile
  auto* kc = app.add_subcommand("ktm-compile", "compile a K-Turing machine into a BSS program");
  kc->add_option("program", program_path, "K-TM file")->required()->check(CLI::ExistingFile);
  kc->add_option("-o,--output", out_path, "BSS program output file")->required();
  add_semiring(kc);
  kc->callback([&] {
    run = [&] {
      KtmProgram p = ktm_from_json(read_text_file(program_path), selected(semiring_name));
      auto r = ktm_to_bss(p);
      write_text_file(out_path, bss_to_json(r.program));
      std::cout << "nodes: " << r.program.nodes.size() << "\nblock: " << r.block << "\nconstant: " << r.constant
                << "\n";
    };
  });

  // ---- check-laws
  std::string samples_text;
  auto* cl = app.add_subcommand("check-laws", "check the semiring laws on sample elements");
  cl->add_option("--samples", samples_text, "comma-separated samples, default a built-in set");
  add_semiring(cl);
  cl->callback([&] {
    run = [&] {
      if (semiring_name.empty()) throw Error("check-laws needs --semiring");
      Semiring k = Semiring::from_name(semiring_name);
      auto samples = samples_text.empty() ? standard_samples(k) : parse_element_list(k, samples_text);
      auto rep = check_laws(k, samples);
      for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
      std::cout << k.name() << ": " << (rep.ok() ? "ok" : "violated") << " on " << samples.size() << " samples\n";
      if (!rep.ok()) throw Failure{1};
    };
  });

  // ---- fixture
  std::string fixture;
  auto* fx = app.add_subcommand("fixture", "write a built-in fixture program");
  fx->add_option("name", fixture, "fixture name")
      ->required()
      ->check(CLI::IsMember({"gap-init", "gap-init-reverse", "ktm-shift-copy", "ktm-register-multiply",
                             "ktm-leq-indicator"}));
  fx->add_option("-o,--output", out_path, "output file, default stdout");
  add_semiring(fx);
  fx->callback([&] {
    run = [&] {
      Semiring k = Semiring::from_name(semiring_name.empty() ? "nat" : semiring_name);
      if (fixture == "gap-init") emit(out_path, bss_to_json(gap_init(k, false)));
      if (fixture == "gap-init-reverse") emit(out_path, bss_to_json(gap_init(k, true)));
      if (fixture == "ktm-shift-copy") emit(out_path, ktm_to_json(ktm_fixture_shift_copy(k)));
      if (fixture == "ktm-register-multiply") emit(out_path, ktm_to_json(ktm_fixture_register_multiply(k)));
      if (fixture == "ktm-leq-indicator") emit(out_path, ktm_to_json(ktm_fixture_leq_indicator(k)));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    run();
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
