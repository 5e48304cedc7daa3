#include <doctest.h>

#include "oracles.hpp"

#include "semfo/compiler.hpp"
#include "semfo/evaluator.hpp"
#include "semfo/io.hpp"

using namespace semfo;

namespace {

Element nat(long v) { return mpz_class(v); }

Circuit binary(GateType t, Kind kind = Kind::natural) {
  Circuit c(Semiring::make(kind));
  auto a = c.add_input(0), b = c.add_input(1);
  c.add_output(c.add_gate(t, {a, b}), 0);
  return c;
}

}  // namespace

TEST_CASE("validation") {
  CHECK(validate(binary(GateType::add)).empty());

  Circuit empty_sum(Semiring::make(Kind::natural));
  empty_sum.add_output(empty_sum.add_gate(GateType::add, {}), 0);
  CHECK_FALSE(validate(empty_sum).empty());

  Circuit eq3(Semiring::make(Kind::natural));
  auto a = eq3.add_input(0);
  eq3.add_output(eq3.add_gate(GateType::eq, {a, a, a}), 0);
  CHECK_FALSE(validate(eq3).empty());

  Circuit unordered(Semiring::make(Kind::natural));
  unordered.k.ordered = false;
  auto x = unordered.add_input(0);
  unordered.add_output(unordered.add_gate(GateType::leq, {x, x}), 0);
  CHECK_FALSE(validate(unordered).empty());

  CHECK_THROWS_AS(evaluate_circuit(empty_sum, {}), CircuitError);
  CHECK_THROWS_AS(evaluate_circuit(binary(GateType::add), {nat(1)}), CircuitError);
}

TEST_CASE("evaluation") {
  CHECK(equal(evaluate_circuit(binary(GateType::add), {nat(2), nat(3)}).at(0), nat(5)));
  Semiring t = Semiring::make(Kind::tropical);
  CHECK(equal(evaluate_circuit(binary(GateType::mul, Kind::tropical), {t.parse("3"), t.parse("5")}).at(0),
              t.parse("8")));
  CHECK(equal(evaluate_circuit(binary(GateType::eq), {nat(4), nat(4)}).at(0), nat(1)));
  CHECK(equal(evaluate_circuit(binary(GateType::eq), {nat(4), nat(5)}).at(0), nat(0)));
  CHECK(equal(evaluate_circuit(binary(GateType::leq), {nat(4), nat(5)}).at(0), nat(1)));
  CHECK(equal(evaluate_circuit(binary(GateType::nleq), {nat(4), nat(5)}).at(0), nat(0)));
}

TEST_CASE("measures") {
  Circuit c(Semiring::make(Kind::natural));
  c.add_output(c.add_constant(nat(5)), 0);
  CHECK(measure(c).size == 2);
  CHECK(measure(c).depth == 1);

  Circuit d(Semiring::make(Kind::natural));
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < 4; ++i) in.push_back(d.add_input(i));
  auto s1 = d.add_gate(GateType::add, {in[0], in[1]});
  auto s2 = d.add_gate(GateType::add, {in[2], in[3]});
  d.add_output(d.add_gate(GateType::mul, {s1, s2}), 0);
  CHECK(measure(d).size == 8);
  CHECK(measure(d).depth == 3);
}

TEST_CASE("normalization duplicates shared gates and pads paths") {
  Circuit c(Semiring::make(Kind::natural));
  auto a = c.add_input(0), b = c.add_input(1);
  auto s = c.add_gate(GateType::add, {a, b});
  auto m = c.add_gate(GateType::mul, {s, s, a});
  c.add_output(m, 0);
  CHECK_FALSE(is_tree_normalized(c));
  Circuit t = normalize_to_tree(c);
  CHECK(validate(t).empty());
  CHECK(is_tree_normalized(t));
  CHECK(measure(t).depth == measure(c).depth);
  std::mt19937_64 rng(15);
  for (int i = 0; i < 20; ++i) {
    std::vector<Element> x = {random_element(c.k, rng), random_element(c.k, rng)};
    CHECK(equal(evaluate_circuit(t, x).at(0), evaluate_circuit(c, x).at(0)));
  }
  Circuit again = normalize_to_tree(t);
  CHECK(measure(again).size == measure(t).size);
}

TEST_CASE("random circuits agree with the naive evaluator") {
  std::mt19937_64 rng(99);
  for (Kind kind : all_kinds()) {
    Semiring k = Semiring::make(kind);
    for (int i = 0; i < 20; ++i) {
      Circuit c = oracle::random_circuit(k, rng, {3, 16, 4, true, true});
      REQUIRE(validate(c).empty());
      std::vector<Element> x;
      for (std::size_t a = 0; a < c.input_count(); ++a) x.push_back(random_element(k, rng));
      auto want = oracle::naive_circuit(c, x);
      auto got = evaluate_circuit(c, x);
      auto norm = evaluate_circuit(normalize_to_tree(c), x);
      CHECK(equal(got.at(0), want.at(0)));
      CHECK(equal(norm.at(0), want.at(0)));
    }
  }
}

TEST_CASE("formula to circuit") {
  Vocabulary vocab{{{"P", 1}}, {}};
  Semiring nat_k = Semiring::make(Kind::natural);
  Formula f = parse_formula("exists x. P(x)", vocab);
  Circuit c = formula_to_circuit(f, nat_k, vocab, nullptr, 2);
  CHECK(validate(c).empty());
  CHECK(c.input_count() == 4);
  CHECK(measure(c).size == 6);
  // enc = (P(1), P(2), ~P(1), ~P(2))
  CHECK(equal(evaluate_circuit(c, {nat(2), nat(3), nat(0), nat(0)}).at(0), nat(5)));
  for (const auto& x : std::vector<std::vector<long>>{{2, 0, 3, 0}, {0, 4, 1, 1}}) {
    std::vector<Element> enc;
    for (long v : x) enc.push_back(nat(v));
    Interpretation pi = decode(nat_k, {"1", "2"}, vocab.relations, enc);
    CHECK(equal(evaluate_circuit(c, enc).at(0), evaluate(f, pi).value));
  }

  Formula g = parse_formula("forall x. x = x", vocab);
  for (Kind kind : all_kinds()) {
    Semiring k = Semiring::make(kind);
    Circuit h = formula_to_circuit(g, k, vocab, nullptr, 3);
    std::vector<Element> zeros(6, k.zero);
    CHECK(equal(evaluate_circuit(h, zeros).at(0), k.one));
  }
}

TEST_CASE("formula to circuit with built-ins") {
  Semiring nat_k = Semiring::make(Kind::natural);
  Vocabulary vocab{{{"P", 1}}, {{"L", 2}}};
  BuiltinInterpretation rho;
  rho.symbols["L"] = {2, Family::less(nat_k.one), Family::constant(nat_k.zero)};
  Formula f = parse_formula("exists x y. (L(x, y) & P(y))", vocab);
  std::mt19937_64 rng(28);
  for (std::size_t n = 1; n <= 4; ++n) {
    Circuit c = formula_to_circuit(f, nat_k, vocab, &rho, n);
    Interpretation pi = oracle::random_interpretation(nat_k, n, vocab.relations, rng);
    CHECK(equal(evaluate_circuit(c, encode(pi)).at(0), evaluate(f, pi, {}, &rho).value));
  }
}

TEST_CASE("gate encoding") {
  GateEncoding e{3, 2, 7};
  for (std::size_t g = 0; g < 7; ++g) {
    auto t = e.tuple(g);
    REQUIRE(t.size() == 2);
    CHECK(e.gate(t) == g);
  }
  CHECK_FALSE(e.gate({3, 3}).has_value());
}

TEST_CASE("circuit to formula") {
  Semiring nat_k = Semiring::make(Kind::natural);
  Circuit c(nat_k);
  c.add_output(c.add_constant(nat(5)), 0);
  CHECK_THROWS_AS(circuit_to_formula(c, {1, 1}), Error);
  CircuitSentence cs = circuit_to_formula(c);
  CHECK(cs.encoding.n == 2);
  CHECK(cs.encoding.q == 1);
  Interpretation pi = input_interpretation(nat_k, 2, {});
  CHECK(equal(evaluate(cs.sentence, pi, {}, &cs.rho).value, nat(5)));

  Circuit sum = binary(GateType::add);
  CHECK_THROWS_AS(circuit_to_formula(sum, {2, 1}), Error);
  CircuitSentence ss = circuit_to_formula(sum);
  CHECK(ss.encoding.n == 2);
  Interpretation px = input_interpretation(nat_k, ss.encoding.n, {nat(4), nat(9)});
  CHECK(equal(evaluate(ss.sentence, px, {}, &ss.rho, {true}).value, nat(13)));
  CHECK(equal(evaluate(ss.sentence, px, {}, &ss.rho).value, nat(13)));
}

TEST_CASE("circuit to formula on random tree circuits") {
  std::mt19937_64 rng(280);
  for (Kind kind : {Kind::natural, Kind::tropical, Kind::boolean}) {
    Semiring k = Semiring::make(kind);
    for (int i = 0; i < 10; ++i) {
      Circuit c = normalize_to_tree(oracle::random_circuit(k, rng, {2, 10, 3, true, true}));
      CircuitSentence cs = circuit_to_formula(c);
      for (int j = 0; j < 5; ++j) {
        std::vector<Element> x;
        for (std::size_t a = 0; a < c.input_count(); ++a) x.push_back(random_element(k, rng));
        Interpretation pi = input_interpretation(k, cs.encoding.n, x);
        CHECK(equal(evaluate(cs.sentence, pi, {}, &cs.rho, {true}).value, evaluate_circuit(c, x).at(0)));
      }
    }
  }
}

TEST_CASE("circuit files round trip") {
  std::mt19937_64 rng(5);
  for (Kind kind : all_kinds()) {
    Semiring k = Semiring::make(kind);
    Circuit c = oracle::random_circuit(k, rng, {3, 16, 4, true, true});
    std::string text = circuit_to_json(c);
    Circuit back = circuit_from_json(text, k);
    CHECK(circuit_to_json(back) == text);
  }
  CHECK_THROWS_AS(circuit_from_json("{\"semiring\": \"nat\", \"gates\": [{\"id\": 0, \"type\": \"wat\"}]}"),
                  FormatError);
}
