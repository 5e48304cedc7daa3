#include <doctest.h>

#include "semfo/bss.hpp"
#include "semfo/io.hpp"
#include "semfo/ktm.hpp"

using namespace semfo;

namespace {

const std::string data_dir = SEMFO_DATA_DIR;

Element nat(long v) { return mpz_class(v); }

std::vector<Element> nats(std::initializer_list<long> xs) {
  std::vector<Element> v;
  for (long x : xs) v.push_back(nat(x));
  return v;
}

bool same(const std::vector<Element>& a, const std::vector<Element>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), equal);
}

BssProgram load_bss(const std::string& name) {
  return bss_from_json(read_text_file(data_dir + "/bss/" + name), Semiring::make(Kind::natural));
}

}  // namespace

TEST_CASE("BSS state shifts move the dot") {
  Semiring k = Semiring::make(Kind::natural);
  BssState s(k);
  s.set(1, nat(7));
  s.set(2, nat(8));
  s.shift(true);
  CHECK(equal(s.get(0), nat(7)));
  CHECK(equal(s.get(1), nat(8)));
  s.shift(false);
  s.shift(false);
  CHECK(equal(s.get(2), nat(7)));
  CHECK(equal(s.get(1), nat(0)));
}

TEST_CASE("input and output mapping") {
  Semiring k = Semiring::make(Kind::natural);
  BssState s = bss_input_state(k, nats({4, 0, 6}));
  auto snap = s.snapshot();
  CHECK(equal(snap.at(-1), nat(1)));
  CHECK(equal(snap.at(-3), nat(1)));
  CHECK(snap.count(-4) == 0);
  CHECK(snap.count(2) == 0);
  CHECK(same(bss_output(s), nats({4, 0, 6})));
}

TEST_CASE("adder fixture") {
  BssProgram p = load_bss("adder.json");
  CHECK(p.validate().empty());
  CHECK(p.nodes.size() == 6);
  auto r = bss_run(p, nats({2, 3}));
  CHECK(same(r.output, nats({5})));
}

TEST_CASE("identity and step limits") {
  auto r = bss_run(load_bss("identity.json"), nats({7}));
  CHECK(same(r.output, nats({7})));
  CHECK(r.steps == 1);
  BssRunOptions opts;
  opts.step_limit = 100;
  CHECK_THROWS_AS(bss_run(load_bss("loop.json"), nats({1}), opts), StepLimitExceeded);
}

TEST_CASE("malformed BSS programs are rejected") {
  Semiring k = Semiring::make(Kind::natural);
  BssProgram p(k);
  p.nodes.push_back({1, BssNodeType::input});
  p.nodes.back().next = 5;
  p.nodes.push_back({2, BssNodeType::output});
  CHECK_FALSE(p.validate().empty());
  CHECK_THROWS_AS(bss_run(p, {}), MachineError);
}

TEST_CASE("gap normal form") {
  Semiring k = Semiring::make(Kind::natural);
  BssProgram fwd = gap_init(k, false), rev = gap_init(k, true);
  CHECK(fwd.validate().empty());
  CHECK(rev.validate().empty());
  BssState s = bss_input_state(k, nats({4, 5, 6}));
  auto r = bss_run_state(fwd, s);
  std::map<long, long> want = {{1, 4}, {2, 1}, {3, 5}, {4, 1}, {5, 6}, {6, 1}};
  REQUIRE(r.final_state.size() == want.size());
  for (auto [i, v] : want) CHECK(equal(r.final_state.at(i), nat(v)));

  BssState mid(k);
  for (const auto& [i, v] : r.final_state) mid.set(i, v);
  auto back = bss_run_state(rev, mid);
  auto start = bss_input_state(k, nats({4, 5, 6})).snapshot();
  REQUIRE(back.final_state.size() == start.size());
  for (const auto& [i, v] : start) CHECK(equal(back.final_state.at(i), v));

  // Zero values must survive the round trip as well.
  BssState z = bss_input_state(k, nats({0, 3, 0, 0}));
  auto zr = bss_run_state(fwd, z);
  CHECK(equal(zr.final_state.at(2), nat(1)));
  CHECK(equal(zr.final_state.at(8), nat(1)));
  CHECK(zr.final_state.count(1) == 0);
}

TEST_CASE("gap normal form steps grow quadratically") {
  Semiring k = Semiring::make(Kind::natural);
  BssProgram fwd = gap_init(k, false);
  std::vector<std::uint64_t> steps;
  for (std::size_t n : {8, 16, 32, 64}) {
    std::vector<Element> x(n, nat(2));
    steps.push_back(bss_run(fwd, x).steps);
  }
  for (std::size_t i = 1; i < steps.size(); ++i) {
    double ratio = double(steps[i]) / double(steps[i - 1]);
    CHECK(ratio <= 4.5);
    CHECK(ratio >= 2.0);
  }
}

TEST_CASE("K-TM fixtures") {
  Semiring k = Semiring::make(Kind::natural);
  auto shift = ktm_run(ktm_fixture_shift_copy(k), values_to_cells(nats({3, 1, 4})));
  CHECK(same(cells_to_values(shift.output), nats({3, 1, 4})));
  auto mult = ktm_run(ktm_fixture_register_multiply(k), values_to_cells(nats({2, 3, 4})));
  CHECK(same(cells_to_values(mult.output), nats({4, 6, 8})));
  auto leq = ktm_run(ktm_fixture_leq_indicator(k), values_to_cells(nats({3, 1, 4, 3})));
  CHECK(same(cells_to_values(leq.output), nats({1, 1, 0, 1})));
  auto empty = ktm_run(ktm_fixture_register_multiply(k), {});
  CHECK(empty.output.empty());

  Semiring t = Semiring::make(Kind::tropical);
  auto tm = ktm_run(ktm_fixture_register_multiply(t), values_to_cells(parse_element_list(t, "2, 3, inf")));
  CHECK(format_element_list(t, cells_to_values(tm.output)) == "4, 5, inf");
}

TEST_CASE("K-TM fixture files match the built-in machines") {
  Semiring k = Semiring::make(Kind::natural);
  CHECK(ktm_to_json(ktm_from_json(read_text_file(data_dir + "/ktm/shift-copy.json"), k)) ==
        ktm_to_json(ktm_fixture_shift_copy(k)));
  CHECK(ktm_to_json(ktm_from_json(read_text_file(data_dir + "/ktm/register-multiply.json"), k)) ==
        ktm_to_json(ktm_fixture_register_multiply(k)));
  CHECK(ktm_to_json(ktm_from_json(read_text_file(data_dir + "/ktm/leq-indicator.json"), k)) ==
        ktm_to_json(ktm_fixture_leq_indicator(k)));
}

TEST_CASE("K-TM step limit and validation") {
  Semiring k = Semiring::make(Kind::natural);
  KtmProgram p = ktm_fixture_shift_copy(k);
  KtmRunOptions opts;
  opts.step_limit = 2;
  CHECK_THROWS_AS(ktm_run(p, values_to_cells(nats({1, 2, 3, 4})), opts), StepLimitExceeded);
  KtmProgram bad = p;
  bad.initial = "nowhere";
  CHECK_FALSE(bad.validate().empty());
  CHECK_THROWS_AS(ktm_run(bad, {}), MachineError);
  CHECK_THROWS_AS(cells_to_values({Cell::sym("b")}), MachineError);
}

TEST_CASE("compiled K-TMs agree with direct runs") {
  std::mt19937_64 rng(10);
  for (Kind kind : {Kind::natural, Kind::tropical, Kind::boolean}) {
    Semiring k = Semiring::make(kind);
    for (auto make : {ktm_fixture_shift_copy, ktm_fixture_register_multiply, ktm_fixture_leq_indicator}) {
      KtmProgram m = make(k);
      KtmCompileResult c = ktm_to_bss(m);
      CHECK(c.program.validate().empty());
      CHECK(c.block % 2 == 0);
      for (std::size_t len = 0; len <= 5; ++len) {
        std::vector<Element> x;
        for (std::size_t i = 0; i < len; ++i) x.push_back(random_element(k, rng));
        auto direct = ktm_run(m, values_to_cells(x));
        auto fx = cells_to_values(direct.output);
        auto compiled = bss_run(c.program, x);
        CAPTURE(format_element_list(k, x));
        CHECK(same(compiled.output, fx));
        CHECK(compiled.steps <= c.constant * (direct.steps + len * len + fx.size() * fx.size() + 1));
      }
    }
  }
}

TEST_CASE("machine files round trip") {
  for (Kind kind : {Kind::natural, Kind::tropical}) {
    Semiring k = Semiring::make(kind);
    BssProgram g = gap_init(k, false);
    CHECK(bss_to_json(bss_from_json(bss_to_json(g), k)) == bss_to_json(g));
    KtmProgram m = ktm_fixture_leq_indicator(k);
    CHECK(ktm_to_json(ktm_from_json(ktm_to_json(m), k)) == ktm_to_json(m));
  }
  CHECK_THROWS_AS(bss_from_json("{\"semiring\": \"nat\"}"), FormatError);
  CHECK_THROWS_AS(bss_from_json(bss_to_json(gap_init(Semiring::make(Kind::natural), false)),
                                Semiring::make(Kind::tropical)),
                  InstanceMismatch);
}
