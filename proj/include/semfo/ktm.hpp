#pragma once

#include "semfo/bss.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace semfo {

/// A tape cell: a symbol of the tape alphabet or a semiring value.
struct Cell {
  bool is_value = false;
  std::string symbol;
  Element value = false;

  static Cell sym(std::string s) { return {false, std::move(s), false}; }
  static Cell val(Element v) { return {true, {}, std::move(v)}; }
};

bool same_cell(const Cell& a, const Cell& b);

struct KtmAction {
  enum class Kind { write_symbol, write_value, keep, add, mul };
  Kind kind = Kind::keep;
  std::string symbol;    // write_symbol
  Element value = false; // write_value
  std::string reg;       // add, mul
};

enum class Move { left, stay, right };  // left is the tape shift sigma_l: the head advances to x_2

struct KtmTransition {
  std::string next;
  KtmAction action;
  std::vector<std::string> assign;  // registers set to the value under the head
  Move move = Move::stay;
};

struct KtmPredicate {
  bool order = false;  // compares cell <= register instead of cell = register
  std::string reg;
};

struct KtmProgram {
  Semiring k;
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> registers;
  std::vector<std::string> gamma;  // includes the blank
  std::string blank = "b";
  std::map<std::string, KtmPredicate> predicate;
  std::map<std::pair<std::string, std::string>, KtmTransition> on_symbol;
  std::map<std::pair<std::string, bool>, KtmTransition> on_test;

  explicit KtmProgram(Semiring k_) : k(std::move(k_)) {}
  std::vector<std::string> validate() const;
};

struct KtmTraceEntry {
  std::uint64_t step;
  std::string state;
  long head;
  std::size_t span;
};

struct KtmRunResult {
  std::vector<Cell> output;
  std::uint64_t steps = 0;
  std::size_t span = 0;
  std::string final_state;
  bool ill_typed_halt = false;
};

struct KtmRunOptions {
  std::uint64_t step_limit = 10'000'000;
  std::function<void(const KtmTraceEntry&)> trace;
};

KtmRunResult ktm_run(const KtmProgram& p, const std::vector<Cell>& input, const KtmRunOptions& opts = {});

/// Semiring-valued view of an output; throws if it contains tape symbols.
std::vector<Element> cells_to_values(const std::vector<Cell>& cells);
std::vector<Cell> values_to_cells(const std::vector<Element>& values);

struct KtmCompileResult {
  BssProgram program;
  std::uint64_t constant = 0;  // c of the time bound c(t + |x|^2 + |f(x)|^2 + 1)
  std::size_t block = 0;       // cells per simulated tape cell (2k)
};

/// BSS program computing the same function on semiring-valued inputs whose
/// outputs are semiring values.
KtmCompileResult ktm_to_bss(const KtmProgram& p);

/// Fixture machines used by tests, the CLI and the documentation.
KtmProgram ktm_fixture_shift_copy(const Semiring& k);
KtmProgram ktm_fixture_register_multiply(const Semiring& k);
KtmProgram ktm_fixture_leq_indicator(const Semiring& k);

}  // namespace semfo
