#pragma once

#include "semfo/builtins.hpp"
#include "semfo/interpretation.hpp"

#include <cstdint>

namespace semfo {

class EvalError : public Error {
public:
  using Error::Error;
};

/// Variable name -> 0-based universe position.
using Assignment = std::map<std::string, std::size_t>;

struct EvalStats {
  std::uint64_t calls = 0;             // every recursive call
  std::uint64_t node_evaluations = 0;  // calls on non-quantifier nodes
  std::uint64_t conj = 0, disj = 0, comparisons = 0;
  std::uint64_t quantifier_expansions = 0;  // body instantiations
  std::uint64_t max_depth = 0;
};

struct EvalOptions {
  // Skips work that cannot change the result: the right operand of a conjunction
  // whose left operand is zero, and the rest of a universal product once it is zero.
  bool short_circuit = false;
};

struct EvalResult {
  Element value;
  EvalStats stats;
};

EvalResult evaluate(const Formula& f, const Interpretation& pi, const Assignment& s = {},
                    const BuiltinInterpretation* rho = nullptr, EvalOptions opts = {});

/// (2B + 1) * n^Q where B counts binary connectives and comparisons and Q quantifiers.
/// Bounds node_evaluations for n >= 1.
mpz_class evaluation_bound(const Formula& f, std::size_t n);

}  // namespace semfo
