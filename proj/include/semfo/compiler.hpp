#pragma once

#include "semfo/builtins.hpp"
#include "semfo/circuit.hpp"
#include "semfo/evaluator.hpp"
#include "semfo/interpretation.hpp"

namespace semfo {

/// Circuit over |enc(pi)| inputs computing the value of the sentence f on every
/// interpretation with universe size n. Input gate i reads position i of enc(pi).
Circuit formula_to_circuit(const Formula& f, const Semiring& k, const Vocabulary& vocab,
                           const BuiltinInterpretation* rho, std::size_t n);

/// Gate positions of a circuit as q-tuples over {1..n}, in mixed radix.
struct GateEncoding {
  std::size_t n = 0;
  std::size_t q = 0;
  std::size_t gates = 0;

  std::vector<std::size_t> tuple(std::size_t gate) const;
  /// Gate position of a 1-based tuple, or nullopt if it encodes no gate.
  std::optional<std::size_t> gate(const std::vector<std::size_t>& args, std::size_t offset = 0) const;
};

struct CircuitSentence {
  Formula sentence;
  Vocabulary vocab;  // relations {R/1}; built-ins t1..t4, c, in, e, left
  BuiltinInterpretation rho;
  GateEncoding encoding;
  std::size_t depth = 0;
};

struct CircuitToFormulaOptions {
  std::size_t n = 0;  // universe size; 0 selects max(#inputs, 2)
  std::size_t q = 0;  // tuple width; 0 selects the least q with n^q >= gate count
};

/// Sentence over R/1 and structure built-ins whose value on input_interpretation(x)
/// equals the single output of the circuit on x.
CircuitSentence circuit_to_formula(const Circuit& c, CircuitToFormulaOptions opts = {});

/// Interpretation of R/1 over {1..n} with R(i) = x_i (0 beyond the inputs) and all
/// negative literals 0.
Interpretation input_interpretation(const Semiring& k, std::size_t n, const std::vector<Element>& inputs);

}  // namespace semfo
