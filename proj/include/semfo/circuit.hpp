#pragma once

#include "semfo/semiring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace semfo {

class CircuitError : public Error {
public:
  using Error::Error;
};

enum class GateType : int { input = 1, constant = 2, add = 3, mul = 4, output = 5, eq = 6, neq = 7, leq = 8, nleq = 9 };

std::string_view gate_type_name(GateType t);
bool is_relation_gate(GateType t);

struct Gate {
  std::size_t id = 0;
  GateType type = GateType::add;
  std::vector<std::size_t> preds;  // ids, in order
  std::optional<Element> value;    // constants only
  std::optional<std::size_t> io;   // 0-based input or output index
};

/// Gates are stored in a topological order; predecessors always precede a gate.
struct Circuit {
  Semiring k;
  std::vector<Gate> gates;

  explicit Circuit(Semiring k_) : k(std::move(k_)) {}

  /// Builder helpers assigning dense ids in insertion order.
  std::size_t add_input(std::size_t index);
  std::size_t add_constant(Element v);
  std::size_t add_gate(GateType t, std::vector<std::size_t> preds);
  std::size_t add_output(std::size_t pred, std::size_t index);

  std::size_t input_count() const;
  std::size_t output_count() const;
  std::size_t position(std::size_t id) const;  // throws if id is unknown
};

/// Violations of the well-formedness rules; empty means well formed.
std::vector<std::string> validate(const Circuit& c);

/// Evaluates all outputs (in output-index order). Throws CircuitError if the
/// circuit is malformed or the input count does not match.
std::vector<Element> evaluate_circuit(const Circuit& c, const std::vector<Element>& inputs);

struct CircuitMeasure {
  std::size_t size = 0;
  std::size_t depth = 0;  // longest path from a source gate to an output, in edges
};
CircuitMeasure measure(const Circuit& c);

/// Equivalent circuit in which every non-input gate has fan-out 1 and all paths
/// from sources to any given gate have the same length (padding with unary + gates).
Circuit normalize_to_tree(const Circuit& c);

/// True if the circuit already satisfies the postconditions of normalize_to_tree.
bool is_tree_normalized(const Circuit& c);

std::string to_dot(const Circuit& c);

}  // namespace semfo
