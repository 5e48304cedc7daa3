#pragma once

#include "semfo/bss.hpp"
#include "semfo/builtins.hpp"
#include "semfo/circuit.hpp"
#include "semfo/evaluator.hpp"
#include "semfo/interpretation.hpp"
#include "semfo/ktm.hpp"

#include <optional>
#include <string>

namespace semfo {

class FormatError : public Error {
public:
  using Error::Error;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// All documents are JSON objects carrying a "semiring" name. When `expected` is
// given, a document over a different semiring is rejected.

Interpretation interpretation_from_json(const std::string& text, const std::optional<Semiring>& expected = {});
std::string interpretation_to_json(const Interpretation& pi);

BuiltinInterpretation builtins_from_json(const std::string& text, const Semiring& k);
/// Computed families are written as lookup tables for universe size `tabulate_n`.
std::string builtins_to_json(const BuiltinInterpretation& rho, const Semiring& k,
                             std::optional<std::size_t> tabulate_n = {});

Circuit circuit_from_json(const std::string& text, const std::optional<Semiring>& expected = {});
std::string circuit_to_json(const Circuit& c);

BssProgram bss_from_json(const std::string& text, const std::optional<Semiring>& expected = {});
std::string bss_to_json(const BssProgram& p);

KtmProgram ktm_from_json(const std::string& text, const std::optional<Semiring>& expected = {});
std::string ktm_to_json(const KtmProgram& p);

/// Comma-separated elements, e.g. "2, 3, inf". Empty text is the empty vector.
std::vector<Element> parse_element_list(const Semiring& k, const std::string& text);
std::string format_element_list(const Semiring& k, const std::vector<Element>& v);

/// Tape contents: each item is a tape symbol of p if it names one, else a value.
std::vector<Cell> parse_cell_list(const KtmProgram& p, const std::string& text);
std::string format_cell_list(const Semiring& k, const std::vector<Cell>& v);

/// "x=a, y=b" with universe element names.
Assignment parse_assignment(const Interpretation& pi, const std::string& text);

}  // namespace semfo
