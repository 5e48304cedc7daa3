#pragma once

#include "semfo/semiring.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace semfo {

struct Symbol {
  std::string name;
  std::size_t arity = 0;
};

/// Input relations (tau) and built-in symbols (sigma).
struct Vocabulary {
  std::vector<Symbol> relations;
  std::vector<Symbol> builtins;

  std::optional<std::size_t> relation_index(std::string_view name) const;
  std::optional<std::size_t> builtin_index(std::string_view name) const;
  /// Throws Error on duplicate names or nullary built-ins.
  void check() const;
};

enum class NodeKind {
  var_eq,
  var_neq,
  atom,
  neg_atom,
  builtin,
  neg_builtin,
  conj,
  disj,
  compare,
  exists,
  forall,
};

enum class CmpOp { eq, neq, leq, nleq };

struct Node;
using Formula = std::shared_ptr<const Node>;

/// Immutable formula node. Atoms use `symbol` and `vars`; variable (in)equalities
/// use vars[0], vars[1]; quantifiers bind vars[0] over `left`.
struct Node {
  NodeKind kind;
  std::string symbol;
  std::vector<std::string> vars;
  CmpOp op = CmpOp::eq;
  Formula left;
  Formula right;
};

Formula var_eq(std::string x, std::string y);
Formula var_neq(std::string x, std::string y);
Formula atom(std::string rel, std::vector<std::string> vars);
Formula neg_atom(std::string rel, std::vector<std::string> vars);
Formula builtin_atom(std::string sym, std::vector<std::string> vars);
Formula neg_builtin_atom(std::string sym, std::vector<std::string> vars);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula compare(CmpOp op, Formula a, Formula b);
Formula exists(std::string x, Formula body);
Formula forall(std::string x, Formula body);
/// Folds; an empty list is rejected since FO has no constants for 0 and 1.
Formula conj_all(const std::vector<Formula>& parts);
Formula disj_all(const std::vector<Formula>& parts);
Formula exists_all(const std::vector<std::string>& xs, Formula body);
Formula forall_all(const std::vector<std::string>& xs, Formula body);

bool is_quantifier(NodeKind k);
bool is_literal(NodeKind k);
bool same_formula(const Formula& a, const Formula& b);

std::string_view cmp_symbol(CmpOp op);
std::string to_string(const Formula& f);

/// Parses the text grammar described in the README. Throws ParseError.
Formula parse_formula(std::string_view text, const Vocabulary& vocab);

std::set<std::string> free_vars(const Formula& f);

struct FormulaCounts {
  std::size_t conj = 0, disj = 0, compare = 0, quantifiers = 0, literals = 0;
  bool uses_order = false;
  bool uses_builtins = false;
};
FormulaCounts count(const Formula& f);

/// Violations of the strict grammar, where comparisons only relate comparison-free
/// formulas. Empty means the formula is in the strict fragment.
std::vector<std::string> validate_strict(const Formula& f);

/// Checks symbols and arities against the vocabulary.
std::vector<std::string> check_symbols(const Formula& f, const Vocabulary& vocab);

}  // namespace semfo
