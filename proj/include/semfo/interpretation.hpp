#pragma once

#include "semfo/formula.hpp"

#include <functional>
#include <map>
#include <set>

namespace semfo {

using Tuple = std::vector<std::size_t>;  // 0-based universe positions

/// Ordered universe plus a value for every literal R(a) and ~R(a).
/// Tuples of each relation are stored in lexicographic universe order.
class Interpretation {
public:
  Interpretation(Semiring k, std::vector<std::string> universe, std::vector<Symbol> relations);

  const Semiring& semiring() const noexcept { return k_; }
  const std::vector<std::string>& universe() const noexcept { return universe_; }
  const std::vector<Symbol>& relations() const noexcept { return relations_; }
  std::size_t size() const noexcept { return universe_.size(); }

  std::optional<std::size_t> relation_index(std::string_view name) const;
  std::optional<std::size_t> element_index(std::string_view name) const;

  /// Number of tuples of relation r, |A|^arity.
  std::size_t tuple_count(std::size_t r) const;
  std::size_t tuple_rank(std::size_t r, const Tuple& t) const;
  Tuple tuple_at(std::size_t r, std::size_t rank) const;

  const Element& value(std::size_t r, std::size_t rank, bool negative) const;
  const Element& value(std::string_view rel, const Tuple& t, bool negative) const;
  void set(std::size_t r, std::size_t rank, bool negative, Element v);
  void set(std::string_view rel, const Tuple& t, bool negative, Element v);

  /// Applies f to every literal value; used for the xi composition.
  Interpretation map_values(const Semiring& target, const std::function<Element(const Element&)>& f) const;

private:
  Semiring k_;
  std::vector<std::string> universe_;
  std::vector<Symbol> relations_;
  std::vector<std::vector<Element>> pos_, neg_;

  std::size_t checked_relation(std::string_view rel) const;
};

/// Boolean interpretation whose true positive literals are exactly the given facts.
Interpretation canonical_boolean(const std::vector<std::string>& universe, const std::vector<Symbol>& relations,
                                 const std::map<std::string, std::set<Tuple>>& facts);

/// pi(R(a)) = 0 iff pi(~R(a)) != 0 for every fact.
bool is_model_defining(const Interpretation& pi);

/// Literal-wise composition with the characteristic map onto the Boolean semiring.
Interpretation xi_interpretation(const Interpretation& pi);

/// Flattening of all literal values: relations in order, positive block then
/// negative block, nullary relations repeated |A| times.
std::vector<Element> encode(const Interpretation& pi);

/// Length of the encoding for a universe of size n.
mpz_class encoding_length(const std::vector<Symbol>& relations, std::size_t n);

struct DecodeResult {
  std::size_t n;
  std::size_t probes;
};

/// Recovers |A| from an encoding length by binary search. Throws Error if no size fits.
DecodeResult decode_universe_size(const mpz_class& len, const std::vector<Symbol>& relations);

/// Inverse of encode for a given universe.
Interpretation decode(const Semiring& k, const std::vector<std::string>& universe,
                      const std::vector<Symbol>& relations, const std::vector<Element>& values);

}  // namespace semfo
