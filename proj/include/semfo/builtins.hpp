#pragma once

#include "semfo/formula.hpp"

#include <functional>
#include <map>

namespace semfo {

/// A function family (f_n) with f_n : {1..n}^k -> K. Arguments are 1-based ranks.
struct Family {
  enum class Generator { table, equality, successor, less, constant, function };

  Generator generator = Generator::constant;
  Element value = false;  // constant value, or the "true" value of indicator generators

  struct Table {
    Element fallback;
    std::map<std::vector<std::size_t>, Element> entries;
  };
  std::map<std::size_t, Table> tables;  // keyed by n

  std::function<Element(std::size_t n, const std::vector<std::size_t>& args)> fn;

  static Family constant(Element v);
  static Family equality(Element one);
  static Family successor(Element one);
  static Family less(Element one);
  static Family function(std::function<Element(std::size_t, const std::vector<std::size_t>&)> f);

  Element at(const Semiring& k, std::size_t n, const std::vector<std::size_t>& args) const;
};

/// rho: for every built-in symbol, a family for positive and one for negative occurrences.
struct BuiltinInterpretation {
  struct Entry {
    std::size_t arity = 1;
    Family positive;
    Family negative;
  };
  std::map<std::string, Entry> symbols;

  std::vector<Symbol> vocabulary() const;
  const Entry& entry(const std::string& name) const;
};

}  // namespace semfo
