#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace semfo {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operand does not belong to the semiring instance it is used with.
class InstanceMismatch : public Error {
public:
  using Error::Error;
};

/// An order comparison was requested on an unordered semiring.
class UnsupportedOrder : public Error {
public:
  using Error::Error;
};

/// Malformed textual input. `position` is a 0-based character offset.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Tropical value: a rational or +infinity.
struct Tropical {
  bool infinite = true;
  mpq_class value;  // meaningful only when !infinite

  static Tropical inf() { return {}; }
  static Tropical finite(mpq_class v) { return {false, std::move(v)}; }
  friend bool operator==(const Tropical& a, const Tropical& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

/// Lukasiewicz value, a rational in [0,1].
struct Unit {
  mpq_class value;
  friend bool operator==(const Unit& a, const Unit& b) { return a.value == b.value; }
};

/// Probability value, a non-negative rational.
struct NonNeg {
  mpq_class value;
  friend bool operator==(const NonNeg& a, const NonNeg& b) { return a.value == b.value; }
};

/// Monomial in canonical form: indeterminates sorted by name, exponents >= 1.
using Monomial = std::vector<std::pair<std::string, unsigned long>>;

/// Polynomial with natural coefficients. Zero-coefficient terms are never stored,
/// so structural equality is polynomial equality.
class Polynomial {
public:
  Polynomial() = default;
  static Polynomial constant(const mpz_class& c);
  static Polynomial variable(const std::string& name);

  const std::map<Monomial, mpz_class>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(Monomial m, const mpz_class& c);
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  mpz_class coefficient(const Monomial& m) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

private:
  std::map<Monomial, mpz_class> terms_;
};

/// The semiring instances this library knows about. The order matches the
/// alternatives of Element.
enum class Kind { boolean, natural, tropical, lukasiewicz, probability, polynomial };

/// A value of exactly one semiring instance.
using Element = std::variant<bool, mpz_class, Tropical, Unit, NonNeg, Polynomial>;

Kind kind_of(const Element& e);
bool equal(const Element& a, const Element& b);

/// A semiring (K, +, *, 0, 1) together with its structural flags.
///
/// Operations are selected by `kind`; `zero` and `one` are stored separately so
/// that deliberately broken instances can be built for law checking.
struct Semiring {
  Kind kind = Kind::natural;
  Element zero;
  Element one;
  bool commutative = true;
  bool positive = true;
  bool ordered = true;
  bool idempotent = false;

  static Semiring make(Kind kind);
  /// Accepts "bool", "nat", "tropical", "lukasiewicz", "prob", "poly" and a few aliases.
  static Semiring from_name(std::string_view name);

  std::string_view name() const;
  bool contains(const Element& e) const;

  Element add(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  Element sum(std::span<const Element> xs) const;
  Element prod(std::span<const Element> xs) const;
  /// Canonical order; see README for the convention of each instance.
  bool leq(const Element& a, const Element& b) const;
  bool is_zero(const Element& a) const;
  bool is_one(const Element& a) const;
  /// Characteristic map onto the Boolean semiring: false iff a is zero.
  Element xi(const Element& a) const;
  Element from_bool(bool b) const { return b ? one : zero; }

  Element parse(std::string_view text) const;
  std::string format(const Element& e) const;

private:
  void require(const Element& e) const;
};

std::string_view kind_name(Kind kind);
const std::vector<Kind>& all_kinds();

/// Result of check_laws: one line per violated law instance.
struct LawReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks the semiring axioms and the flagged properties over all triples of samples.
LawReport check_laws(const Semiring& k, std::span<const Element> samples);

/// A small random element; used by property tests and the CLI's --verify.
Element random_element(const Semiring& k, std::mt19937_64& rng);

/// A fixed sample set covering the interesting elements of each instance.
std::vector<Element> standard_samples(const Semiring& k);

}  // namespace semfo
