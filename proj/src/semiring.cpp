#include "semfo/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace semfo {

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(const mpz_class& c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.add_term({{name, 1}}, 1);
  return p;
}

void Polynomial::add_term(Monomial m, const mpz_class& c) {
  if (c == 0) return;
  if (c < 0) throw InstanceMismatch("negative polynomial coefficient");
  auto it = terms_.find(m);
  if (it == terms_.end())
    terms_.emplace(std::move(m), c);
  else
    it->second += c;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial r = *this;
  for (const auto& [m, c] : other.terms_) r.add_term(m, c);
  return r;
}

static Monomial multiply_monomials(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) r.add_term(multiply_monomials(ma, mb), ca * cb);
  return r;
}

mpz_class Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

// ---------------------------------------------------------------- kinds

Kind kind_of(const Element& e) { return static_cast<Kind>(e.index()); }

bool equal(const Element& a, const Element& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return x == std::get<T>(b);
      },
      a);
}

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::boolean: return "bool";
    case Kind::natural: return "nat";
    case Kind::tropical: return "tropical";
    case Kind::lukasiewicz: return "lukasiewicz";
    case Kind::probability: return "prob";
    case Kind::polynomial: return "poly";
  }
  return "?";
}

const std::vector<Kind>& all_kinds() {
  static const std::vector<Kind> kinds = {Kind::boolean,     Kind::natural,     Kind::tropical,
                                          Kind::lukasiewicz, Kind::probability, Kind::polynomial};
  return kinds;
}

Semiring Semiring::make(Kind kind) {
  Semiring k;
  k.kind = kind;
  switch (kind) {
    case Kind::boolean:
      k.zero = false;
      k.one = true;
      k.idempotent = true;
      break;
    case Kind::natural:
      k.zero = mpz_class(0);
      k.one = mpz_class(1);
      break;
    case Kind::tropical:
      k.zero = Tropical::inf();
      k.one = Tropical::finite(0);
      k.idempotent = true;
      break;
    case Kind::lukasiewicz:
      k.zero = Unit{0};
      k.one = Unit{1};
      k.idempotent = true;
      k.positive = false;  // 0.5 * 0.5 = 0
      break;
    case Kind::probability:
      k.zero = NonNeg{0};
      k.one = NonNeg{1};
      break;
    case Kind::polynomial:
      k.zero = Polynomial{};
      k.one = Polynomial::constant(1);
      break;
  }
  return k;
}

Semiring Semiring::from_name(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  if (n == "bool" || n == "boolean" || n == "b") return make(Kind::boolean);
  if (n == "nat" || n == "natural" || n == "n") return make(Kind::natural);
  if (n == "tropical" || n == "trop" || n == "t") return make(Kind::tropical);
  if (n == "lukasiewicz" || n == "luk" || n == "l") return make(Kind::lukasiewicz);
  if (n == "prob" || n == "probability" || n == "viterbi-sum") return make(Kind::probability);
  if (n == "poly" || n == "polynomial" || n == "nx" || n == "n[x]") return make(Kind::polynomial);
  throw Error("unknown semiring '" + std::string(name) + "'");
}

std::string_view Semiring::name() const { return kind_name(kind); }

bool Semiring::contains(const Element& e) const {
  if (kind_of(e) != kind) return false;
  switch (kind) {
    case Kind::natural: return std::get<mpz_class>(e) >= 0;
    case Kind::lukasiewicz: {
      const auto& v = std::get<Unit>(e).value;
      return v >= 0 && v <= 1;
    }
    case Kind::probability: return std::get<NonNeg>(e).value >= 0;
    default: return true;
  }
}

void Semiring::require(const Element& e) const {
  if (kind_of(e) != kind)
    throw InstanceMismatch("element of " + std::string(kind_name(kind_of(e))) + " used with " +
                           std::string(name()));
}

Element Semiring::add(const Element& a, const Element& b) const {
  require(a);
  require(b);
  switch (kind) {
    case Kind::boolean: return std::get<bool>(a) || std::get<bool>(b);
    case Kind::natural: return mpz_class(std::get<mpz_class>(a) + std::get<mpz_class>(b));
    case Kind::tropical: {
      const auto& x = std::get<Tropical>(a);
      const auto& y = std::get<Tropical>(b);
      if (x.infinite) return y;
      if (y.infinite) return x;
      return x.value <= y.value ? x : y;
    }
    case Kind::lukasiewicz: {
      const auto& x = std::get<Unit>(a);
      const auto& y = std::get<Unit>(b);
      return x.value >= y.value ? x : y;
    }
    case Kind::probability:
      return NonNeg{std::get<NonNeg>(a).value + std::get<NonNeg>(b).value};
    case Kind::polynomial: return std::get<Polynomial>(a) + std::get<Polynomial>(b);
  }
  return zero;
}

Element Semiring::mul(const Element& a, const Element& b) const {
  require(a);
  require(b);
  switch (kind) {
    case Kind::boolean: return std::get<bool>(a) && std::get<bool>(b);
    case Kind::natural: return mpz_class(std::get<mpz_class>(a) * std::get<mpz_class>(b));
    case Kind::tropical: {
      const auto& x = std::get<Tropical>(a);
      const auto& y = std::get<Tropical>(b);
      if (x.infinite || y.infinite) return Tropical::inf();
      return Tropical::finite(x.value + y.value);
    }
    case Kind::lukasiewicz: {
      mpq_class v = std::get<Unit>(a).value + std::get<Unit>(b).value - 1;
      if (v < 0) v = 0;
      return Unit{v};
    }
    case Kind::probability:
      return NonNeg{std::get<NonNeg>(a).value * std::get<NonNeg>(b).value};
    case Kind::polynomial: return std::get<Polynomial>(a) * std::get<Polynomial>(b);
  }
  return zero;
}

Element Semiring::sum(std::span<const Element> xs) const {
  Element acc = zero;
  for (const auto& x : xs) acc = add(acc, x);
  return acc;
}

Element Semiring::prod(std::span<const Element> xs) const {
  Element acc = one;
  for (const auto& x : xs) acc = mul(acc, x);
  return acc;
}

bool Semiring::leq(const Element& a, const Element& b) const {
  if (!ordered) throw UnsupportedOrder(std::string(name()) + " is not ordered");
  require(a);
  require(b);
  switch (kind) {
    case Kind::boolean: return !std::get<bool>(a) || std::get<bool>(b);
    case Kind::natural: return std::get<mpz_class>(a) <= std::get<mpz_class>(b);
    case Kind::tropical: {
      // a <= b iff min(a, b) = b
      const auto& x = std::get<Tropical>(a);
      const auto& y = std::get<Tropical>(b);
      if (x.infinite) return true;
      if (y.infinite) return false;
      return y.value <= x.value;
    }
    case Kind::lukasiewicz: return std::get<Unit>(a).value <= std::get<Unit>(b).value;
    case Kind::probability: return std::get<NonNeg>(a).value <= std::get<NonNeg>(b).value;
    case Kind::polynomial: {
      const auto& p = std::get<Polynomial>(a);
      const auto& q = std::get<Polynomial>(b);
      for (const auto& [m, c] : p.terms())
        if (c > q.coefficient(m)) return false;
      return true;
    }
  }
  return false;
}

bool Semiring::is_zero(const Element& a) const { return equal(a, zero); }
bool Semiring::is_one(const Element& a) const { return equal(a, one); }

Element Semiring::xi(const Element& a) const {
  require(a);
  return !is_zero(a);
}

// ---------------------------------------------------------------- text

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Accepts integers, p/q and finite decimals such as -0.25.
mpq_class parse_rational(const std::string& s) {
  auto fail = [&] { return ParseError("bad number '" + s + "'", 0); };
  if (s.empty()) throw fail();
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  std::string body = s.substr(i);
  if (body.empty()) throw fail();
  mpq_class q;
  auto digits = [](const std::string& d) {
    return !d.empty() && std::all_of(d.begin(), d.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string p = body.substr(0, slash), d = body.substr(slash + 1);
    if (!digits(p) || !digits(d)) throw fail();
    mpz_class den(d);
    if (den == 0) throw ParseError("zero denominator in '" + s + "'", 0);
    q = mpq_class(mpz_class(p), den);
    q.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!digits(ip) || !digits(fp)) throw fail();
    mpz_class den = 1;
    for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
    q = mpq_class(mpz_class(ip + fp), den);
    q.canonicalize();
  } else {
    if (!digits(body)) throw fail();
    q = mpq_class(mpz_class(body));
  }
  return neg ? mpq_class(-q) : q;
}

std::string format_rational(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// term := factor ('*' factor)* ; factor := natural | ident ('^' natural)?
Polynomial parse_polynomial(std::string_view text) {
  Polynomial result;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto natural = [&]() -> mpz_class {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw ParseError("expected number in polynomial", start);
    return mpz_class(std::string(text.substr(start, i - start)));
  };
  bool first_term = true;
  while (true) {
    skip();
    if (i == text.size()) {
      if (first_term) throw ParseError("empty polynomial", i);
      throw ParseError("expected term after '+'", i);
    }
    Polynomial term = Polynomial::constant(1);
    while (true) {
      skip();
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        term = term * Polynomial::constant(natural());
      } else if (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        std::size_t start = i;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
        std::string name(text.substr(start, i - start));
        skip();
        unsigned long exp = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          skip();
          exp = natural().get_ui();
        }
        Polynomial v = Polynomial::constant(1);
        for (unsigned long k = 0; k < exp; ++k) v = v * Polynomial::variable(name);
        term = term * v;
      } else {
        throw ParseError("expected factor in polynomial", i);
      }
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    result = result + term;
    first_term = false;
    skip();
    if (i == text.size()) break;
    if (text[i] != '+') throw ParseError("unexpected character in polynomial", i);
    ++i;
  }
  return result;
}

unsigned long degree(const Monomial& m) {
  unsigned long d = 0;
  for (const auto& [_, e] : m) d += e;
  return d;
}

std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, mpz_class>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return degree(a.first) > degree(b.first); });
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) out << " + ";
    first = false;
    bool need_star = false;
    if (m.empty() || c != 1) {
      out << c.get_str();
      need_star = true;
    }
    for (const auto& [v, e] : m) {
      if (need_star) out << '*';
      out << v;
      if (e != 1) out << '^' << e;
      need_star = true;
    }
  }
  return out.str();
}

}  // namespace

Element Semiring::parse(std::string_view raw) const {
  std::string s = trim(raw);
  switch (kind) {
    case Kind::boolean:
      if (s == "true" || s == "1") return true;
      if (s == "false" || s == "0") return false;
      throw ParseError("bad Boolean value '" + s + "'", 0);
    case Kind::natural: {
      mpq_class q = parse_rational(s);
      if (q.get_den() != 1 || q < 0) throw ParseError("not a natural number: '" + s + "'", 0);
      return mpz_class(q.get_num());
    }
    case Kind::tropical:
      if (s == "inf" || s == "+inf" || s == "oo") return Tropical::inf();
      return Tropical::finite(parse_rational(s));
    case Kind::lukasiewicz: {
      mpq_class q = parse_rational(s);
      if (q < 0 || q > 1) throw ParseError("Lukasiewicz value outside [0,1]: '" + s + "'", 0);
      return Unit{q};
    }
    case Kind::probability: {
      mpq_class q = parse_rational(s);
      if (q < 0) throw ParseError("negative probability value '" + s + "'", 0);
      return NonNeg{q};
    }
    case Kind::polynomial: return parse_polynomial(s);
  }
  throw ParseError("unreachable", 0);
}

std::string Semiring::format(const Element& e) const {
  require(e);
  switch (kind) {
    case Kind::boolean: return std::get<bool>(e) ? "1" : "0";
    case Kind::natural: return std::get<mpz_class>(e).get_str();
    case Kind::tropical: {
      const auto& t = std::get<Tropical>(e);
      return t.infinite ? "inf" : format_rational(t.value);
    }
    case Kind::lukasiewicz: return format_rational(std::get<Unit>(e).value);
    case Kind::probability: return format_rational(std::get<NonNeg>(e).value);
    case Kind::polynomial: return format_polynomial(std::get<Polynomial>(e));
  }
  return "?";
}

// ---------------------------------------------------------------- laws

LawReport check_laws(const Semiring& k, std::span<const Element> samples) {
  LawReport report;
  auto f = [&](const Element& e) { return k.format(e); };
  auto fail = [&](const std::string& law, std::initializer_list<const Element*> xs) {
    std::string line = law + ":";
    for (const auto* x : xs) line += " " + f(*x);
    report.violations.push_back(line);
  };
  auto eq = [](const Element& a, const Element& b) { return equal(a, b); };

  if (eq(k.zero, k.one)) report.violations.push_back("nontriviality: zero = one");
  for (const auto& a : samples)
    if (!k.contains(a)) {
      report.violations.push_back("membership: " + std::string(kind_name(kind_of(a))) + " sample");
      return report;
    }

  for (const auto& a : samples) {
    if (!eq(k.add(a, k.zero), a) || !eq(k.add(k.zero, a), a)) fail("additive identity", {&a});
    if (!eq(k.mul(a, k.one), a) || !eq(k.mul(k.one, a), a)) fail("multiplicative identity", {&a});
    if (!eq(k.mul(a, k.zero), k.zero) || !eq(k.mul(k.zero, a), k.zero)) fail("annihilation", {&a});
    if (k.idempotent && !eq(k.add(a, a), a)) fail("additive idempotence", {&a});
    if (k.ordered) {
      if (!k.leq(a, a)) fail("order reflexivity", {&a});
      if (!k.leq(k.zero, a)) fail("zero is least", {&a});
    }
    for (const auto& b : samples) {
      if (!eq(k.add(a, b), k.add(b, a))) fail("additive commutativity", {&a, &b});
      if (k.commutative && !eq(k.mul(a, b), k.mul(b, a))) fail("multiplicative commutativity", {&a, &b});
      if (k.positive) {
        if (!k.is_zero(a) && !k.is_zero(b) && k.is_zero(k.mul(a, b))) fail("zero divisor", {&a, &b});
        if (k.is_zero(k.add(a, b)) && !(k.is_zero(a) && k.is_zero(b))) fail("zero sum", {&a, &b});
      }
      if (k.ordered) {
        if (k.leq(a, b) && k.leq(b, a) && !eq(a, b)) fail("order antisymmetry", {&a, &b});
        if (k.leq(k.zero, a) && k.leq(k.zero, b) && !k.leq(k.zero, k.mul(a, b)))
          fail("order product positivity", {&a, &b});
      }
      for (const auto& c : samples) {
        if (!eq(k.add(k.add(a, b), c), k.add(a, k.add(b, c)))) fail("additive associativity", {&a, &b, &c});
        if (!eq(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c))))
          fail("multiplicative associativity", {&a, &b, &c});
        if (!eq(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c))))
          fail("left distributivity", {&a, &b, &c});
        if (!eq(k.mul(k.add(b, c), a), k.add(k.mul(b, a), k.mul(c, a))))
          fail("right distributivity", {&a, &b, &c});
        if (k.ordered) {
          if (k.leq(a, b) && k.leq(b, c) && !k.leq(a, c)) fail("order transitivity", {&a, &b, &c});
          if (k.leq(a, b) && !k.leq(k.add(a, c), k.add(b, c))) fail("order monotonicity", {&a, &b, &c});
        }
      }
    }
  }
  return report;
}

Element random_element(const Semiring& k, std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  switch (k.kind) {
    case Kind::boolean: return pick(0, 1) == 1;
    case Kind::natural: return mpz_class(pick(0, 4));
    case Kind::tropical:
      if (pick(0, 4) == 0) return Tropical::inf();
      return Tropical::finite(mpq_class(pick(0, 9)));
    case Kind::lukasiewicz: {
      mpq_class q(pick(0, 4), 4);
      q.canonicalize();
      return Unit{q};
    }
    case Kind::probability: {
      mpq_class q(pick(0, 6), pick(1, 3));
      q.canonicalize();
      return NonNeg{q};
    }
    case Kind::polynomial: {
      static const char* vars[] = {"x", "y", "z"};
      Polynomial p;
      int terms = pick(0, 2);
      for (int t = 0; t < terms; ++t) {
        Monomial m;
        for (const char* v : vars) {
          int e = pick(0, 1);
          if (e > 0) m.emplace_back(v, e);
        }
        p.add_term(m, pick(1, 2));
      }
      return p;
    }
  }
  return k.zero;
}

std::vector<Element> standard_samples(const Semiring& k) {
  std::vector<Element> out;
  switch (k.kind) {
    case Kind::boolean: return {false, true};
    case Kind::natural:
      for (int i = 0; i < 4; ++i) out.push_back(mpz_class(i));
      return out;
    case Kind::tropical:
      return {Tropical::inf(), Tropical::finite(0), Tropical::finite(1), Tropical::finite(5),
              Tropical::finite(mpq_class(1, 2))};
    case Kind::lukasiewicz:
      for (const char* s : {"0", "1", "0.3", "0.5", "0.7", "1/3"}) out.push_back(k.parse(s));
      return out;
    case Kind::probability:
      for (const char* s : {"0", "1", "1/2", "3", "2/3"}) out.push_back(k.parse(s));
      return out;
    case Kind::polynomial:
      for (const char* s : {"0", "1", "x", "x + y", "2*x*y + 3", "y^2"}) out.push_back(k.parse(s));
      return out;
  }
  return out;
}

}  // namespace semfo
