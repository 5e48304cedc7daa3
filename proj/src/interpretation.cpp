#include "semfo/interpretation.hpp"

namespace semfo {

namespace {

std::size_t power(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= n;
  return r;
}

}  // namespace

Interpretation::Interpretation(Semiring k, std::vector<std::string> universe, std::vector<Symbol> relations)
    : k_(std::move(k)), universe_(std::move(universe)), relations_(std::move(relations)) {
  std::set<std::string> seen;
  for (const auto& a : universe_)
    if (!seen.insert(a).second) throw Error("duplicate universe element '" + a + "'");
  Vocabulary{relations_, {}}.check();
  for (std::size_t r = 0; r < relations_.size(); ++r) {
    pos_.emplace_back(tuple_count(r), k_.zero);
    neg_.emplace_back(tuple_count(r), k_.zero);
  }
}

std::optional<std::size_t> Interpretation::relation_index(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Interpretation::element_index(std::string_view name) const {
  for (std::size_t i = 0; i < universe_.size(); ++i)
    if (universe_[i] == name) return i;
  return std::nullopt;
}

std::size_t Interpretation::tuple_count(std::size_t r) const { return power(size(), relations_[r].arity); }

std::size_t Interpretation::tuple_rank(std::size_t r, const Tuple& t) const {
  if (t.size() != relations_[r].arity) throw Error("arity mismatch for '" + relations_[r].name + "'");
  std::size_t rank = 0;
  for (auto a : t) {
    if (a >= size()) throw Error("tuple element outside universe");
    rank = rank * size() + a;
  }
  return rank;
}

Tuple Interpretation::tuple_at(std::size_t r, std::size_t rank) const {
  Tuple t(relations_[r].arity);
  for (std::size_t i = t.size(); i-- > 0;) {
    t[i] = rank % size();
    rank /= size();
  }
  return t;
}

const Element& Interpretation::value(std::size_t r, std::size_t rank, bool negative) const {
  return negative ? neg_[r][rank] : pos_[r][rank];
}

std::size_t Interpretation::checked_relation(std::string_view rel) const {
  auto r = relation_index(rel);
  if (!r) throw Error("unknown relation '" + std::string(rel) + "'");
  return *r;
}

const Element& Interpretation::value(std::string_view rel, const Tuple& t, bool negative) const {
  auto r = checked_relation(rel);
  return value(r, tuple_rank(r, t), negative);
}

void Interpretation::set(std::size_t r, std::size_t rank, bool negative, Element v) {
  if (!k_.contains(v)) throw InstanceMismatch("literal value outside " + std::string(k_.name()));
  (negative ? neg_ : pos_)[r].at(rank) = std::move(v);
}

void Interpretation::set(std::string_view rel, const Tuple& t, bool negative, Element v) {
  auto r = checked_relation(rel);
  set(r, tuple_rank(r, t), negative, std::move(v));
}

Interpretation Interpretation::map_values(const Semiring& target,
                                          const std::function<Element(const Element&)>& f) const {
  Interpretation out(target, universe_, relations_);
  for (std::size_t r = 0; r < relations_.size(); ++r)
    for (std::size_t i = 0; i < pos_[r].size(); ++i) {
      out.set(r, i, false, f(pos_[r][i]));
      out.set(r, i, true, f(neg_[r][i]));
    }
  return out;
}

Interpretation canonical_boolean(const std::vector<std::string>& universe, const std::vector<Symbol>& relations,
                                 const std::map<std::string, std::set<Tuple>>& facts) {
  Interpretation pi(Semiring::make(Kind::boolean), universe, relations);
  for (std::size_t r = 0; r < relations.size(); ++r)
    for (std::size_t i = 0; i < pi.tuple_count(r); ++i) pi.set(r, i, true, true);
  for (const auto& [rel, tuples] : facts) {
    auto r = pi.relation_index(rel);
    if (!r) throw Error("unknown relation '" + rel + "'");
    for (const auto& t : tuples) {
      auto rank = pi.tuple_rank(*r, t);
      pi.set(*r, rank, false, true);
      pi.set(*r, rank, true, false);
    }
  }
  return pi;
}

bool is_model_defining(const Interpretation& pi) {
  const auto& k = pi.semiring();
  for (std::size_t r = 0; r < pi.relations().size(); ++r)
    for (std::size_t i = 0; i < pi.tuple_count(r); ++i)
      if (k.is_zero(pi.value(r, i, false)) == k.is_zero(pi.value(r, i, true))) return false;
  return true;
}

Interpretation xi_interpretation(const Interpretation& pi) {
  const auto& k = pi.semiring();
  return pi.map_values(Semiring::make(Kind::boolean), [&](const Element& e) { return k.xi(e); });
}

std::vector<Element> encode(const Interpretation& pi) {
  std::vector<Element> out;
  for (std::size_t r = 0; r < pi.relations().size(); ++r)
    for (bool negative : {false, true}) {
      if (pi.relations()[r].arity == 0) {
        for (std::size_t c = 0; c < pi.size(); ++c) out.push_back(pi.value(r, 0, negative));
      } else {
        for (std::size_t i = 0; i < pi.tuple_count(r); ++i) out.push_back(pi.value(r, i, negative));
      }
    }
  return out;
}

mpz_class encoding_length(const std::vector<Symbol>& relations, std::size_t n) {
  mpz_class len = 0;
  for (const auto& s : relations) {
    mpz_class block;
    mpz_ui_pow_ui(block.get_mpz_t(), n, std::max<std::size_t>(s.arity, 1));
    len += 2 * block;
  }
  return len;
}

DecodeResult decode_universe_size(const mpz_class& len, const std::vector<Symbol>& relations) {
  if (relations.empty()) throw Error("the encoding length determines no universe size for an empty vocabulary");
  if (len < 0) throw Error("negative encoding length");
  // Each relation contributes at least 2n entries, so n <= len / 2.
  mpz_class hi_z = len / 2;
  if (!hi_z.fits_ulong_p()) throw Error("encoding length too large");
  std::size_t lo = 0, hi = hi_z.get_ui(), probes = 0;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    ++probes;
    if (encoding_length(relations, mid) < len)
      lo = mid + 1;
    else
      hi = mid;
  }
  ++probes;
  if (encoding_length(relations, lo) != len)
    throw Error("no universe size has encoding length " + len.get_str());
  return {lo, probes};
}

Interpretation decode(const Semiring& k, const std::vector<std::string>& universe,
                      const std::vector<Symbol>& relations, const std::vector<Element>& values) {
  Interpretation pi(k, universe, relations);
  if (encoding_length(relations, universe.size()) != values.size())
    throw Error("encoding length does not match universe and vocabulary");
  std::size_t pos = 0;
  for (std::size_t r = 0; r < relations.size(); ++r)
    for (bool negative : {false, true}) {
      if (relations[r].arity == 0) {
        if (universe.empty()) continue;
        pi.set(r, 0, negative, values[pos]);
        for (std::size_t c = 1; c < universe.size(); ++c)
          if (!equal(values[pos + c], values[pos]))
            throw Error("inconsistent copies of nullary literal " + relations[r].name);
        pos += universe.size();
      } else {
        for (std::size_t i = 0; i < pi.tuple_count(r); ++i) pi.set(r, i, negative, values[pos++]);
      }
    }
  return pi;
}

}  // namespace semfo
