#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pf/freelie.hpp"
#include "pf/polyring.hpp"
#include "pf/rational.hpp"

namespace pf {

// Commutative monomial in the free Poisson algebra: a multiset of Lyndon
// words, stored as (word, multiplicity) pairs sorted by graded word order.
class PoissonMonomial {
 public:
  PoissonMonomial() = default;  // the unit monomial
  static PoissonMonomial single(const Word& w);

  const std::vector<std::pair<Word, unsigned>>& factors() const {
    return f_;
  }
  bool is_unit() const { return f_.empty(); }
  unsigned total_degree() const;
  unsigned generator_degree(unsigned g) const;
  std::size_t distinct_factors() const { return f_.size(); }

  PoissonMonomial times(const PoissonMonomial& o) const;
  PoissonMonomial times_word(const Word& w) const;
  // Remove one copy of the factor at position i.
  PoissonMonomial without(std::size_t i) const;

  bool operator==(const PoissonMonomial& o) const { return f_ == o.f_; }
  // Graded order: total degree first, then the factor sequences.
  static int compare(const PoissonMonomial& a, const PoissonMonomial& b);

 private:
  std::vector<std::pair<Word, unsigned>> f_;
};

struct PoissonMonomialLess {
  bool operator()(const PoissonMonomial& a, const PoissonMonomial& b) const {
    return PoissonMonomial::compare(a, b) < 0;
  }
};

// Element of the free Poisson algebra k{z_1..z_m}: the polynomial algebra on
// the Lyndon basis of the free Lie algebra.
class PoissonElement {
 public:
  using TermMap = std::map<PoissonMonomial, Rational, PoissonMonomialLess>;

  explicit PoissonElement(unsigned gens) : gens_(gens) {}
  static PoissonElement constant(unsigned gens, const Rational& c);
  static PoissonElement generator(unsigned gens, unsigned i);
  static PoissonElement from_monomial(unsigned gens, const PoissonMonomial& m,
                                      const Rational& c);
  static PoissonElement from_lie(unsigned gens, const LieElement& x);

  unsigned generators() const { return gens_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;

  void add_term(const PoissonMonomial& m, const Rational& c);

  PoissonElement operator-() const;
  PoissonElement& operator+=(const PoissonElement& o);
  PoissonElement& operator-=(const PoissonElement& o);
  friend PoissonElement operator+(PoissonElement a, const PoissonElement& b) {
    return a += b;
  }
  friend PoissonElement operator-(PoissonElement a, const PoissonElement& b) {
    return a -= b;
  }
  friend PoissonElement operator*(const PoissonElement& a,
                                  const PoissonElement& b);
  PoissonElement& operator*=(const PoissonElement& o) {
    return *this = *this * o;
  }
  PoissonElement scaled(const Rational& c) const;
  PoissonElement pow(unsigned k) const;
  bool operator==(const PoissonElement& o) const;

  // Total degree by word length; throws DomainError on the zero element.
  unsigned total_degree() const;
  // Max number of occurrences of generator g; throws on zero element.
  unsigned generator_degree(unsigned g) const;
  // Components keyed by the per-generator degree vector.
  std::map<std::vector<unsigned>, PoissonElement> multihomogeneous_components()
      const;
  std::map<unsigned, PoissonElement> homogeneous_components() const;

  std::string to_string() const;  // default generator names
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  unsigned gens_;
  TermMap terms_;
};

// {a, b} extended from the free Lie bracket by bilinearity and Leibniz.
PoissonElement poisson_bracket(const PoissonElement& a,
                               const PoissonElement& b);

// "x","y" for two generators, else "z1","z2",...
std::vector<std::string> default_generator_names(unsigned gens);

// The (2n-1)!! customary monomials over 2n generators: products of brackets
// over perfect matchings {i1,j1}...{in,jn} with i<j in each pair and the
// pair minima increasing.
std::vector<PoissonElement> customary_basis(unsigned n);

// The standard customary polynomial St_{2n+2}: the signed sum of the
// customary basis over 2n+2 generators.
PoissonElement standard_customary(unsigned n);

// St_4 over 4 generators (n = 1 case of the above).
PoissonElement st4();

// Split f in k{x,y} into (f1, f2) with f1 the part whose monomials use only
// single-letter words and f2 the rest. Requires exactly two generators.
std::pair<PoissonElement, PoissonElement> split_commutative_part(
    const PoissonElement& f);

// Bridges to the commutative polynomial ring. The context must have exactly
// `gens` coordinates and no jets.
PoissonElement polynomial_to_poisson(const RationalPolynomial& p);
RationalPolynomial commutative_to_polynomial(const PoissonElement& f,
                                             const ContextPtr& ctx);

}  // namespace pf
