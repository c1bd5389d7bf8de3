#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pf/multiindex.hpp"
#include "pf/rational.hpp"

namespace pf {

enum class VarKind { Coordinate, Jet };

// A ring variable: either a named coordinate (by position) or a jet symbol
// u_alpha indexed by a multi-index. Coordinates sort before jets; jets sort
// lexicographically by their index.
class Variable {
 public:
  static Variable coordinate(std::size_t index) {
    return Variable(VarKind::Coordinate, index, std::nullopt);
  }
  static Variable jet(MultiIndex alpha) {
    return Variable(VarKind::Jet, 0, std::move(alpha));
  }

  VarKind kind() const { return kind_; }
  std::size_t coord_index() const;
  const MultiIndex& jet_index() const;

  std::strong_ordering compare(const Variable& o) const;
  bool operator==(const Variable& o) const {
    return compare(o) == std::strong_ordering::equal;
  }

 private:
  Variable(VarKind k, std::size_t i, std::optional<MultiIndex> a)
      : kind_(k), index_(i), jet_(std::move(a)) {}
  VarKind kind_;
  std::size_t index_;
  std::optional<MultiIndex> jet_;
};

struct VariableLess {
  bool operator()(const Variable& a, const Variable& b) const {
    return a.compare(b) == std::strong_ordering::less;
  }
};

class PolyContext;
using ContextPtr = std::shared_ptr<const PolyContext>;

// Immutable variable universe of a polynomial: named coordinates plus a
// sorted set of jet symbols (all of one arity). Shared by pointer; ring ops
// accept operands whose contexts are equal by value.
class PolyContext {
 public:
  static ContextPtr make(std::vector<std::string> coord_names,
                         std::vector<MultiIndex> jets = {});

  std::size_t coord_count() const { return coord_names_.size(); }
  std::size_t jet_count() const { return jets_.size(); }
  std::size_t var_count() const { return coord_names_.size() + jets_.size(); }
  const std::string& coord_name(std::size_t i) const { return coord_names_[i]; }
  const std::vector<std::string>& coord_names() const { return coord_names_; }
  const MultiIndex& jet_at(std::size_t k) const { return jets_[k]; }
  const std::vector<MultiIndex>& jets() const { return jets_; }
  // Arity of the jet symbols; meaningful only when jet_count() > 0.
  std::size_t jet_arity() const;

  Variable var(std::size_t pos) const;
  std::optional<std::size_t> position(const Variable& v) const;
  std::string var_name(std::size_t pos) const;

  // Context extended by the given jet symbols (deduplicated); returns an
  // equal-by-value context (possibly this one) if nothing new.
  ContextPtr with_jets(const std::vector<MultiIndex>& extra) const;

  bool same_as(const PolyContext& o) const {
    return coord_names_ == o.coord_names_ && jets_ == o.jets_;
  }

 private:
  PolyContext(std::vector<std::string> names, std::vector<MultiIndex> jets)
      : coord_names_(std::move(names)), jets_(std::move(jets)) {}
  std::vector<std::string> coord_names_;
  std::vector<MultiIndex> jets_;  // sorted lex, unique
};

using Exponents = std::vector<unsigned>;

// Graded lexicographic order on exponent vectors of equal length.
struct ExponentsGradedLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Multivariate polynomial with Rational coefficients over a PolyContext.
// Terms are kept in a sorted map; printing walks terms leading-first.
class RationalPolynomial {
 public:
  using TermMap = std::map<Exponents, Rational, ExponentsGradedLess>;

  // Zero polynomial over the empty context (no variables): a placeholder
  // state meant to be assigned over before use.
  RationalPolynomial();
  explicit RationalPolynomial(ContextPtr ctx);
  static RationalPolynomial constant(ContextPtr ctx, const Rational& c);
  static RationalPolynomial variable(ContextPtr ctx, const Variable& v);
  static RationalPolynomial monomial(ContextPtr ctx, Exponents e,
                                     const Rational& c);

  const ContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // The value of a constant polynomial (zero polynomial gives 0).
  Rational constant_value() const;
  Rational coefficient(const Exponents& e) const;

  // Max total degree over terms; -1 for the zero polynomial.
  int total_degree() const;
  unsigned degree_in(const Variable& v) const;
  // Leading homogeneous component (terms of max total degree).
  RationalPolynomial top_form() const;
  // Distinct variables occurring with nonzero exponent, as context positions.
  std::vector<std::size_t> support_positions() const;

  RationalPolynomial operator-() const;
  RationalPolynomial& operator+=(const RationalPolynomial& o);
  RationalPolynomial& operator-=(const RationalPolynomial& o);
  friend RationalPolynomial operator+(RationalPolynomial a,
                                      const RationalPolynomial& b) {
    return a += b;
  }
  friend RationalPolynomial operator-(RationalPolynomial a,
                                      const RationalPolynomial& b) {
    return a -= b;
  }
  friend RationalPolynomial operator*(const RationalPolynomial& a,
                                      const RationalPolynomial& b);
  RationalPolynomial& operator*=(const RationalPolynomial& o) {
    return *this = *this * o;
  }
  RationalPolynomial scaled(const Rational& c) const;
  RationalPolynomial pow(unsigned k) const;
  bool operator==(const RationalPolynomial& o) const;

  RationalPolynomial partial_derivative(const Variable& v) const;
  // Total derivative with respect to coordinate j: d/dx_j plus the chain-rule
  // contribution u_alpha -> u_{alpha+e_j}. May extend the context with new
  // jet symbols; requires jet arity == coordinate count when jets occur.
  RationalPolynomial total_derivative(std::size_t coord) const;

  // Evaluate at a point; every variable occurring in the polynomial must be
  // assigned, otherwise DomainError.
  Rational evaluate(const std::map<Variable, Rational, VariableLess>& a) const;

  // Substitute images for the mapped variables; unmapped variables must exist
  // in result_ctx. All images must live in result_ctx.
  RationalPolynomial substitute(
      const std::map<Variable, RationalPolynomial, VariableLess>& images,
      const ContextPtr& result_ctx) const;

  // Reinterpret in a larger context; every occurring variable must exist.
  RationalPolynomial in_context(const ContextPtr& bigger) const;

  // The unique variable occurring, if exactly one does.
  std::optional<Variable> sole_variable() const;
  // Dense coefficient list c[0..d] of p viewed as a univariate polynomial in
  // v; requires that no other variable occurs.
  std::vector<Rational> univariate_coeffs(const Variable& v) const;
  // Polynomial coefficient of v^k (a polynomial not involving v).
  RationalPolynomial coefficient_in(const Variable& v, unsigned k) const;

  std::string to_string() const;

 private:
  void insert_term(const Exponents& e, const Rational& c);
  ContextPtr ctx_;
  TermMap terms_;
};

// Rebase both operands into the union of their contexts (same coordinates
// required; jet sets are merged).
std::pair<RationalPolynomial, RationalPolynomial> unify(
    const RationalPolynomial& a, const RationalPolynomial& b);

// All rational roots of a univariate polynomial with multiplicities, sorted
// ascending by value. Throws DomainError on the zero polynomial or if more
// than one variable occurs; constants have no roots.
std::vector<std::pair<Rational, int>> rational_roots(
    const RationalPolynomial& p);

}  // namespace pf
