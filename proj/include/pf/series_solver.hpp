#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pf/multiindex.hpp"
#include "pf/polyring.hpp"

namespace pf {

// A well-posed initial value problem for a formal power series solution
// T(X) = sum a_delta (X - C)^delta of f(X, d^{alpha_1}T, ..., d^{alpha_m}T) = 0.
//
// The data: n coordinates, strictly lex-increasing jet indices alpha_1..alpha_m,
// a base point C, prescribed values c^{alpha_i} of the derivatives at C, and
// the defining polynomial f over the coordinates and the jet symbols.
//
// Hypotheses, validated on construction (HypothesisViolation otherwise):
// f actually involves the top jet, f vanishes at the seed, and the partial
// of f by the top jet at the seed is nonzero.
struct SeriesProblem {
  ContextPtr jet_ctx;                 // n coords + jets {alpha_1..alpha_m}
  std::vector<MultiIndex> alphas;     // sorted, strictly increasing lex
  std::vector<Rational> point;        // C, size n
  std::vector<Rational> values;       // c^{alpha_i}, aligned with alphas
  RationalPolynomial f;

  static SeriesProblem create(std::vector<std::string> coord_names,
                              std::vector<MultiIndex> alphas,
                              std::vector<Rational> point,
                              std::vector<Rational> values,
                              const RationalPolynomial& f);
};

struct SeriesBudget {
  std::size_t max_coefficients = 20000;   // memoized a_delta entries
  std::size_t max_monomials = 1000000;    // total terms in derivative cache
  unsigned max_depth = 4096;              // recursion depth
};

// Demand-driven solver for the coefficients a_delta. Coefficients at indices
// below alpha_m that are not among the alphas are zero (initial data), and
// indices not reachable as beta + alpha_m are completed by zero as well; the
// recursion solves one linear equation per reachable index, walking strictly
// lex-downward. Deterministic; all arithmetic exact.
class SeriesSession {
 public:
  explicit SeriesSession(SeriesProblem problem, SeriesBudget budget = {});

  const SeriesProblem& problem() const { return prob_; }

  // Coefficient a_delta of (X - C)^delta.
  const Rational& coefficient(const MultiIndex& delta);

  // Partial sum of all terms of total degree <= order, as a polynomial in
  // the shifted coordinates: the monomial with exponent delta stands for
  // (X - C)^delta. The context carries the coordinate names.
  RationalPolynomial truncate(unsigned order);

  // Substitute the truncation back into f and check that every term of total
  // degree <= order - max|alpha_i| cancels. Requires order >= max|alpha_i|.
  bool residual_check(unsigned order);

  // Indices computed so far (for reporting).
  const std::map<MultiIndex, Rational, MultiIndexLexLess>& computed() const {
    return memo_;
  }

 private:
  const RationalPolynomial& derivative(const MultiIndex& beta);
  Rational jet_value(const MultiIndex& delta);

  SeriesProblem prob_;
  SeriesBudget budget_;
  Rational lead_;  // df/dt^{alpha_m} at the seed, the pivot of every solve
  std::map<MultiIndex, Rational, MultiIndexLexLess> memo_;
  std::map<MultiIndex, RationalPolynomial, MultiIndexLexLess> derivs_;
  std::size_t cached_monomials_ = 0;
  unsigned depth_ = 0;
};

}  // namespace pf
