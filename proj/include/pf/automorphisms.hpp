#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pf/freepoisson.hpp"
#include "pf/polyring.hpp"

namespace pf {

// The polynomial plane k[x,y]; all endomorphisms in this module live here.
ContextPtr plane_context();

// Polynomial endomorphism of k[x,y], written by its images of x and y.
struct PolyEndo {
  RationalPolynomial F, G;
};

PolyEndo identity_endo();
bool is_identity(const PolyEndo& e);

// p(F, G).
RationalPolynomial apply(const PolyEndo& e, const RationalPolynomial& p);

// Image pair of "phi then psi": substitute psi's images into phi's.
// As operators on polynomials, E_{compose(phi,psi)} = E_psi after E_phi.
PolyEndo compose(const PolyEndo& phi, const PolyEndo& psi);

// F_x G_y - F_y G_x.
RationalPolynomial jacobian(const PolyEndo& e);

// x -> a x + b y + e, y -> c x + d y + f, with ad - bc != 0.
struct AffineMove {
  Rational a, b, c, d, e, f;
};

// var == 0: x -> x + p(y); var == 1: y -> y + p(x). p uses only the other
// variable.
struct TriangularMove {
  unsigned var = 1;
  RationalPolynomial p;
};

class ElementaryMove {
 public:
  explicit ElementaryMove(AffineMove m);     // DomainError if singular
  explicit ElementaryMove(TriangularMove m); // DomainError if p uses `var`

  bool is_affine() const { return std::holds_alternative<AffineMove>(v_); }
  const AffineMove& affine() const { return std::get<AffineMove>(v_); }
  const TriangularMove& triangular() const {
    return std::get<TriangularMove>(v_);
  }

  PolyEndo as_endo() const;
  ElementaryMove inverse() const;
  bool is_identity_move() const;
  std::string to_string() const;

 private:
  std::variant<AffineMove, TriangularMove> v_;
};

// Fold the list left to right: the first move is applied first.
PolyEndo compose_moves(const std::vector<ElementaryMove>& moves);
std::vector<ElementaryMove> invert_moves(const std::vector<ElementaryMove>& moves);

// Poisson endomorphism of k{x,y}.
struct PoissonEndo {
  PoissonElement F{2}, G{2};
};

PoissonEndo lift(const PolyEndo& e);
PoissonElement apply(const PoissonEndo& e, const PoissonElement& a);
PoissonEndo compose(const PoissonEndo& phi, const PoissonEndo& psi);

// Classification of {F, G} against multiples of e3 = {x,y}.
struct BracketScaling {
  enum class Kind { Scalar, PolynomialMultiple, NotAMultiple };
  Kind kind = Kind::Scalar;
  Rational alpha;               // Scalar case; zero means degenerate
  RationalPolynomial t;         // PolynomialMultiple case, in k[x,y]
  PoissonElement offending{2};  // NotAMultiple: the non-conforming part
  bool degenerate = false;      // {F,G} == 0
};

BracketScaling bracket_scaling_test(const PoissonEndo& e);

// Commutative projection: psi collects the letter-only parts of the images;
// h is the bracket remainder {F,G} - {f1,g1}. The support condition on h
// (every monomial has two bracket factors or a word of length >= 3) is a
// theorem and is asserted.
struct SplitProjection {
  PolyEndo psi;
  PoissonElement h{2};
};

SplitProjection split_and_project(const PoissonEndo& e);

// Jung-van der Kulk peeling. When the input is a tame automorphism the move
// list composes exactly to it (certified by composition before returning);
// otherwise is_automorphism is false and `stalled` holds the state at which
// peeling got stuck, with a human-readable reason.
struct JungResult {
  bool is_automorphism = false;
  std::vector<ElementaryMove> moves;
  PolyEndo stalled;
  std::string reason;
};

JungResult jung_decompose(const PolyEndo& e);

// The bridge from a Poisson endomorphism with {F,G} = alpha*{x,y}, alpha in
// k*: split off psi, check J(psi) = alpha exactly, decompose psi, and verify
// that theta = psi^{-1} o phi fixes x and y up to elements of the bracket
// ideal; s and t are those defects (zero for an automorphism pair).
struct Theorem4Report {
  Rational alpha;
  Rational jacobian_psi;
  JungResult jung;
  PoissonElement s{2}, t{2};
  bool s_t_zero = false;
};

Theorem4Report theorem4_bridge(const PoissonEndo& e);

}  // namespace pf
