#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "pf/freepoisson.hpp"
#include "pf/multiindex.hpp"
#include "pf/polyring.hpp"
#include "pf/rational.hpp"

namespace pf {

// Surface syntax shared by all inputs:
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (['*'] factor)*
//   factor  := primary ('^' NAT | '/' NAT)*
//   primary := NAT ['/' NAT] | IDENT | 'u' '(' NAT (',' NAT)* ')'
//            | '(' expr ')' | '{' expr ',' expr '}'
//
// Multiplication may be written by juxtaposition. Division is only by
// numeric literals, so all arithmetic stays exact; "x/2^3" is rejected as
// ambiguous. Errors carry the byte offset into the input.

enum class ExprKind { Number, Ident, Jet, Neg, Add, Sub, Mul, Pow, Bracket };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  std::size_t pos = 0;       // byte offset in the source text
  Rational number;           // Number
  std::string ident;         // Ident
  MultiIndex jet;            // Jet
  ExprPtr a, b;              // children (Neg/Pow use a; Pow exponent below)
  unsigned exponent = 0;     // Pow
};

ExprPtr parse_expression(const std::string& text);  // throws SyntaxError

// Elaborate into the free Poisson algebra k{z_1..z_m}. Generators may be
// written z1..zm always, and x, y when m == 2.
PoissonElement to_poisson(const ExprPtr& e, unsigned gens);

// Elaborate into PS_rank. Coordinates are x1, y1, ..., xn, yn; x and y are
// accepted for x1, y1 when rank == 1. Brackets mean the symplectic bracket.
RationalPolynomial to_symplectic(const ExprPtr& e, unsigned rank);

// Elaborate into k[x, y]; brackets are rejected.
RationalPolynomial to_plane_polynomial(const ExprPtr& e);

// Elaborate into a jet polynomial over the named coordinates together with
// the jet symbols u(...) that occur (arity must equal the coordinate count);
// brackets are rejected.
RationalPolynomial to_jet_polynomial(const ExprPtr& e,
                                     const std::vector<std::string>& coords);

// Convenience: "x1,x2" or "x y" style splitting for CLI variable lists.
std::vector<std::string> split_names(const std::string& text);

}  // namespace pf
