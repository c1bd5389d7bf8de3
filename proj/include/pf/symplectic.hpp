#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pf/freepoisson.hpp"
#include "pf/polyring.hpp"

namespace pf {

// k[x_1,y_1,...,x_n,y_n] with the standard bracket. Coordinates are stored
// interleaved: position 2k is x_{k+1}, position 2k+1 is y_{k+1}.
ContextPtr symplectic_context(unsigned rank);

// Rank of a symplectic-shaped context (even coordinate count, no jets).
unsigned symplectic_rank(const PolyContext& ctx);

// {a, b} = sum_i (da/dx_i db/dy_i - da/dy_i db/dx_i).
RationalPolynomial ps_bracket(const RationalPolynomial& a,
                              const RationalPolynomial& b);

// Images of the generators z_1..z_m inside PS_rank.
struct GeneratorAssignment {
  unsigned rank = 0;
  std::vector<RationalPolynomial> images;
};

// The alternating substitution z_1 -> x_1, z_2 -> y_1, z_3 -> x_2, ...
// (indices wrap around when gens exceeds 2*rank).
GeneratorAssignment structured_assignment(unsigned gens, unsigned rank);

// The Poisson-algebra homomorphism k{z_1..z_m} -> PS_n determined by the
// assignment, applied to one element. Every generator occurring in `a` must
// have an image (DomainError otherwise).
RationalPolynomial eval_hom(const GeneratorAssignment& phi,
                            const PoissonElement& a);

struct NonIdentityWitness {
  GeneratorAssignment assignment;
  RationalPolynomial image;  // the nonzero value of the element
};

// Result of randomized identity testing. `non_identity` true means a witness
// was found; false is only ever "probably an identity".
struct IdentityVerdict {
  bool non_identity = false;
  std::optional<NonIdentityWitness> witness;
  unsigned trials_run = 0;
  unsigned degree_bound = 0;
  unsigned rank = 0;
};

// Randomized identity test of `a` on PS_rank: a structured substitution is
// tried first, then `trials` random polynomial substitutions of degree
// <= degree_bound with small coefficients. Deterministic per seed.
IdentityVerdict is_identity_randomized(const PoissonElement& a, unsigned rank,
                                       unsigned degree_bound, unsigned trials,
                                       std::uint64_t seed);

// True iff every monomial of q is a product of length-2 words covering each
// generator exactly once (so q is a combination of customary monomials).
bool is_customary(const PoissonElement& q);

struct CustomaryDecision {
  bool identity = false;
  std::optional<NonIdentityWitness> witness;
};

// Exact identity decision for customary elements on PS_rank: each bracket
// {z_a, z_b} is replaced by the symplectic pairing of fresh gradient
// indeterminates; q is an identity iff the resulting polynomial vanishes.
// On failure a witness of linear forms is produced. Throws DomainError if q
// is not customary.
CustomaryDecision customary_identity_exact(const PoissonElement& q,
                                           unsigned rank);

// Identity test on PS_infinity: customary inputs are decided exactly (an
// identity of all PS_n for n >= rank bound is tested at increasing ranks);
// the rank loop stops at max_rank.
CustomaryDecision customary_identity_all_ranks(const PoissonElement& q,
                                               unsigned max_rank);

}  // namespace pf
