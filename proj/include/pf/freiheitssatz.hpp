#pragma once

#include <cstdint>
#include <vector>

#include "pf/freepoisson.hpp"
#include "pf/series_solver.hpp"
#include "pf/symplectic.hpp"

namespace pf {

struct FreiheitssatzBudget {
  unsigned max_rank = 4;
  unsigned embed_tries_per_rank = 200;
  unsigned seed_tries = 500;
  SeriesBudget series;
};

// The component of f of maximal degree in the last generator z_m.
// Throws NotDependent when f does not involve z_m (or is zero).
PoissonElement highest_zm_part(const PoissonElement& f);

// A symplectic rank and generator images under which g, f and the top part
// of f all stay nonzero. The z_m image is only a certificate for the
// nonvanishing checks; the pipeline replaces z_m by the series unknown.
struct Embedding {
  unsigned rank = 0;
  GeneratorAssignment phi;  // images for all m generators
};

Embedding find_embedding(const PoissonElement& f, const PoissonElement& g,
                         const FreiheitssatzBudget& budget,
                         std::uint64_t seed);

// The PDE h(x, ..., d^alpha Z, ...) = 0 obtained from f by sending z_i to
// its image for i < m and z_m to the unknown jet, with brackets rewritten
// through total derivatives.
struct PdeData {
  unsigned rank = 0;
  RationalPolynomial h;            // over 2n coords and the alphas
  std::vector<MultiIndex> alphas;  // jets occurring in h, sorted lex
};

PdeData extract_pde(const PoissonElement& f, const GeneratorAssignment& phi,
                    unsigned rank);

// A rational point: coordinate values plus one value per jet index, at which
// h vanishes but dh/d(top jet) does not.
struct SeedPoint {
  std::vector<Rational> coords;
  std::vector<Rational> jet_values;  // aligned with PdeData::alphas
};

SeedPoint find_seed(const PdeData& pde, const FreiheitssatzBudget& budget,
                    std::uint64_t seed);

struct FreiheitssatzWitness {
  unsigned rank = 0;
  std::vector<RationalPolynomial> phi;  // images of z_1..z_{m-1}
  PdeData pde;
  SeedPoint seed;
  unsigned order = 0;            // truncation order N
  unsigned certified_order = 0;  // N - max |alpha|
  RationalPolynomial series;     // Z_N in coordinates shifted by the seed
  RationalPolynomial theta_g;    // nonzero image of g
  bool residual_ok = false;
};

// Full pipeline. Errors from each stage are rethrown as StageError with the
// stage name; the witness returned has passed the solver-side residual check.
FreiheitssatzWitness construct_witness(const PoissonElement& f,
                                       const PoissonElement& g, unsigned order,
                                       const FreiheitssatzBudget& budget,
                                       std::uint64_t seed);

// Independent re-check that avoids the solver caches entirely: z_m is
// replaced by the expanded truncation inside PS_n, f is evaluated through
// ps_bracket only, and the low-order part of the result (shifted back to the
// seed) must vanish; also re-checks that the image of g is theta_g != 0.
bool verify_witness(const PoissonElement& f, const PoissonElement& g,
                    const FreiheitssatzWitness& w);

}  // namespace pf
