#include "pf/freiheitssatz.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "pf/errors.hpp"

namespace pf {

PoissonElement highest_zm_part(const PoissonElement& f) {
  if (f.is_zero()) throw NotDependent("highest_zm_part: zero element");
  unsigned m = f.generators();
  unsigned top = f.generator_degree(m - 1);
  if (top == 0)
    throw NotDependent("highest_zm_part: f does not involve z" +
                       std::to_string(m));
  PoissonElement out(m);
  for (const auto& [mono, c] : f.terms())
    if (mono.generator_degree(m - 1) == top) out.add_term(mono, c);
  return out;
}

namespace {

// Deterministic candidate images for all m generators at the given rank.
// t = 0 is the alternating substitution; small structured variants follow;
// later candidates are random with small coefficients.
GeneratorAssignment embedding_candidate(unsigned gens, unsigned rank,
                                        unsigned t, std::uint64_t seed) {
  GeneratorAssignment phi = structured_assignment(gens, rank);
  ContextPtr ctx = symplectic_context(rank);
  auto coord = [&](unsigned pos) {
    return RationalPolynomial::variable(ctx, Variable::coordinate(pos));
  };
  if (t == 0) return phi;
  if (t == 1) {
    // Last generator replaced by x_n * y_n.
    phi.images.back() = coord(2 * rank - 2) * coord(2 * rank - 1);
    return phi;
  }
  if (t == 2) {
    phi.images.back() =
        coord(2 * rank - 1) + RationalPolynomial::constant(ctx, Rational(1));
    return phi;
  }
  static const Rational kPool[] = {Rational(0),     Rational(1),
                                   Rational(-1),    Rational(2),
                                   Rational(-2),    Rational(1, 2),
                                   Rational(-1, 2)};
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + rank * 1000003ULL + t);
  std::uniform_int_distribution<std::size_t> pick_coeff(0, 6);
  std::uniform_int_distribution<std::size_t> pick_var(0, 2 * rank - 1);
  std::uniform_int_distribution<unsigned> pick_deg(0, 2);
  std::uniform_int_distribution<unsigned> pick_terms(1, 3);
  for (auto& img : phi.images) {
    RationalPolynomial p(ctx);
    unsigned nt = pick_terms(rng);
    for (unsigned k = 0; k < nt; ++k) {
      Rational c = kPool[pick_coeff(rng)];
      Exponents e(2 * rank, 0u);
      unsigned d = pick_deg(rng);
      for (unsigned i = 0; i < d; ++i) e[pick_var(rng)] += 1;
      if (!c.is_zero()) p += RationalPolynomial::monomial(ctx, e, c);
    }
    img = p;
  }
  return phi;
}

}  // namespace

Embedding find_embedding(const PoissonElement& f, const PoissonElement& g,
                         const FreiheitssatzBudget& budget,
                         std::uint64_t seed) {
  unsigned m = f.generators();
  if (m < 2) throw DomainError("find_embedding: need at least 2 generators");
  if (g.is_zero()) throw DomainError("find_embedding: g must be nonzero");
  if (g.generators() != m)
    throw ArityMismatch("find_embedding: f and g over different generators");
  if (!g.is_zero() && g.generator_degree(m - 1) != 0)
    throw DomainError("find_embedding: g must not involve z" +
                      std::to_string(m));
  PoissonElement fhat = highest_zm_part(f);  // NotDependent if z_m absent
  for (unsigned n = 1; n <= budget.max_rank; ++n) {
    for (unsigned t = 0; t < budget.embed_tries_per_rank; ++t) {
      GeneratorAssignment phi = embedding_candidate(m, n, t, seed);
      if (eval_hom(phi, g).is_zero()) continue;
      if (eval_hom(phi, f).is_zero()) continue;
      if (eval_hom(phi, fhat).is_zero()) continue;
      return Embedding{n, std::move(phi)};
    }
  }
  throw BudgetExceeded(
      "find_embedding: no admissible substitution within rank " +
      std::to_string(budget.max_rank) + " and " +
      std::to_string(budget.embed_tries_per_rank) + " tries per rank");
}

namespace {

// Extended bracket on the jet ring: total derivatives in place of partials.
RationalPolynomial ext_bracket(const RationalPolynomial& a,
                               const RationalPolynomial& b, unsigned rank) {
  auto [p, q] = unify(a, b);
  RationalPolynomial r(p.context());
  for (unsigned i = 0; i < rank; ++i) {
    auto [t1a, t1b] =
        unify(p.total_derivative(2 * i), q.total_derivative(2 * i + 1));
    auto [t2a, t2b] =
        unify(p.total_derivative(2 * i + 1), q.total_derivative(2 * i));
    auto [s1, s2] = unify(t1a * t1b, t2a * t2b);
    auto [acc, inc] = unify(r, s1 - s2);
    r = acc + inc;
  }
  return r;
}

}  // namespace

PdeData extract_pde(const PoissonElement& f, const GeneratorAssignment& phi,
                    unsigned rank) {
  unsigned m = f.generators();
  if (m < 2) throw DomainError("extract_pde: need at least 2 generators");
  if (phi.images.size() + 1 < m)
    throw DomainError("extract_pde: missing images for z_1..z_{m-1}");
  ContextPtr ps = symplectic_context(rank);
  MultiIndex zero = MultiIndex::zero(2 * rank);
  ContextPtr base = PolyContext::make(ps->coord_names(), {zero});

  std::map<Word, RationalPolynomial> cache;
  auto eval_word = [&](auto&& self, const Word& w) -> const RationalPolynomial& {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    RationalPolynomial val(base);
    if (w.size() == 1) {
      std::size_t i = (std::size_t)(unsigned char)w[0];
      if (i + 1 == m) {
        val = RationalPolynomial::variable(base, Variable::jet(zero));
      } else {
        val = phi.images[i].in_context(base);
      }
    } else {
      auto [u, v] = standard_factorization(w);
      RationalPolynomial pu = self(self, u);
      RationalPolynomial pv = self(self, v);
      val = ext_bracket(pu, pv, rank);
    }
    return cache.emplace(w, std::move(val)).first->second;
  };

  RationalPolynomial h(base);
  for (const auto& [mono, c] : f.terms()) {
    RationalPolynomial t(base);
    bool started = false;
    for (const auto& [w, k] : mono.factors()) {
      RationalPolynomial factor = eval_word(eval_word, w).pow(k);
      if (!started) {
        t = factor;
        started = true;
      } else {
        auto [ta, tb] = unify(t, factor);
        t = ta * tb;
      }
    }
    if (!started) t = RationalPolynomial::constant(base, Rational(1));
    auto [ha, hb] = unify(h, t.scaled(c));
    h = ha + hb;
  }
  if (h.is_zero())
    throw Error("extract_pde: image collapsed to zero (invariant violated)");

  // Jets actually occurring in h.
  std::vector<MultiIndex> alphas;
  for (std::size_t pos : h.support_positions()) {
    Variable v = h.context()->var(pos);
    if (v.kind() == VarKind::Jet) alphas.push_back(v.jet_index());
  }
  std::sort(alphas.begin(), alphas.end(), MultiIndexLexLess{});
  if (alphas.empty())
    throw NotDependent("extract_pde: the unknown disappeared from the PDE");
  // Restrict the context to the occurring jets.
  ContextPtr tight = PolyContext::make(ps->coord_names(), alphas);
  PdeData out;
  out.rank = rank;
  out.h = h.in_context(tight);
  out.alphas = std::move(alphas);
  return out;
}

namespace {

// Deterministic assignment stream for the seed search: all zeros first, then
// one-variable sweeps through a small grid, then random small rationals.
std::vector<Rational> seed_candidate(std::size_t nvars, unsigned t,
                                     std::uint64_t seed) {
  static const Rational kGrid[] = {Rational(1),     Rational(-1),
                                   Rational(2),     Rational(-2),
                                   Rational(1, 2),  Rational(-1, 2)};
  std::vector<Rational> vals(nvars, Rational(0));
  if (t == 0) return vals;
  unsigned sweeps = (unsigned)(nvars * 6);
  if (t <= sweeps) {
    unsigned idx = (t - 1) / 6;
    unsigned g = (t - 1) % 6;
    vals[idx] = kGrid[g];
    return vals;
  }
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + t);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  for (auto& v : vals) v = Rational((long)num(rng), (long)den(rng));
  return vals;
}

}  // namespace

SeedPoint find_seed(const PdeData& pde, const FreiheitssatzBudget& budget,
                    std::uint64_t seed) {
  const ContextPtr& ctx = pde.h.context();
  std::size_t ncoords = ctx->coord_count();
  std::size_t r = pde.alphas.size();
  const MultiIndex& top = pde.alphas.back();
  Variable u_top = Variable::jet(top);
  RationalPolynomial dh = pde.h.partial_derivative(u_top);
  // Variables assigned by the search: coordinates then the lower jets.
  std::size_t nfree = ncoords + (r - 1);

  for (unsigned t = 0; t < budget.seed_tries; ++t) {
    std::vector<Rational> vals = seed_candidate(nfree, t, seed);
    std::map<Variable, RationalPolynomial, VariableLess> images;
    for (std::size_t i = 0; i < ncoords; ++i)
      images.emplace(Variable::coordinate(i),
                     RationalPolynomial::constant(ctx, vals[i]));
    for (std::size_t i = 0; i + 1 < r; ++i)
      images.emplace(Variable::jet(pde.alphas[i]),
                     RationalPolynomial::constant(ctx, vals[ncoords + i]));
    RationalPolynomial univ = pde.h.substitute(images, ctx);
    if (univ.is_zero() || univ.is_constant()) continue;
    std::vector<std::pair<Rational, int>> roots;
    try {
      roots = rational_roots(univ);
    } catch (const BudgetExceeded&) {
      continue;  // outlandish constants; try the next assignment
    }
    if (roots.empty()) continue;
    // Prefer roots of small magnitude, positive before negative.
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
      Rational ma = a.first.abs(), mb = b.first.abs();
      if (!(ma == mb)) return ma < mb;
      return a.first > b.first;
    });
    for (const auto& [root, mult] : roots) {
      (void)mult;
      std::map<Variable, Rational, VariableLess> point;
      for (std::size_t i = 0; i < ncoords; ++i)
        point.emplace(Variable::coordinate(i), vals[i]);
      for (std::size_t i = 0; i + 1 < r; ++i)
        point.emplace(Variable::jet(pde.alphas[i]), vals[ncoords + i]);
      point.emplace(u_top, root);
      if (dh.evaluate(point).is_zero()) continue;
      SeedPoint sp;
      sp.coords.assign(vals.begin(), vals.begin() + (long)ncoords);
      for (std::size_t i = 0; i + 1 < r; ++i)
        sp.jet_values.push_back(vals[ncoords + i]);
      sp.jet_values.push_back(root);
      return sp;
    }
  }
  throw NoRationalSeed("find_seed: no rational seed within " +
                       std::to_string(budget.seed_tries) + " assignments");
}

FreiheitssatzWitness construct_witness(const PoissonElement& f,
                                       const PoissonElement& g, unsigned order,
                                       const FreiheitssatzBudget& budget,
                                       std::uint64_t seed) {
  auto stage = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const StageError&) {
      throw;
    } catch (const NoRationalSeed&) {
      throw;  // a mathematical negative, not a pipeline failure
    } catch (const BudgetExceeded&) {
      throw;  // budget contract, reported as such
    } catch (const Error& e) {
      throw StageError(name, e.what());
    }
  };

  Embedding emb = stage("find_embedding", [&] {
    return find_embedding(f, g, budget, seed);
  });
  PdeData pde = stage("extract_pde", [&] {
    return extract_pde(f, emb.phi, emb.rank);
  });
  SeedPoint sp = stage("find_seed", [&] { return find_seed(pde, budget, seed); });

  unsigned max_alpha = 0;
  for (const auto& a : pde.alphas)
    max_alpha = std::max(max_alpha, a.total_degree());
  if (order < max_alpha)
    throw HypothesisViolation(
        "construct_witness: order must be at least the largest |alpha| = " +
        std::to_string(max_alpha));

  FreiheitssatzWitness w;
  w.rank = emb.rank;
  w.pde = pde;
  w.seed = sp;
  w.order = order;
  w.certified_order = order - max_alpha;
  for (std::size_t i = 0; i + 1 < f.generators(); ++i)
    w.phi.push_back(emb.phi.images[i]);

  stage("series", [&] {
    SeriesProblem prob = SeriesProblem::create(
        pde.h.context()->coord_names(), pde.alphas, sp.coords, sp.jet_values,
        pde.h);
    SeriesSession session(std::move(prob), budget.series);
    w.series = session.truncate(order);
    w.residual_ok = session.residual_check(order);
    if (!w.residual_ok)
      throw Error("series: residual check failed (solver bug)");
    return 0;
  });

  GeneratorAssignment theta;
  theta.rank = emb.rank;
  theta.images = w.phi;
  w.theta_g = eval_hom(theta, g);
  if (w.theta_g.is_zero())
    throw Error("construct_witness: theta(g) vanished (invariant violated)");
  return w;
}

bool verify_witness(const PoissonElement& f, const PoissonElement& g,
                    const FreiheitssatzWitness& w) {
  ContextPtr ps = symplectic_context(w.rank);
  // Expand the series around the seed: substitute w_i -> x_i - c_i.
  std::map<Variable, RationalPolynomial, VariableLess> unshift;
  for (std::size_t i = 0; i < ps->coord_count(); ++i)
    unshift.emplace(
        Variable::coordinate(i),
        RationalPolynomial::variable(ps, Variable::coordinate(i)) -
            RationalPolynomial::constant(ps, w.seed.coords[i]));
  RationalPolynomial Z = w.series.substitute(unshift, ps);

  GeneratorAssignment full;
  full.rank = w.rank;
  full.images = w.phi;
  full.images.push_back(Z);
  RationalPolynomial image = eval_hom(full, f);

  // Shift back so low-order vanishing is read off at the seed.
  std::map<Variable, RationalPolynomial, VariableLess> shift;
  for (std::size_t i = 0; i < ps->coord_count(); ++i)
    shift.emplace(
        Variable::coordinate(i),
        RationalPolynomial::variable(ps, Variable::coordinate(i)) +
            RationalPolynomial::constant(ps, w.seed.coords[i]));
  RationalPolynomial shifted = image.substitute(shift, ps);
  for (const auto& [e, c] : shifted.terms()) {
    (void)c;
    unsigned deg = 0;
    for (unsigned x : e) deg += x;
    if (deg <= w.certified_order) return false;
  }

  GeneratorAssignment theta;
  theta.rank = w.rank;
  theta.images = w.phi;
  RationalPolynomial tg = eval_hom(theta, g);
  if (tg.is_zero()) return false;
  if (!(tg == w.theta_g.in_context(ps))) return false;
  return true;
}

}  // namespace pf
