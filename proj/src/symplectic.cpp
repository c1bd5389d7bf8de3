#include "pf/symplectic.hpp"

#include <map>
#include <random>

#include "pf/errors.hpp"

namespace pf {

ContextPtr symplectic_context(unsigned rank) {
  if (rank == 0) throw DomainError("symplectic_context: rank must be >= 1");
  std::vector<std::string> names;
  names.reserve(2 * rank);
  for (unsigned k = 1; k <= rank; ++k) {
    names.push_back("x" + std::to_string(k));
    names.push_back("y" + std::to_string(k));
  }
  return PolyContext::make(std::move(names));
}

unsigned symplectic_rank(const PolyContext& ctx) {
  if (ctx.jet_count() != 0 || ctx.coord_count() == 0 ||
      ctx.coord_count() % 2 != 0)
    throw ContextMismatch("symplectic_rank: context is not symplectic-shaped");
  return (unsigned)(ctx.coord_count() / 2);
}

RationalPolynomial ps_bracket(const RationalPolynomial& a,
                              const RationalPolynomial& b) {
  if (!(a.context() == b.context()) && !a.context()->same_as(*b.context()))
    throw ContextMismatch("ps_bracket: operands in different contexts");
  unsigned n = symplectic_rank(*a.context());
  RationalPolynomial r(a.context());
  for (unsigned i = 0; i < n; ++i) {
    Variable xi = Variable::coordinate(2 * i);
    Variable yi = Variable::coordinate(2 * i + 1);
    r += a.partial_derivative(xi) * b.partial_derivative(yi);
    r -= a.partial_derivative(yi) * b.partial_derivative(xi);
  }
  return r;
}

GeneratorAssignment structured_assignment(unsigned gens, unsigned rank) {
  ContextPtr ctx = symplectic_context(rank);
  GeneratorAssignment phi;
  phi.rank = rank;
  for (unsigned j = 0; j < gens; ++j) {
    phi.images.push_back(RationalPolynomial::variable(
        ctx, Variable::coordinate(j % (2 * rank))));
  }
  return phi;
}

RationalPolynomial eval_hom(const GeneratorAssignment& phi,
                            const PoissonElement& a) {
  if (phi.rank == 0) throw DomainError("eval_hom: rank must be >= 1");
  ContextPtr ctx = symplectic_context(phi.rank);
  std::vector<RationalPolynomial> images;
  images.reserve(phi.images.size());
  for (const auto& img : phi.images) images.push_back(img.in_context(ctx));

  std::map<Word, RationalPolynomial> cache;
  auto eval_word = [&](auto&& self, const Word& w) -> const RationalPolynomial& {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    RationalPolynomial val(ctx);
    if (w.size() == 1) {
      std::size_t i = (std::size_t)(unsigned char)w[0];
      if (i >= images.size())
        throw DomainError("eval_hom: no image for generator " +
                          std::to_string(i + 1));
      val = images[i];
    } else {
      auto [u, v] = standard_factorization(w);
      const RationalPolynomial& pu = self(self, u);
      const RationalPolynomial& pv = self(self, v);
      val = ps_bracket(pu, pv);
    }
    return cache.emplace(w, std::move(val)).first->second;
  };

  RationalPolynomial out(ctx);
  for (const auto& [m, c] : a.terms()) {
    RationalPolynomial t = RationalPolynomial::constant(ctx, c);
    for (const auto& [w, k] : m.factors()) t *= eval_word(eval_word, w).pow(k);
    out += t;
  }
  return out;
}

namespace {

RationalPolynomial random_polynomial(const ContextPtr& ctx,
                                     std::mt19937_64& rng,
                                     unsigned degree_bound) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<unsigned> nterms(1, 3);
  std::uniform_int_distribution<unsigned> deg(0, degree_bound);
  std::uniform_int_distribution<std::size_t> pick(0, ctx->var_count() - 1);
  RationalPolynomial p(ctx);
  unsigned k = nterms(rng);
  for (unsigned t = 0; t < k; ++t) {
    int c = coeff(rng);
    Exponents e(ctx->var_count(), 0u);
    unsigned d = deg(rng);
    for (unsigned i = 0; i < d; ++i) e[pick(rng)] += 1;
    if (c != 0) p += RationalPolynomial::monomial(ctx, e, Rational(c));
  }
  return p;
}

}  // namespace

IdentityVerdict is_identity_randomized(const PoissonElement& a, unsigned rank,
                                       unsigned degree_bound, unsigned trials,
                                       std::uint64_t seed) {
  if (a.is_zero())
    throw DomainError("is_identity_randomized: zero element (trivially zero)");
  if (trials < 1) throw DomainError("is_identity_randomized: trials must be >= 1");
  if (rank == 0) throw DomainError("is_identity_randomized: rank must be >= 1");
  IdentityVerdict verdict;
  verdict.degree_bound = degree_bound;
  verdict.rank = rank;
  unsigned gens = a.generators();

  auto check = [&](const GeneratorAssignment& phi) -> bool {
    RationalPolynomial img = eval_hom(phi, a);
    if (img.is_zero()) return false;
    verdict.non_identity = true;
    verdict.witness = NonIdentityWitness{phi, img};
    return true;
  };

  // Structured alternating substitution first.
  if (check(structured_assignment(gens, rank))) return verdict;

  ContextPtr ctx = symplectic_context(rank);
  for (unsigned t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + t + 1);
    GeneratorAssignment phi;
    phi.rank = rank;
    for (unsigned g = 0; g < gens; ++g)
      phi.images.push_back(random_polynomial(ctx, rng, degree_bound));
    verdict.trials_run = t + 1;
    if (check(phi)) return verdict;
  }
  return verdict;
}

bool is_customary(const PoissonElement& q) {
  unsigned gens = q.generators();
  for (const auto& [m, c] : q.terms()) {
    (void)c;
    for (const auto& [w, k] : m.factors()) {
      (void)k;
      if (w.size() != 2) return false;
    }
    for (unsigned g = 0; g < gens; ++g)
      if (m.generator_degree(g) != 1) return false;
  }
  return true;
}

namespace {

// Position of gradient slot s of generator i in the gradient context.
std::size_t grad_pos(unsigned i, unsigned s, unsigned slots) {
  return (std::size_t)i * slots + s;
}

ContextPtr gradient_context(unsigned gens, unsigned slots) {
  std::vector<std::string> names;
  names.reserve((std::size_t)gens * slots);
  for (unsigned i = 1; i <= gens; ++i)
    for (unsigned s = 1; s <= slots; ++s)
      names.push_back("g" + std::to_string(i) + "_" + std::to_string(s));
  return PolyContext::make(std::move(names));
}

// Symplectic pairing of the gradients of generators a and b.
RationalPolynomial gradient_pairing(const ContextPtr& ctx, unsigned a,
                                    unsigned b, unsigned rank,
                                    unsigned slots) {
  RationalPolynomial r(ctx);
  for (unsigned j = 0; j < rank; ++j) {
    auto v = [&](unsigned gen, unsigned slot) {
      return RationalPolynomial::variable(
          ctx, Variable::coordinate(grad_pos(gen, slot, slots)));
    };
    r += v(a, 2 * j) * v(b, 2 * j + 1) - v(a, 2 * j + 1) * v(b, 2 * j);
  }
  return r;
}

}  // namespace

CustomaryDecision customary_identity_exact(const PoissonElement& q,
                                           unsigned rank) {
  if (rank == 0)
    throw DomainError("customary_identity_exact: rank must be >= 1");
  if (!is_customary(q))
    throw DomainError("customary_identity_exact: element is not customary");
  CustomaryDecision out;
  if (q.is_zero()) {
    out.identity = true;
    return out;
  }
  unsigned gens = q.generators();
  unsigned slots = 2 * rank;
  ContextPtr gctx = gradient_context(gens, slots);

  RationalPolynomial expansion(gctx);
  for (const auto& [m, c] : q.terms()) {
    RationalPolynomial t = RationalPolynomial::constant(gctx, c);
    for (const auto& [w, k] : m.factors())
      t *= gradient_pairing(gctx, (unsigned)(unsigned char)w[0],
                            (unsigned)(unsigned char)w[1], rank, slots)
               .pow(k);
    expansion += t;
  }
  if (expansion.is_zero()) {
    out.identity = true;
    return out;
  }

  // Not an identity: find gradient values with nonzero expansion value, then
  // realize them as linear forms.
  std::vector<std::vector<Rational>> grad(gens,
                                          std::vector<Rational>(slots, 0));
  Rational value(0);
  bool found = false;
  if (gens <= slots) {
    // Unit gradients: generator i points along slot i. This is the gradient
    // profile of the alternating substitution z_{2k-1} -> x_k, z_{2k} -> y_k.
    std::map<Variable, Rational, VariableLess> point;
    for (unsigned i = 0; i < gens; ++i)
      for (unsigned s = 0; s < slots; ++s)
        point.emplace(Variable::coordinate(grad_pos(i, s, slots)),
                      Rational(i == s ? 1 : 0));
    value = expansion.evaluate(point);
    if (!value.is_zero()) {
      for (unsigned i = 0; i < gens; ++i) grad[i][i] = Rational(1);
      found = true;
    }
  }
  if (!found) {
    std::mt19937_64 rng(0x5DEECE66DULL);
    std::uniform_int_distribution<int> small(-2, 2);
    for (unsigned attempt = 0; attempt < 100000 && !found; ++attempt) {
      std::map<Variable, Rational, VariableLess> point;
      for (unsigned i = 0; i < gens; ++i)
        for (unsigned s = 0; s < slots; ++s) {
          grad[i][s] = Rational(small(rng));
          point.emplace(Variable::coordinate(grad_pos(i, s, slots)),
                        grad[i][s]);
        }
      value = expansion.evaluate(point);
      if (!value.is_zero()) found = true;
    }
    if (!found)
      throw BudgetExceeded(
          "customary_identity_exact: witness search budget exhausted");
  }

  ContextPtr ps = symplectic_context(rank);
  GeneratorAssignment phi;
  phi.rank = rank;
  for (unsigned i = 0; i < gens; ++i) {
    RationalPolynomial img(ps);
    for (unsigned s = 0; s < slots; ++s)
      img += RationalPolynomial::variable(ps, Variable::coordinate(s))
                 .scaled(grad[i][s]);
    phi.images.push_back(img);
  }
  out.identity = false;
  out.witness =
      NonIdentityWitness{phi, RationalPolynomial::constant(ps, value)};
  return out;
}

CustomaryDecision customary_identity_all_ranks(const PoissonElement& q,
                                               unsigned max_rank) {
  if (max_rank == 0)
    throw DomainError("customary_identity_all_ranks: empty rank budget");
  CustomaryDecision last;
  for (unsigned n = 1; n <= max_rank; ++n) {
    last = customary_identity_exact(q, n);
    if (!last.identity) return last;
  }
  return last;
}

}  // namespace pf
