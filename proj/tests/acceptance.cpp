// End-to-end acceptance checks. Each numbered check prints one PASS/FAIL
// line; the process exits nonzero if any check fails. All comparisons are
// exact — no tolerances anywhere.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "pf/automorphisms.hpp"
#include "pf/errors.hpp"
#include "pf/expr.hpp"
#include "pf/freepoisson.hpp"
#include "pf/freiheitssatz.hpp"
#include "pf/multiindex.hpp"
#include "pf/polyring.hpp"
#include "pf/series_solver.hpp"
#include "pf/symplectic.hpp"

using pf::ContextPtr;
using pf::MultiIndex;
using pf::PoissonElement;
using pf::Rational;
using pf::RationalPolynomial;
using pf::Variable;

namespace {

struct Result {
  bool ok = true;
  std::string detail;
};

Result pass() { return {}; }

#define RQ(cond, msg)                       \
  do {                                      \
    if (!(cond)) return Result{false, msg}; \
  } while (0)

using Rng = std::mt19937_64;

int rint(Rng& r, int lo, int hi) {
  return lo + int(r() % std::uint64_t(hi - lo + 1));
}

// ---- random elements --------------------------------------------------

// Left-normed bracket of the given degree in k{x,y}; never zero.
PoissonElement rand_lie(Rng& r, unsigned deg) {
  PoissonElement e = PoissonElement::generator(2, unsigned(r() % 2));
  for (unsigned i = 1; i < deg; ++i) {
    unsigned g = unsigned(r() % 2);
    PoissonElement n = pf::poisson_bracket(e, PoissonElement::generator(2, g));
    if (n.is_zero())
      n = pf::poisson_bracket(e, PoissonElement::generator(2, 1 - g));
    e = n;
  }
  return e;
}

PoissonElement rand_poisson(Rng& r, unsigned maxdeg) {
  PoissonElement sum(2);
  unsigned nmono = 1 + unsigned(r() % 3);
  for (unsigned t = 0; t < nmono; ++t) {
    unsigned budget = 1 + unsigned(r() % maxdeg);
    PoissonElement m = PoissonElement::constant(2, Rational(rint(r, -3, 3)));
    while (budget > 0) {
      unsigned d = 1 + unsigned(r() % std::min(budget, 3u));
      m *= rand_lie(r, d);
      budget -= d;
      if (r() % 2) break;
    }
    sum += m;
  }
  return sum;
}

RationalPolynomial rand_poly(Rng& r, const ContextPtr& ctx, unsigned maxdeg) {
  RationalPolynomial p(ctx);
  unsigned nterms = 1 + unsigned(r() % 5);
  for (unsigned t = 0; t < nterms; ++t) {
    pf::Exponents e(ctx->coord_count(), 0u);
    unsigned budget = unsigned(r() % (maxdeg + 1));
    while (budget-- > 0) e[r() % e.size()] += 1;
    p += RationalPolynomial::monomial(ctx, e, Rational(rint(r, -3, 3)));
  }
  return p;
}

MultiIndex rand_index(Rng& r, unsigned n, unsigned lo, unsigned hi) {
  std::vector<unsigned> e(n, 0u);
  unsigned total = lo + unsigned(r() % (hi - lo + 1));
  for (unsigned i = 0; i < total; ++i) e[r() % n] += 1;
  return MultiIndex(e);
}

// Random elementary move on k[x,y]: affine (invertible) or triangular with
// polynomial degree <= 3 and integer coefficients in -2..2.
pf::ElementaryMove rand_move(Rng& r) {
  ContextPtr plane = pf::plane_context();
  for (;;) {
    if (r() % 2) {
      pf::AffineMove a{Rational(rint(r, -2, 2)), Rational(rint(r, -2, 2)),
                       Rational(rint(r, -2, 2)), Rational(rint(r, -2, 2)),
                       Rational(rint(r, -2, 2)), Rational(rint(r, -2, 2))};
      if (!(a.a * a.d - a.b * a.c).is_zero()) return pf::ElementaryMove(a);
      continue;
    }
    unsigned var = unsigned(r() % 2);
    unsigned other = 1 - var;
    unsigned deg = 1 + unsigned(r() % 3);
    RationalPolynomial p(plane);
    for (unsigned k = 0; k <= deg; ++k) {
      pf::Exponents e(2, 0u);
      e[other] = k;
      p += RationalPolynomial::monomial(plane, e, Rational(rint(r, -2, 2)));
    }
    return pf::ElementaryMove(pf::TriangularMove{var, p});
  }
}

std::vector<pf::ElementaryMove> rand_tame(Rng& r, unsigned max_moves) {
  std::vector<pf::ElementaryMove> moves;
  unsigned k = unsigned(r() % (max_moves + 1));
  for (unsigned i = 0; i < k; ++i) moves.push_back(rand_move(r));
  return moves;
}

// ---- CLI runner --------------------------------------------------------

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& bin, const std::string& args,
            const std::string& env = "") {
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += "'" + bin + "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// ---- JSON schema subset validator (draft-07 keywords used by the shipped
// schema: type, const, enum, required, properties, additionalProperties,
// minimum, maximum, items) -----------------------------------------------

bool json_valid(const nlohmann::json& sch, const nlohmann::json& x,
                std::string& why, const std::string& path) {
  if (sch.contains("const") && x != sch["const"]) {
    why = path + ": const mismatch";
    return false;
  }
  if (sch.contains("enum")) {
    bool hit = false;
    for (const auto& v : sch["enum"])
      if (v == x) hit = true;
    if (!hit) {
      why = path + ": not in enum";
      return false;
    }
  }
  if (sch.contains("type")) {
    const std::string t = sch["type"].get<std::string>();
    bool ok = (t == "object" && x.is_object()) ||
              (t == "array" && x.is_array()) ||
              (t == "string" && x.is_string()) ||
              (t == "integer" && x.is_number_integer()) ||
              (t == "boolean" && x.is_boolean()) ||
              (t == "null" && x.is_null());
    if (!ok) {
      why = path + ": expected type " + t;
      return false;
    }
  }
  if (sch.contains("minimum") && x.is_number() &&
      x.get<double>() < sch["minimum"].get<double>()) {
    why = path + ": below minimum";
    return false;
  }
  if (sch.contains("maximum") && x.is_number() &&
      x.get<double>() > sch["maximum"].get<double>()) {
    why = path + ": above maximum";
    return false;
  }
  if (x.is_object()) {
    if (sch.contains("required"))
      for (const auto& name : sch["required"])
        if (!x.contains(name.get<std::string>())) {
          why = path + ": missing required member " + name.get<std::string>();
          return false;
        }
    const bool has_props = sch.contains("properties");
    if (has_props)
      for (const auto& [key, sub] : sch["properties"].items())
        if (x.contains(key) &&
            !json_valid(sub, x.at(key), why, path + "/" + key))
          return false;
    if (sch.contains("additionalProperties") &&
        sch["additionalProperties"].is_boolean() &&
        !sch["additionalProperties"].get<bool>())
      for (const auto& [key, val] : x.items())
        if (!has_props || !sch["properties"].contains(key)) {
          why = path + ": unexpected member " + key;
          return false;
        }
  }
  if (x.is_array() && sch.contains("items")) {
    std::size_t i = 0;
    for (const auto& el : x) {
      if (!json_valid(sch["items"], el, why,
                      path + "/" + std::to_string(i)))
        return false;
      ++i;
    }
  }
  return true;
}

// ---- the ten checks ----------------------------------------------------

// 1. Bracket axioms (antisymmetry, Jacobi, Leibniz) on random triples in
// k{x,y} (degree <= 5) and in the rank-2 symplectic algebra (degree <= 4).
Result check_axioms() {
  Rng r(101);
  for (unsigned i = 0; i < 200; ++i) {
    PoissonElement a = rand_poisson(r, 5), b = rand_poisson(r, 5),
                   c = rand_poisson(r, 5);
    PoissonElement ab = pf::poisson_bracket(a, b);
    RQ((ab + pf::poisson_bracket(b, a)).is_zero(),
       "free antisymmetry failed at triple " + std::to_string(i));
    PoissonElement jac = pf::poisson_bracket(a, pf::poisson_bracket(b, c)) +
                         pf::poisson_bracket(b, pf::poisson_bracket(c, a)) +
                         pf::poisson_bracket(c, ab);
    RQ(jac.is_zero(), "free Jacobi failed at triple " + std::to_string(i));
    PoissonElement leib =
        pf::poisson_bracket(a, b * c) - ab * c - b * pf::poisson_bracket(a, c);
    RQ(leib.is_zero(), "free Leibniz failed at triple " + std::to_string(i));
  }
  ContextPtr ps2 = pf::symplectic_context(2);
  for (unsigned i = 0; i < 200; ++i) {
    RationalPolynomial a = rand_poly(r, ps2, 4), b = rand_poly(r, ps2, 4),
                       c = rand_poly(r, ps2, 4);
    RationalPolynomial ab = pf::ps_bracket(a, b);
    RQ((ab + pf::ps_bracket(b, a)).is_zero(),
       "symplectic antisymmetry failed at triple " + std::to_string(i));
    RationalPolynomial jac = pf::ps_bracket(a, pf::ps_bracket(b, c)) +
                             pf::ps_bracket(b, pf::ps_bracket(c, a)) +
                             pf::ps_bracket(c, ab);
    RQ(jac.is_zero(),
       "symplectic Jacobi failed at triple " + std::to_string(i));
    RationalPolynomial leib =
        pf::ps_bracket(a, b * c) - ab * c - b * pf::ps_bracket(a, c);
    RQ(leib.is_zero(),
       "symplectic Leibniz failed at triple " + std::to_string(i));
  }
  return pass();
}

// 2. The standard customary element: an exact identity on rank 1, a
// non-identity on rank 2 with witness value exactly 1, matching the
// alternating substitution x1,y1,x2,y2.
Result check_standard_identity() {
  pf::CustomaryDecision d1 = pf::customary_identity_exact(pf::st4(), 1);
  RQ(d1.identity && !d1.witness, "rank-1 decision is not an exact identity");
  pf::CustomaryDecision d2 = pf::customary_identity_exact(pf::st4(), 2);
  RQ(!d2.identity, "rank-2 decision wrongly claims an identity");
  RQ(d2.witness.has_value(), "rank-2 decision carries no witness");
  const pf::NonIdentityWitness& w = *d2.witness;
  RQ(pf::eval_hom(w.assignment, pf::st4()) == w.image,
     "witness image does not match its own substitution");
  RQ(w.image == RationalPolynomial::constant(w.image.context(), Rational(1)),
     "witness value is not 1");
  pf::GeneratorAssignment alt = pf::structured_assignment(4, 2);
  RationalPolynomial v = pf::eval_hom(alt, pf::st4());
  RQ(v == RationalPolynomial::constant(v.context(), Rational(1)),
     "alternating substitution does not give 1");
  return pass();
}

// 3. The bracket-product monomial {z1,z2}...{z_{2n-1},z_{2n}} evaluates to
// exactly 1 under z_{2k-1} -> x_k, z_{2k} -> y_k, for n = 1, 2, 3.
Result check_unit_evaluation() {
  for (unsigned n = 1; n <= 3; ++n) {
    unsigned gens = 2 * n;
    PoissonElement m = PoissonElement::constant(gens, Rational(1));
    for (unsigned k = 0; k < n; ++k)
      m *= pf::poisson_bracket(PoissonElement::generator(gens, 2 * k),
                               PoissonElement::generator(gens, 2 * k + 1));
    pf::GeneratorAssignment phi = pf::structured_assignment(gens, n);
    RationalPolynomial v = pf::eval_hom(phi, m);
    RQ(v == RationalPolynomial::constant(v.context(), Rational(1)),
       "value at n = " + std::to_string(n) + " is not 1");
  }
  return pass();
}

// 4. Customary basis dimensions 1, 3, 15 for n = 1, 2, 3, equal to the
// independently enumerated perfect-matching counts.
Result check_customary_dimensions() {
  const std::size_t expected[] = {1, 3, 15};
  for (unsigned n = 1; n <= 3; ++n) {
    std::size_t lib = pf::customary_basis(n).size();
    std::size_t ora = pforacle::matchings_oracle(n).size();
    RQ(lib == expected[n - 1],
       "basis size at n = " + std::to_string(n) + " is " +
           std::to_string(lib));
    RQ(lib == ora, "basis size disagrees with matching count at n = " +
                       std::to_string(n));
  }
  return pass();
}

// 5. Classical series instances: exponential coefficients 1/k! through
// order 12, square-root coefficients through order 4, and a heat-like
// equation whose order-3 truncation is exactly x + y^2/2.
Result check_classical_series() {
  {
    ContextPtr ctx =
        pf::PolyContext::make({"x"}, {MultiIndex({0u}), MultiIndex({1u})});
    RationalPolynomial f =
        RationalPolynomial::variable(ctx, Variable::jet(MultiIndex({1u}))) -
        RationalPolynomial::variable(ctx, Variable::jet(MultiIndex({0u})));
    pf::SeriesSession s(pf::SeriesProblem::create(
        {"x"}, {MultiIndex({0u}), MultiIndex({1u})}, {Rational(0)},
        {Rational(1), Rational(1)}, f));
    long fact = 1;
    for (unsigned k = 0; k <= 12; ++k) {
      if (k > 0) fact *= long(k);
      RQ(s.coefficient(MultiIndex({k})) == Rational(1, fact),
         "exp coefficient at order " + std::to_string(k));
    }
  }
  {
    ContextPtr ctx = pf::PolyContext::make({"x"}, {MultiIndex({0u})});
    RationalPolynomial u =
        RationalPolynomial::variable(ctx, Variable::jet(MultiIndex({0u})));
    RationalPolynomial f =
        u * u - RationalPolynomial::variable(ctx, Variable::coordinate(0));
    pf::SeriesSession s(pf::SeriesProblem::create(
        {"x"}, {MultiIndex({0u})}, {Rational(1)}, {Rational(1)}, f));
    const Rational expected[] = {Rational(1), Rational(1, 2), Rational(-1, 8),
                                 Rational(1, 16), Rational(-5, 128)};
    for (unsigned k = 0; k <= 4; ++k)
      RQ(s.coefficient(MultiIndex({k})) == expected[k],
         "sqrt coefficient at order " + std::to_string(k));
  }
  {
    // u_x = u_yy with u(0, y) data y^2/2: the solution is exactly x + y^2/2.
    std::vector<MultiIndex> alphas = {MultiIndex({0u, 2u}),
                                      MultiIndex({1u, 0u})};
    ContextPtr ctx = pf::PolyContext::make({"x", "y"}, alphas);
    RationalPolynomial f =
        RationalPolynomial::variable(ctx, Variable::jet(MultiIndex({1u, 0u}))) -
        RationalPolynomial::variable(ctx, Variable::jet(MultiIndex({0u, 2u})));
    pf::SeriesSession s(pf::SeriesProblem::create(
        {"x", "y"}, alphas, {Rational(0), Rational(0)},
        {Rational(1), Rational(1)}, f));
    ContextPtr out = pf::PolyContext::make({"x", "y"});
    RationalPolynomial expect =
        RationalPolynomial::variable(out, Variable::coordinate(0)) +
        RationalPolynomial::variable(out, Variable::coordinate(1))
            .pow(2)
            .scaled(Rational(1, 2));
    RQ(s.truncate(3) == expect, "heat-like truncation is not x + y^2/2");
    RQ(s.residual_check(3), "heat-like residual check failed at order 3");
    RQ(s.residual_check(6), "heat-like residual check failed at order 6");
  }
  return pass();
}

// 6. 25 randomly generated well-posed series problems (1..2 coordinates,
// up to 3 jet indices, defining polynomial of degree <= 3, seed completed
// by solving for the top jet value) all pass residual_check(8).
Result check_random_series() {
  Rng r(20260819);
  for (unsigned made = 0; made < 25; ++made) {
    unsigned n = 1 + unsigned(r() % 2);
    std::vector<std::string> names =
        n == 1 ? std::vector<std::string>{"x"}
               : std::vector<std::string>{"x", "y"};
    MultiIndex top = rand_index(r, n, 1, 2);
    std::vector<MultiIndex> lowers;
    unsigned want = unsigned(r() % 3);
    for (unsigned t = 0; t < 8 && lowers.size() < want; ++t) {
      MultiIndex cand = rand_index(r, n, 0, 2);
      if (cand.lex_compare(top) != std::strong_ordering::less) continue;
      bool dup = false;
      for (const MultiIndex& l : lowers) dup = dup || l == cand;
      if (!dup) lowers.push_back(cand);
    }
    std::vector<MultiIndex> alphas = lowers;
    alphas.push_back(top);
    std::sort(alphas.begin(), alphas.end(), pf::MultiIndexLexLess{});

    ContextPtr ctx = pf::PolyContext::make(names, alphas);
    Rational ctop(rint(r, 0, 1) ? 1 : 2);
    if (rint(r, 0, 1)) ctop = -ctop;

    // Everything except the pivot term; linear in the lower jets so the
    // seed can be completed exactly.
    RationalPolynomial rest(ctx);
    for (const MultiIndex& l : lowers)
      rest += RationalPolynomial::variable(ctx, Variable::jet(l))
                  .scaled(Rational(rint(r, -2, 2)));
    unsigned extra = unsigned(r() % 3);
    for (unsigned t = 0; t < extra; ++t) {
      pf::Exponents e(ctx->var_count(), 0u);
      unsigned deg = 1 + unsigned(r() % 3);
      for (unsigned i = 0; i < deg; ++i) e[r() % n] += 1;
      rest += RationalPolynomial::monomial(ctx, e, Rational(rint(r, -2, 2)));
    }
    if (!lowers.empty() && r() % 2)
      rest += (RationalPolynomial::variable(
                   ctx, Variable::jet(lowers[r() % lowers.size()])) *
               RationalPolynomial::variable(ctx,
                                            Variable::coordinate(r() % n)))
                  .scaled(Rational(rint(r, -2, 2)));

    std::vector<Rational> point;
    std::map<Variable, Rational, pf::VariableLess> at;
    for (unsigned i = 0; i < n; ++i) {
      Rational v(rint(r, -2, 2), 1 + long(r() % 2));
      point.push_back(v);
      at[Variable::coordinate(i)] = v;
    }
    std::map<MultiIndex, Rational, pf::MultiIndexLexLess> lowvals;
    for (const MultiIndex& l : lowers) {
      Rational v(rint(r, -2, 2), 1 + long(r() % 2));
      lowvals.emplace(l, v);
      at[Variable::jet(l)] = v;
    }
    Rational vtop = -(rest.evaluate(at)) / ctop;
    std::vector<Rational> values;
    for (const MultiIndex& a : alphas)
      values.push_back(a == top ? vtop : lowvals.at(a));

    RationalPolynomial f =
        rest +
        RationalPolynomial::variable(ctx, Variable::jet(top)).scaled(ctop);
    pf::SeriesSession sess(
        pf::SeriesProblem::create(names, alphas, point, values, f));
    RQ(sess.residual_check(8),
       "residual check failed at instance " + std::to_string(made));
  }
  return pass();
}

// 7. The witness pipeline on two instances, with the independent cache-free
// re-verification pass.
Result check_witness_pipeline() {
  PoissonElement z1 = PoissonElement::generator(2, 0);
  PoissonElement z2 = PoissonElement::generator(2, 1);
  {
    PoissonElement f =
        pf::poisson_bracket(z1, z2) - PoissonElement::constant(2, Rational(1));
    pf::FreiheitssatzWitness w =
        pf::construct_witness(f, z1, 4, pf::FreiheitssatzBudget{}, 12345);
    RQ(w.rank == 1, "bracket instance: rank is not 1");
    RQ(w.residual_ok, "bracket instance: residual not certified");
    RQ(w.series.to_string() == "y1",
       "bracket instance: series is " + w.series.to_string());
    RQ(w.theta_g.to_string() == "x1",
       "bracket instance: image of g is " + w.theta_g.to_string());
    RQ(pf::verify_witness(f, z1, w),
       "bracket instance: independent re-verification failed");
  }
  {
    PoissonElement f = z2 * z2 - z1;
    pf::FreiheitssatzWitness w =
        pf::construct_witness(f, z1, 6, pf::FreiheitssatzBudget{}, 12345);
    RQ(w.rank == 1, "sqrt instance: rank is not 1");
    RQ(w.residual_ok, "sqrt instance: residual not certified");
    std::vector<Rational> c =
        w.series.univariate_coeffs(Variable::coordinate(0));
    RQ(c.size() == 7, "sqrt instance: series has " +
                          std::to_string(c.size()) + " coefficients");
    for (unsigned k = 0; k <= 6; ++k)
      RQ(c[k] == pforacle::sqrt_coefficient(k),
         "sqrt instance: coefficient mismatch at order " + std::to_string(k));
    RQ(pf::verify_witness(f, z1, w),
       "sqrt instance: independent re-verification failed");
  }
  return pass();
}

// 8. 50 random tame maps (up to 4 elementary moves) decompose, and the
// returned moves recompose exactly to the input; x -> x^2 is rejected.
Result check_jung() {
  Rng r(4242);
  for (unsigned i = 0; i < 50; ++i) {
    pf::PolyEndo e = pf::compose_moves(rand_tame(r, 4));
    pf::JungResult jr = pf::jung_decompose(e);
    RQ(jr.is_automorphism,
       "decomposition failed at instance " + std::to_string(i) + ": " +
           jr.reason);
    pf::PolyEndo back = pf::compose_moves(jr.moves);
    RQ(back.F == e.F && back.G == e.G,
       "recomposition differs at instance " + std::to_string(i));
  }
  ContextPtr plane = pf::plane_context();
  pf::PolyEndo bad{
      RationalPolynomial::variable(plane, Variable::coordinate(0)).pow(2),
      RationalPolynomial::variable(plane, Variable::coordinate(1))};
  pf::JungResult jr = pf::jung_decompose(bad);
  RQ(!jr.is_automorphism, "x -> x^2 was accepted as an automorphism");
  RQ(!jr.reason.empty(), "rejection carries no reason");
  return pass();
}

// 9. Lifts of 20 random tame maps: the bracket scaling is the constant
// Jacobian, and the bridge certifies the defects s = t = 0.
Result check_bridge() {
  Rng r(9999);
  for (unsigned i = 0; i < 20; ++i) {
    pf::PolyEndo e = pf::compose_moves(rand_tame(r, 3));
    pf::PoissonEndo pe = pf::lift(e);
    pf::BracketScaling bs = pf::bracket_scaling_test(pe);
    RQ(bs.kind == pf::BracketScaling::Kind::Scalar && !bs.degenerate,
       "scaling is not a nonzero scalar at instance " + std::to_string(i));
    RationalPolynomial jac = pf::jacobian(e);
    RQ(jac == RationalPolynomial::constant(jac.context(), bs.alpha),
       "scaling differs from the Jacobian at instance " + std::to_string(i));
    pf::Theorem4Report rep = pf::theorem4_bridge(pe);
    RQ(rep.alpha == bs.alpha && rep.jacobian_psi == bs.alpha,
       "bridge scalar mismatch at instance " + std::to_string(i));
    RQ(rep.jung.is_automorphism,
       "bridge decomposition failed at instance " + std::to_string(i));
    RQ(rep.s_t_zero && rep.s.is_zero() && rep.t.is_zero(),
       "defects do not vanish at instance " + std::to_string(i));
  }
  return pass();
}

// 10. CLI: parse/print fixed point on the expression corpus, byte-for-byte
// reproducibility of seeded runs, and JSON reports valid under the shipped
// schema.
Result check_cli() {
  const char* bin_env = std::getenv("PF_BIN");
  const char* src_env = std::getenv("PF_SRC_DIR");
  RQ(bin_env != nullptr, "PF_BIN is not set");
  RQ(src_env != nullptr, "PF_SRC_DIR is not set");
  std::string bin = bin_env, src = src_env;

  // Corpus round trip: printing is a fixed point of parse-then-print.
  std::ifstream in(src + "/tests/corpus/expressions.txt");
  RQ(in.good(), "cannot open the expression corpus");
  std::string line;
  unsigned checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto bar = line.find('|');
    RQ(bar != std::string::npos, "malformed corpus line: " + line);
    std::string target = line.substr(0, bar);
    std::string text = line.substr(bar + 1);
    if (target == "poisson2" || target == "poisson3" || target == "poisson4") {
      unsigned gens = unsigned(target.back() - '0');
      PoissonElement e = pf::to_poisson(pf::parse_expression(text), gens);
      std::string s1 = e.to_string();
      PoissonElement e2 = pf::to_poisson(pf::parse_expression(s1), gens);
      RQ(e == e2 && e2.to_string() == s1, "round trip drifted: " + line);
    } else if (target == "plane") {
      RationalPolynomial p = pf::to_plane_polynomial(pf::parse_expression(text));
      std::string s1 = p.to_string();
      RationalPolynomial p2 =
          pf::to_plane_polynomial(pf::parse_expression(s1));
      RQ(p == p2 && p2.to_string() == s1, "round trip drifted: " + line);
    } else if (target == "symplectic1" || target == "symplectic2") {
      unsigned rank = unsigned(target.back() - '0');
      RationalPolynomial p = pf::to_symplectic(pf::parse_expression(text), rank);
      std::string s1 = p.to_string();
      RationalPolynomial p2 =
          pf::to_symplectic(pf::parse_expression(s1), rank);
      RQ(p == p2 && p2.to_string() == s1, "round trip drifted: " + line);
    } else {
      RQ(false, "unknown corpus target: " + target);
    }
    ++checked;
  }
  RQ(checked >= 50,
     "corpus has only " + std::to_string(checked) + " expressions");

  // Seeded runs of the randomized subcommands are byte-for-byte stable.
  const std::string st4sq =
      "'({z1,z2}*{z3,z4} - {z1,z3}*{z2,z4} + {z1,z4}*{z2,z3})^2'";
  std::vector<std::string> seeded = {
      "--seed 271828 identity --gens 4 --rank 1 --trials 25 " + st4sq,
      "--json --seed 271828 identity --gens 4 --rank 1 --trials 25 " + st4sq,
      "--seed 31415 freiheit --order 5 'z2^2 - z1' z1",
      "--json --seed 31415 freiheit --order 4 '{z1,z2} - 1' z1",
  };
  for (const std::string& args : seeded) {
    Run a = run_cli(bin, args);
    Run b = run_cli(bin, args);
    RQ(a.code == b.code && a.out == b.out && !a.out.empty(),
       "seeded run not reproducible: " + args);
  }

  // Every JSON report validates against the shipped schema, and the
  // embedded exit code equals the process exit code.
  std::ifstream sf(src + "/schema/pf-report.schema.json");
  RQ(sf.good(), "cannot open the report schema");
  nlohmann::json schema = nlohmann::json::parse(sf);
  std::vector<std::pair<std::string, int>> json_runs = {
      {"--json eval --gens 2 'x*{x,y}'", 0},
      {"--json bracket --gens 2 x y", 0},
      {"--json identity St4", 0},
      {"--json identity --rank 2 St4", 1},
      {"--json series --vars x --alpha '(0)' --point 1 --values 1 "
       "--order 4 'u(0)^2 - x'",
       0},
      {"--json freiheit --order 4 '{z1,z2} - 1' z1", 0},
      {"--json freiheit 'z2^2 + z1^2' z1", 1},
      {"--json jung y 'x + y^3'", 0},
      {"--json jung 'x^2' y", 1},
      {"--json commtest 2x 'y/2 + x^3'", 0},
      {"--json commtest x 'x*y'", 1},
  };
  for (const auto& [args, expect_code] : json_runs) {
    Run run = run_cli(bin, args);
    RQ(run.code == expect_code,
       "exit code " + std::to_string(run.code) + " for: " + args);
    nlohmann::json j = nlohmann::json::parse(run.out, nullptr, false);
    RQ(!j.is_discarded(), "output is not JSON for: " + args);
    std::string why;
    RQ(json_valid(schema, j, why, "report"),
       "schema violation (" + why + ") for: " + args);
    RQ(j["exit_code"].get<int>() == run.code,
       "embedded exit code mismatch for: " + args);
  }
  return pass();
}

}  // namespace

int main() {
  struct Item {
    const char* name;
    Result (*fn)();
  };
  const Item items[] = {
      {"bracket axioms on random elements", check_axioms},
      {"standard customary identity on ranks 1 and 2", check_standard_identity},
      {"alternating substitution gives value 1", check_unit_evaluation},
      {"customary basis dimensions", check_customary_dimensions},
      {"classical series instances", check_classical_series},
      {"randomized series problems", check_random_series},
      {"witness pipeline with independent re-verification", check_witness_pipeline},
      {"tame decomposition round trips", check_jung},
      {"bracket scaling bridge", check_bridge},
      {"CLI corpus, seeded reproducibility, JSON schema", check_cli},
  };
  int failures = 0;
  int idx = 0;
  for (const Item& item : items) {
    ++idx;
    auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = item.fn();
    } catch (const std::exception& e) {
      res = Result{false, std::string("unexpected exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    std::string name = item.name;
    std::string dots(name.size() < 56 ? 56 - name.size() : 2, '.');
    std::printf("%2d. %s %s %s", idx, name.c_str(), dots.c_str(),
                res.ok ? "PASS" : "FAIL");
    if (secs >= 0.05) std::printf("  (%.1fs)", secs);
    std::printf("\n");
    if (!res.ok) {
      std::printf("    %s\n", res.detail.c_str());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
