#include "pf/automorphisms.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "pf/errors.hpp"
#include "pf/freelie.hpp"

namespace pf {

ContextPtr plane_context() {
  static const ContextPtr ctx =
      PolyContext::make(std::vector<std::string>{"x", "y"}, {});
  return ctx;
}

PolyEndo identity_endo() {
  auto ctx = plane_context();
  return PolyEndo{RationalPolynomial::variable(ctx, Variable::coordinate(0)),
                  RationalPolynomial::variable(ctx, Variable::coordinate(1))};
}

bool is_identity(const PolyEndo& e) {
  PolyEndo id = identity_endo();
  return e.F == id.F && e.G == id.G;
}

RationalPolynomial apply(const PolyEndo& e, const RationalPolynomial& p) {
  auto ctx = plane_context();
  std::map<Variable, RationalPolynomial, VariableLess> images;
  images[Variable::coordinate(0)] = e.F.in_context(ctx);
  images[Variable::coordinate(1)] = e.G.in_context(ctx);
  return p.in_context(ctx).substitute(images, ctx);
}

PolyEndo compose(const PolyEndo& phi, const PolyEndo& psi) {
  return PolyEndo{apply(psi, phi.F), apply(psi, phi.G)};
}

RationalPolynomial jacobian(const PolyEndo& e) {
  Variable x = Variable::coordinate(0);
  Variable y = Variable::coordinate(1);
  return e.F.partial_derivative(x) * e.G.partial_derivative(y) -
         e.F.partial_derivative(y) * e.G.partial_derivative(x);
}

ElementaryMove::ElementaryMove(AffineMove m) : v_(std::move(m)) {
  const auto& a = std::get<AffineMove>(v_);
  if (a.a * a.d - a.b * a.c == Rational(0))
    throw DomainError("affine move is singular");
}

ElementaryMove::ElementaryMove(TriangularMove m) : v_(std::move(m)) {
  const auto& t = std::get<TriangularMove>(v_);
  if (t.var > 1) throw DomainError("triangular move: var must be 0 or 1");
  RationalPolynomial p = t.p.in_context(plane_context());
  if (p.degree_in(Variable::coordinate(t.var)) > 0)
    throw DomainError(
        "triangular move: shift polynomial uses its own variable");
}

PolyEndo ElementaryMove::as_endo() const {
  auto ctx = plane_context();
  RationalPolynomial X =
      RationalPolynomial::variable(ctx, Variable::coordinate(0));
  RationalPolynomial Y =
      RationalPolynomial::variable(ctx, Variable::coordinate(1));
  if (is_affine()) {
    const AffineMove& m = affine();
    return PolyEndo{
        X.scaled(m.a) + Y.scaled(m.b) + RationalPolynomial::constant(ctx, m.e),
        X.scaled(m.c) + Y.scaled(m.d) +
            RationalPolynomial::constant(ctx, m.f)};
  }
  const TriangularMove& m = triangular();
  RationalPolynomial p = m.p.in_context(ctx);
  if (m.var == 0) return PolyEndo{X + p, Y};
  return PolyEndo{X, Y + p};
}

ElementaryMove ElementaryMove::inverse() const {
  if (is_affine()) {
    const AffineMove& m = affine();
    Rational det = m.a * m.d - m.b * m.c;
    // Inverse linear part, then the translation that undoes (e, f).
    Rational ia = m.d / det, ib = (-m.b) / det;
    Rational ic = (-m.c) / det, id = m.a / det;
    Rational ie = -(ia * m.e + ib * m.f);
    Rational if_ = -(ic * m.e + id * m.f);
    return ElementaryMove(AffineMove{ia, ib, ic, id, ie, if_});
  }
  const TriangularMove& m = triangular();
  return ElementaryMove(TriangularMove{m.var, -m.p});
}

bool ElementaryMove::is_identity_move() const { return is_identity(as_endo()); }

std::string ElementaryMove::to_string() const {
  std::ostringstream os;
  if (is_affine()) {
    const AffineMove& m = affine();
    os << "affine(x -> " << m.a.to_string() << "*x + " << m.b.to_string()
       << "*y + " << m.e.to_string() << ", y -> " << m.c.to_string() << "*x + "
       << m.d.to_string() << "*y + " << m.f.to_string() << ")";
  } else {
    const TriangularMove& m = triangular();
    os << "triangular(" << (m.var == 0 ? "x -> x + " : "y -> y + ")
       << m.p.to_string() << ")";
  }
  return os.str();
}

PolyEndo compose_moves(const std::vector<ElementaryMove>& moves) {
  PolyEndo acc = identity_endo();
  for (const ElementaryMove& m : moves) acc = compose(acc, m.as_endo());
  return acc;
}

std::vector<ElementaryMove> invert_moves(
    const std::vector<ElementaryMove>& moves) {
  std::vector<ElementaryMove> out;
  out.reserve(moves.size());
  for (auto it = moves.rbegin(); it != moves.rend(); ++it)
    out.push_back(it->inverse());
  return out;
}

PoissonEndo lift(const PolyEndo& e) {
  auto ctx = plane_context();
  return PoissonEndo{polynomial_to_poisson(e.F.in_context(ctx)),
                     polynomial_to_poisson(e.G.in_context(ctx))};
}

namespace {

// Substitute images for the two generators of k{x,y}. Every word expands
// recursively through its standard factorization, so only the images of the
// one-letter words are needed; bracket images are cached per call.
class PoissonSubst {
 public:
  PoissonSubst(const PoissonElement& fx, const PoissonElement& fy)
      : fx_(fx), fy_(fy) {}

  PoissonElement word_image(const Word& w) {
    if (w.size() == 1) return w[0] == 0 ? fx_ : fy_;
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    auto [u, v] = standard_factorization(w);
    PoissonElement img = poisson_bracket(word_image(u), word_image(v));
    cache_.emplace(w, img);
    return img;
  }

  PoissonElement element_image(const PoissonElement& a) {
    PoissonElement out(2);
    for (const auto& [mono, coeff] : a.terms()) {
      PoissonElement prod = PoissonElement::constant(2, coeff);
      for (const auto& [w, mult] : mono.factors()) {
        PoissonElement wi = word_image(w);
        for (unsigned k = 0; k < mult; ++k) prod = prod * wi;
      }
      out = out + prod;
    }
    return out;
  }

 private:
  PoissonElement fx_, fy_;
  std::map<Word, PoissonElement> cache_;
};

}  // namespace

PoissonElement apply(const PoissonEndo& e, const PoissonElement& a) {
  if (a.generators() != 2)
    throw ContextMismatch("poisson endomorphism expects two generators");
  PoissonSubst subst(e.F, e.G);
  return subst.element_image(a);
}

PoissonEndo compose(const PoissonEndo& phi, const PoissonEndo& psi) {
  return PoissonEndo{apply(psi, phi.F), apply(psi, phi.G)};
}

BracketScaling bracket_scaling_test(const PoissonEndo& e) {
  BracketScaling out;
  PoissonElement br = poisson_bracket(e.F, e.G);
  if (br.is_zero()) {
    out.kind = BracketScaling::Kind::Scalar;
    out.alpha = Rational(0);
    out.degenerate = true;
    return out;
  }

  // e3 = {x,y} is the word "xy" (letters 0,1). A multiple t*e3 with
  // commutative t is a sum of monomials carrying the factor "xy" exactly
  // once and otherwise only single letters.
  Word e3;
  e3.push_back(char(0));
  e3.push_back(char(1));

  PoissonElement offending(2);
  auto ctx = plane_context();
  RationalPolynomial t(ctx);
  for (const auto& [mono, coeff] : br.terms()) {
    bool words_ok = true;
    unsigned e3_mult = 0;
    Exponents letters(2, 0);
    for (const auto& [w, mult] : mono.factors()) {
      if (w == e3) {
        e3_mult += mult;
      } else if (w.size() == 1) {
        letters[size_t(w[0])] += mult;
      } else {
        words_ok = false;
        break;
      }
    }
    if (words_ok && e3_mult == 1) {
      t += RationalPolynomial::monomial(ctx, letters, coeff);
    } else {
      offending.add_term(mono, coeff);
    }
  }

  if (!offending.is_zero()) {
    out.kind = BracketScaling::Kind::NotAMultiple;
    out.offending = offending;
    return out;
  }
  if (t.is_constant()) {
    out.kind = BracketScaling::Kind::Scalar;
    out.alpha = t.constant_value();
    return out;
  }
  out.kind = BracketScaling::Kind::PolynomialMultiple;
  out.t = t;
  return out;
}

SplitProjection split_and_project(const PoissonEndo& e) {
  SplitProjection out;
  auto [f1, f_rest] = split_commutative_part(e.F);
  auto [g1, g_rest] = split_commutative_part(e.G);
  (void)f_rest;
  (void)g_rest;
  auto ctx = plane_context();
  out.psi = PolyEndo{commutative_to_polynomial(f1, ctx),
                     commutative_to_polynomial(g1, ctx)};
  out.h = poisson_bracket(e.F, e.G) - poisson_bracket(f1, g1);

  // Every monomial of h must contain at least two bracket factors (counted
  // with multiplicity) or a word of length >= 3.
  for (const auto& [mono, coeff] : out.h.terms()) {
    (void)coeff;
    unsigned bracket_factors = 0;
    bool long_word = false;
    for (const auto& [w, mult] : mono.factors()) {
      if (w.size() >= 3) long_word = true;
      if (w.size() >= 2) bracket_factors += mult;
    }
    if (!long_word && bracket_factors < 2)
      throw Error(
          "split_and_project: remainder violates the support condition");
  }
  return out;
}

namespace {

// Is q == c * p^d for some scalar c? Returns (true, c) if so.
std::pair<bool, Rational> proportional_to_power(const RationalPolynomial& q,
                                                const RationalPolynomial& p,
                                                unsigned d) {
  RationalPolynomial pd = p.pow(d);
  if (pd.is_zero()) return {q.is_zero(), Rational(0)};
  if (q.is_zero()) return {false, Rational(0)};
  Rational c = q.terms().rbegin()->second / pd.terms().rbegin()->second;
  if (q == pd.scaled(c)) return {true, c};
  return {false, Rational(0)};
}

}  // namespace

JungResult jung_decompose(const PolyEndo& e) {
  JungResult res;
  auto ctx = plane_context();
  PolyEndo target{e.F.in_context(ctx), e.G.in_context(ctx)};
  PolyEndo work = target;

  // Peeling: with compose as the (associative) product, each step replaces
  // work by compose(p, work), so after t steps
  //   compose(p_t, ... compose(p_1, target) ...) = identity,
  // hence target = compose(p_1^{-1}, compose(..., p_t^{-1})). compose_moves
  // folds its list the same way, so the certified decomposition is the peel
  // moves inverted one by one in their original order.
  std::vector<ElementaryMove> peel;

  const unsigned kMaxSteps = 4096;
  for (unsigned step = 0;; ++step) {
    if (step >= kMaxSteps) {
      res.reason = "peeling exceeded the step limit";
      res.stalled = work;
      return res;
    }
    int dF = work.F.total_degree();
    int dG = work.G.total_degree();
    if (dF <= 0 || dG <= 0) {
      res.reason = "an image is constant; not an automorphism";
      res.stalled = work;
      return res;
    }
    if (dF == 1 && dG == 1) {
      // Affine stage: J must be a nonzero scalar; its inverse move finishes.
      RationalPolynomial J = jacobian(work);
      if (!J.is_constant() || J.is_zero()) {
        res.reason = "affine stage has non-constant or zero Jacobian";
        res.stalled = work;
        return res;
      }
      Exponents ex{1, 0}, ey{0, 1}, e0{0, 0};
      AffineMove m{work.F.coefficient(ex), work.F.coefficient(ey),
                   work.G.coefficient(ex), work.G.coefficient(ey),
                   work.F.coefficient(e0), work.G.coefficient(e0)};
      ElementaryMove affine{m};
      if (!affine.is_identity_move()) {
        ElementaryMove inv = affine.inverse();
        peel.push_back(inv);
        work = compose(inv.as_endo(), work);
      }
      if (!is_identity(work)) {
        res.reason = "affine stage failed to reduce to the identity";
        res.stalled = work;
        return res;
      }
      break;
    }

    // Nonlinear stage: the lower image's leading form, raised to the degree
    // ratio, must match the higher image's leading form up to a scalar.
    bool f_low = dF <= dG;
    int dl = f_low ? dF : dG;
    int dh = f_low ? dG : dF;
    if (dh % dl != 0) {
      res.reason = "degrees do not divide; not a tame automorphism";
      res.stalled = work;
      return res;
    }
    unsigned d = unsigned(dh / dl);
    RationalPolynomial low_top = (f_low ? work.F : work.G).top_form();
    RationalPolynomial high_top = (f_low ? work.G : work.F).top_form();
    auto [prop, c] = proportional_to_power(high_top, low_top, d);
    if (!prop) {
      res.reason =
          "leading forms are not proportional; not a tame automorphism";
      res.stalled = work;
      return res;
    }

    // The triangular move v -> v - c u^d (u the low variable) composed onto
    // work replaces the higher image by itself minus c * (lower image)^d,
    // cancelling its leading form.
    Variable low_var = Variable::coordinate(f_low ? 0 : 1);
    RationalPolynomial xp = RationalPolynomial::variable(ctx, low_var);
    TriangularMove tm{f_low ? 1u : 0u, xp.pow(d).scaled(-c)};
    ElementaryMove tau{tm};
    PolyEndo next = compose(tau.as_endo(), work);
    int ndh = (f_low ? next.G : next.F).total_degree();
    if (ndh >= dh) {
      res.reason = "peeling step failed to decrease the degree";
      res.stalled = work;
      return res;
    }
    peel.push_back(tau);
    work = next;
  }

  res.moves.reserve(peel.size());
  for (const ElementaryMove& p : peel) res.moves.push_back(p.inverse());
  PolyEndo check = compose_moves(res.moves);
  if (!(check.F == target.F && check.G == target.G))
    throw Error("jung_decompose: certified recomposition mismatch");
  res.is_automorphism = true;
  res.reason = "decomposed";
  return res;
}

Theorem4Report theorem4_bridge(const PoissonEndo& e) {
  Theorem4Report rep;
  BracketScaling sc = bracket_scaling_test(e);
  if (sc.kind != BracketScaling::Kind::Scalar || sc.degenerate ||
      sc.alpha == Rational(0))
    throw HypothesisViolation(
        "theorem4_bridge: {F,G} must be a nonzero scalar multiple of {x,y}");
  rep.alpha = sc.alpha;

  SplitProjection sp = split_and_project(e);
  RationalPolynomial J = jacobian(sp.psi);
  if (!J.is_constant())
    throw Error("theorem4_bridge: projected Jacobian is not constant");
  rep.jacobian_psi = J.constant_value();
  if (rep.jacobian_psi != rep.alpha)
    throw Error("theorem4_bridge: projected Jacobian differs from alpha");

  rep.jung = jung_decompose(sp.psi);
  if (!rep.jung.is_automorphism)
    throw Error("theorem4_bridge: projected map is not a tame automorphism: " +
                rep.jung.reason);

  PolyEndo psi_inv = compose_moves(invert_moves(rep.jung.moves));
  PoissonEndo psi_inv_lift = lift(psi_inv);
  PoissonElement X = PoissonElement::generator(2, 0);
  PoissonElement Y = PoissonElement::generator(2, 1);
  rep.s = apply(psi_inv_lift, e.F) - X;
  rep.t = apply(psi_inv_lift, e.G) - Y;

  auto [s_comm, s_rest] = split_commutative_part(rep.s);
  auto [t_comm, t_rest] = split_commutative_part(rep.t);
  (void)s_rest;
  (void)t_rest;
  if (!s_comm.is_zero() || !t_comm.is_zero())
    throw Error("theorem4_bridge: defect has a commutative part");
  rep.s_t_zero = rep.s.is_zero() && rep.t.is_zero();
  return rep;
}

}  // namespace pf
