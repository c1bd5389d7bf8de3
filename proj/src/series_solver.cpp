#include "pf/series_solver.hpp"

#include <algorithm>

#include "pf/errors.hpp"

namespace pf {

namespace {

std::map<Variable, Rational, VariableLess> seed_assignment(
    const SeriesProblem& p) {
  std::map<Variable, Rational, VariableLess> a;
  for (std::size_t i = 0; i < p.point.size(); ++i)
    a.emplace(Variable::coordinate(i), p.point[i]);
  for (std::size_t i = 0; i < p.alphas.size(); ++i)
    a.emplace(Variable::jet(p.alphas[i]), p.values[i]);
  return a;
}

}  // namespace

SeriesProblem SeriesProblem::create(std::vector<std::string> coord_names,
                                    std::vector<MultiIndex> alphas,
                                    std::vector<Rational> point,
                                    std::vector<Rational> values,
                                    const RationalPolynomial& f) {
  std::size_t n = coord_names.size();
  if (n == 0) throw HypothesisViolation("series: no coordinates");
  if (alphas.empty()) throw HypothesisViolation("series: no jet indices");
  for (const auto& a : alphas)
    if (a.arity() != n)
      throw ArityMismatch("series: jet index arity differs from coordinates");
  for (std::size_t i = 0; i + 1 < alphas.size(); ++i)
    if (!(alphas[i].lex_compare(alphas[i + 1]) == std::strong_ordering::less))
      throw HypothesisViolation(
          "series: jet indices must be strictly increasing in lex order");
  if (point.size() != n)
    throw ArityMismatch("series: seed point arity differs from coordinates");
  if (values.size() != alphas.size())
    throw ArityMismatch("series: one value per jet index required");

  SeriesProblem p;
  p.jet_ctx = PolyContext::make(coord_names, alphas);
  p.alphas = std::move(alphas);
  p.point = std::move(point);
  p.values = std::move(values);
  p.f = f.in_context(p.jet_ctx);

  const MultiIndex& top = p.alphas.back();
  if (p.f.degree_in(Variable::jet(top)) == 0)
    throw HypothesisViolation("series: f does not involve the top jet t^" +
                              top.to_string());
  auto seed = seed_assignment(p);
  if (!p.f.evaluate(seed).is_zero())
    throw HypothesisViolation("series: f does not vanish at the seed");
  Rational lead =
      p.f.partial_derivative(Variable::jet(top)).evaluate(seed);
  if (lead.is_zero())
    throw HypothesisViolation(
        "series: df/dt^" + top.to_string() + " vanishes at the seed");
  return p;
}

SeriesSession::SeriesSession(SeriesProblem problem, SeriesBudget budget)
    : prob_(std::move(problem)), budget_(budget) {
  const MultiIndex& top = prob_.alphas.back();
  lead_ = prob_.f.partial_derivative(Variable::jet(top))
              .evaluate(seed_assignment(prob_));
  if (lead_.is_zero())
    throw HypothesisViolation("series: degenerate problem (zero pivot)");
}

const RationalPolynomial& SeriesSession::derivative(const MultiIndex& beta) {
  auto it = derivs_.find(beta);
  if (it != derivs_.end()) return it->second;
  RationalPolynomial result(prob_.jet_ctx);
  if (beta.is_zero()) {
    result = prob_.f;
  } else {
    // Differentiate along the largest nonzero axis; mixed partials commute.
    std::size_t j = beta.arity();
    while (j-- > 0)
      if (beta[j] > 0) break;
    MultiIndex parent =
        *beta.sub_checked(MultiIndex::unit(beta.arity(), j));
    result = derivative(parent).total_derivative(j);
  }
  cached_monomials_ += result.terms().size();
  if (cached_monomials_ > budget_.max_monomials)
    throw BudgetExceeded("series: derivative cache monomial budget exceeded");
  return derivs_.emplace(beta, std::move(result)).first->second;
}

Rational SeriesSession::jet_value(const MultiIndex& delta) {
  return Rational(delta.factorial()) * coefficient(delta);
}

const Rational& SeriesSession::coefficient(const MultiIndex& delta) {
  std::size_t n = prob_.point.size();
  if (delta.arity() != n)
    throw ArityMismatch("series: coefficient index arity mismatch");
  auto hit = memo_.find(delta);
  if (hit != memo_.end()) return hit->second;
  if (memo_.size() >= budget_.max_coefficients)
    throw BudgetExceeded("series: coefficient budget exceeded");
  if (++depth_ > budget_.max_depth) {
    --depth_;
    throw BudgetExceeded("series: recursion depth exceeded");
  }

  Rational a(0);
  const MultiIndex& top = prob_.alphas.back();
  auto pos = std::find(prob_.alphas.begin(), prob_.alphas.end(), delta);
  if (pos != prob_.alphas.end()) {
    // Prescribed derivative value.
    std::size_t i = (std::size_t)(pos - prob_.alphas.begin());
    a = prob_.values[i] / Rational(delta.factorial());
  } else if (delta.lex_compare(top) == std::strong_ordering::less) {
    a = Rational(0);  // initial stratum: everything below alpha_m is data
  } else if (auto beta = delta.sub_checked(top)) {
    // One linear equation: the top jet of d^beta f is u_delta, and its
    // polynomial coefficient evaluates to the pivot at every index.
    const RationalPolynomial& P = derivative(*beta);
    Variable u_delta = Variable::jet(delta);
    if (!P.context()->position(u_delta) || P.degree_in(u_delta) != 1)
      throw Error("series: top jet missing or nonlinear in d^" +
                  beta->to_string() + " f (solver invariant violated)");
    RationalPolynomial L = P.coefficient_in(u_delta, 1);
    RationalPolynomial R = P.coefficient_in(u_delta, 0);
    auto eval_at_jets = [&](const RationalPolynomial& q) {
      std::map<Variable, Rational, VariableLess> point;
      for (std::size_t posn : q.support_positions()) {
        Variable v = q.context()->var(posn);
        if (v.kind() == VarKind::Coordinate) {
          point.emplace(v, prob_.point[v.coord_index()]);
        } else {
          const MultiIndex& gamma = v.jet_index();
          if (!(gamma.lex_compare(delta) == std::strong_ordering::less))
            throw Error("series: jet " + gamma.to_string() +
                        " not below the solved index (invariant violated)");
          point.emplace(v, jet_value(gamma));
        }
      }
      return q.evaluate(point);
    };
    Rational Lc = eval_at_jets(L);
    if (!(Lc == lead_))
      throw Error(
          "series: pivot drifted from df/dt^alpha_m at the seed "
          "(solver invariant violated)");
    Rational Rc = eval_at_jets(R);
    Rational v = -Rc / Lc;
    a = v / Rational(delta.factorial());
  } else {
    a = Rational(0);  // unreachable index: completed by zero
  }
  --depth_;
  return memo_.emplace(delta, std::move(a)).first->second;
}

RationalPolynomial SeriesSession::truncate(unsigned order) {
  ContextPtr out_ctx = PolyContext::make(prob_.jet_ctx->coord_names());
  RationalPolynomial T(out_ctx);
  for (const MultiIndex& d :
       multi_indices_up_to(prob_.point.size(), order)) {
    const Rational& c = coefficient(d);
    if (!c.is_zero())
      T += RationalPolynomial::monomial(out_ctx, d.entries(), c);
  }
  return T;
}

bool SeriesSession::residual_check(unsigned order) {
  unsigned max_alpha = 0;
  for (const auto& a : prob_.alphas)
    max_alpha = std::max(max_alpha, a.total_degree());
  if (order < max_alpha)
    throw HypothesisViolation(
        "residual_check: order must be at least the largest |alpha|");
  RationalPolynomial T = truncate(order);
  const ContextPtr& wctx = T.context();
  std::map<Variable, RationalPolynomial, VariableLess> images;
  for (std::size_t i = 0; i < prob_.point.size(); ++i) {
    // x_i = w_i + c_i: the truncation lives in coordinates shifted by C.
    RationalPolynomial img =
        RationalPolynomial::variable(wctx, Variable::coordinate(i)) +
        RationalPolynomial::constant(wctx, prob_.point[i]);
    images.emplace(Variable::coordinate(i), std::move(img));
  }
  for (const auto& alpha : prob_.alphas) {
    RationalPolynomial d = T;
    for (std::size_t j = 0; j < alpha.arity(); ++j)
      for (unsigned k = 0; k < alpha[j]; ++k)
        d = d.partial_derivative(Variable::coordinate(j));
    images.emplace(Variable::jet(alpha), std::move(d));
  }
  RationalPolynomial residual = prob_.f.substitute(images, wctx);
  unsigned threshold = order - max_alpha;
  for (const auto& [e, c] : residual.terms()) {
    (void)c;
    unsigned deg = 0;
    for (unsigned x : e) deg += x;
    if (deg <= threshold) return false;
  }
  return true;
}

}  // namespace pf
