#include "pf/polyring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pf/errors.hpp"

namespace pf {

std::size_t Variable::coord_index() const {
  if (kind_ != VarKind::Coordinate)
    throw DomainError("Variable: not a coordinate");
  return index_;
}

const MultiIndex& Variable::jet_index() const {
  if (kind_ != VarKind::Jet) throw DomainError("Variable: not a jet symbol");
  return *jet_;
}

std::strong_ordering Variable::compare(const Variable& o) const {
  if (kind_ != o.kind_)
    return kind_ == VarKind::Coordinate ? std::strong_ordering::less
                                        : std::strong_ordering::greater;
  if (kind_ == VarKind::Coordinate) {
    if (index_ != o.index_)
      return index_ < o.index_ ? std::strong_ordering::less
                               : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  return jet_->lex_compare(*o.jet_);
}

ContextPtr PolyContext::make(std::vector<std::string> coord_names,
                             std::vector<MultiIndex> jets) {
  if (!jets.empty()) {
    std::size_t ar = jets.front().arity();
    for (const auto& j : jets)
      if (j.arity() != ar)
        throw ArityMismatch("PolyContext: jet symbols of mixed arity");
    std::sort(jets.begin(), jets.end(), MultiIndexLexLess{});
    jets.erase(std::unique(jets.begin(), jets.end()), jets.end());
  }
  return ContextPtr(
      new PolyContext(std::move(coord_names), std::move(jets)));
}

std::size_t PolyContext::jet_arity() const {
  if (jets_.empty()) throw DomainError("PolyContext: no jet symbols");
  return jets_.front().arity();
}

Variable PolyContext::var(std::size_t pos) const {
  if (pos < coord_names_.size()) return Variable::coordinate(pos);
  pos -= coord_names_.size();
  if (pos < jets_.size()) return Variable::jet(jets_[pos]);
  throw DomainError("PolyContext: variable position out of range");
}

std::optional<std::size_t> PolyContext::position(const Variable& v) const {
  if (v.kind() == VarKind::Coordinate) {
    if (v.coord_index() < coord_names_.size()) return v.coord_index();
    return std::nullopt;
  }
  if (jets_.empty() || jets_.front().arity() != v.jet_index().arity())
    return std::nullopt;
  auto it = std::lower_bound(jets_.begin(), jets_.end(), v.jet_index(),
                             MultiIndexLexLess{});
  if (it != jets_.end() && *it == v.jet_index())
    return coord_names_.size() + (std::size_t)(it - jets_.begin());
  return std::nullopt;
}

std::string PolyContext::var_name(std::size_t pos) const {
  if (pos < coord_names_.size()) return coord_names_[pos];
  const MultiIndex& a = jets_[pos - coord_names_.size()];
  std::string s = a.to_string();  // "(i1,...)"
  return "u" + s;
}

ContextPtr PolyContext::with_jets(const std::vector<MultiIndex>& extra) const {
  if (extra.empty())
    return ContextPtr(new PolyContext(coord_names_, jets_));
  std::vector<MultiIndex> merged = jets_;
  bool added = false;
  for (const auto& a : extra) {
    if (!jets_.empty() && a.arity() != jets_.front().arity())
      throw ArityMismatch("with_jets: jet arity mismatch");
    auto it = std::lower_bound(merged.begin(), merged.end(), a,
                               MultiIndexLexLess{});
    if (it == merged.end() || !(*it == a)) {
      merged.insert(it, a);
      added = true;
    }
  }
  if (!added) return ContextPtr(new PolyContext(coord_names_, jets_));
  return ContextPtr(new PolyContext(coord_names_, std::move(merged)));
}

bool ExponentsGradedLess::operator()(const Exponents& a,
                                     const Exponents& b) const {
  unsigned da = 0, db = 0;
  for (unsigned x : a) da += x;
  for (unsigned x : b) db += x;
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {
void require_same_ctx(const RationalPolynomial& a, const RationalPolynomial& b,
                      const char* op) {
  if (a.context() == b.context()) return;
  if (a.context()->same_as(*b.context())) return;
  throw ContextMismatch(std::string(op) + ": operands in different contexts");
}
}  // namespace

RationalPolynomial::RationalPolynomial() {
  static const ContextPtr empty = PolyContext::make({}, {});
  ctx_ = empty;
}

RationalPolynomial::RationalPolynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw DomainError("RationalPolynomial: null context");
}

RationalPolynomial RationalPolynomial::constant(ContextPtr ctx,
                                                const Rational& c) {
  RationalPolynomial p(std::move(ctx));
  if (!c.is_zero()) p.terms_[Exponents(p.ctx_->var_count(), 0u)] = c;
  return p;
}

RationalPolynomial RationalPolynomial::variable(ContextPtr ctx,
                                                const Variable& v) {
  RationalPolynomial p(std::move(ctx));
  auto pos = p.ctx_->position(v);
  if (!pos) throw DomainError("variable: not in context");
  Exponents e(p.ctx_->var_count(), 0u);
  e[*pos] = 1u;
  p.terms_[std::move(e)] = Rational(1);
  return p;
}

RationalPolynomial RationalPolynomial::monomial(ContextPtr ctx, Exponents e,
                                                const Rational& c) {
  RationalPolynomial p(std::move(ctx));
  if (e.size() != p.ctx_->var_count())
    throw DomainError("monomial: exponent vector has wrong length");
  if (!c.is_zero()) p.terms_[std::move(e)] = c;
  return p;
}

bool RationalPolynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exponents& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

Rational RationalPolynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant())
    throw DomainError("constant_value: polynomial is not constant");
  return terms_.begin()->second;
}

Rational RationalPolynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int RationalPolynomial::total_degree() const {
  if (terms_.empty()) return -1;
  // Map is graded: the last term has maximal total degree.
  const Exponents& e = terms_.rbegin()->first;
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return (int)d;
}

unsigned RationalPolynomial::degree_in(const Variable& v) const {
  auto pos = ctx_->position(v);
  if (!pos) throw DomainError("degree_in: variable not in context");
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[*pos]);
  return d;
}

RationalPolynomial RationalPolynomial::top_form() const {
  RationalPolynomial r(ctx_);
  int d = total_degree();
  if (d < 0) return r;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (unsigned x : e) s += x;
    if ((int)s == d) r.terms_[e] = c;
  }
  return r;
}

std::vector<std::size_t> RationalPolynomial::support_positions() const {
  std::vector<bool> seen(ctx_->var_count(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) seen[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

void RationalPolynomial::insert_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

RationalPolynomial RationalPolynomial::operator-() const {
  RationalPolynomial r(ctx_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

RationalPolynomial& RationalPolynomial::operator+=(
    const RationalPolynomial& o) {
  require_same_ctx(*this, o, "add");
  for (const auto& [e, c] : o.terms_) insert_term(e, c);
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(
    const RationalPolynomial& o) {
  require_same_ctx(*this, o, "sub");
  for (const auto& [e, c] : o.terms_) insert_term(e, -c);
  return *this;
}

RationalPolynomial operator*(const RationalPolynomial& a,
                             const RationalPolynomial& b) {
  require_same_ctx(a, b, "mul");
  RationalPolynomial r(a.ctx_);
  Exponents e(a.ctx_->var_count(), 0u);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.insert_term(e, ca * cb);
    }
  }
  return r;
}

RationalPolynomial RationalPolynomial::scaled(const Rational& c) const {
  RationalPolynomial r(ctx_);
  if (c.is_zero()) return r;
  for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
  return r;
}

RationalPolynomial RationalPolynomial::pow(unsigned k) const {
  RationalPolynomial r = constant(ctx_, Rational(1));
  RationalPolynomial base = *this;
  while (k) {
    if (k & 1u) r *= base;
    if (k >>= 1u) base *= base;
  }
  return r;
}

bool RationalPolynomial::operator==(const RationalPolynomial& o) const {
  require_same_ctx(*this, o, "eq");
  return terms_ == o.terms_;
}

RationalPolynomial RationalPolynomial::partial_derivative(
    const Variable& v) const {
  auto pos = ctx_->position(v);
  if (!pos) throw DomainError("partial_derivative: variable not in context");
  RationalPolynomial r(ctx_);
  for (const auto& [e, c] : terms_) {
    if (e[*pos] == 0) continue;
    Exponents e2 = e;
    unsigned k = e2[*pos]--;
    r.insert_term(e2, c * Rational((long)k));
  }
  return r;
}

RationalPolynomial RationalPolynomial::total_derivative(
    std::size_t coord) const {
  if (coord >= ctx_->coord_count())
    throw DomainError("total_derivative: coordinate out of range");
  if (ctx_->jet_count() > 0 && ctx_->jet_arity() != ctx_->coord_count())
    throw ArityMismatch(
        "total_derivative: jet arity does not match coordinate count");
  // Jets whose partial is nonzero produce successors alpha + e_coord.
  std::vector<MultiIndex> fresh;
  std::vector<std::pair<MultiIndex, RationalPolynomial>> chain;
  for (std::size_t k = 0; k < ctx_->jet_count(); ++k) {
    const MultiIndex& alpha = ctx_->jet_at(k);
    RationalPolynomial d = partial_derivative(Variable::jet(alpha));
    if (d.is_zero()) continue;
    MultiIndex succ = alpha + MultiIndex::unit(alpha.arity(), coord);
    fresh.push_back(succ);
    chain.emplace_back(std::move(succ), std::move(d));
  }
  ContextPtr ctx2 = fresh.empty() ? ctx_ : ctx_->with_jets(fresh);
  RationalPolynomial r =
      partial_derivative(Variable::coordinate(coord)).in_context(ctx2);
  for (auto& [succ, d] : chain)
    r += d.in_context(ctx2) *
         RationalPolynomial::variable(ctx2, Variable::jet(succ));
  return r;
}

Rational RationalPolynomial::evaluate(
    const std::map<Variable, Rational, VariableLess>& a) const {
  std::vector<std::optional<Rational>> vals(ctx_->var_count());
  Rational total(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!vals[i]) {
        auto it = a.find(ctx_->var(i));
        if (it == a.end())
          throw DomainError("evaluate: missing assignment for " +
                            ctx_->var_name(i));
        vals[i] = it->second;
      }
      t *= vals[i]->pow(e[i]);
    }
    total += t;
  }
  return total;
}

RationalPolynomial RationalPolynomial::substitute(
    const std::map<Variable, RationalPolynomial, VariableLess>& images,
    const ContextPtr& result_ctx) const {
  for (const auto& [v, img] : images) {
    if (!(img.context() == result_ctx) && !img.context()->same_as(*result_ctx))
      throw ContextMismatch("substitute: image not in result context");
  }
  // Per-position image (if mapped) and target position (if passed through).
  std::size_t n = ctx_->var_count();
  std::vector<const RationalPolynomial*> image_of(n, nullptr);
  std::vector<std::optional<std::size_t>> passthrough(n);
  std::vector<std::vector<RationalPolynomial>> powers(n);
  RationalPolynomial out(result_ctx);
  for (const auto& [e, c] : terms_) {
    RationalPolynomial acc = constant(result_ctx, c);
    Exponents plain(result_ctx->var_count(), 0u);
    bool any_plain = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Variable v = ctx_->var(i);
      if (!image_of[i] && !passthrough[i]) {
        auto it = images.find(v);
        if (it != images.end()) {
          image_of[i] = &it->second;
          powers[i].push_back(constant(result_ctx, Rational(1)));
        } else {
          auto pos2 = result_ctx->position(v);
          if (!pos2)
            throw ContextMismatch("substitute: unmapped variable " +
                                  ctx_->var_name(i) +
                                  " missing from result context");
          passthrough[i] = *pos2;
        }
      }
      if (image_of[i]) {
        while (powers[i].size() <= e[i])
          powers[i].push_back(powers[i].back() * *image_of[i]);
        acc *= powers[i][e[i]];
      } else {
        plain[*passthrough[i]] += e[i];
        any_plain = true;
      }
    }
    if (any_plain) acc *= monomial(result_ctx, plain, Rational(1));
    out += acc;
  }
  return out;
}

RationalPolynomial RationalPolynomial::in_context(
    const ContextPtr& bigger) const {
  if (bigger == ctx_ || bigger->same_as(*ctx_)) {
    RationalPolynomial r(bigger);
    r.terms_ = terms_;
    return r;
  }
  // Coordinate names must agree where both contexts have them; only the
  // variables actually occurring need to exist in the target.
  std::size_t common = std::min(bigger->coord_count(), ctx_->coord_count());
  for (std::size_t i = 0; i < common; ++i)
    if (bigger->coord_name(i) != ctx_->coord_name(i))
      throw ContextMismatch("in_context: coordinate names disagree");
  std::vector<std::optional<std::size_t>> map(ctx_->var_count());
  for (std::size_t i : support_positions()) {
    auto pos = bigger->position(ctx_->var(i));
    if (!pos)
      throw ContextMismatch("in_context: variable " + ctx_->var_name(i) +
                            " missing from target");
    map[i] = *pos;
  }
  RationalPolynomial r(bigger);
  for (const auto& [e, c] : terms_) {
    Exponents e2(bigger->var_count(), 0u);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) e2[*map[i]] = e[i];
    r.terms_[std::move(e2)] = c;
  }
  return r;
}

std::optional<Variable> RationalPolynomial::sole_variable() const {
  auto sup = support_positions();
  if (sup.size() != 1) return std::nullopt;
  return ctx_->var(sup[0]);
}

std::vector<Rational> RationalPolynomial::univariate_coeffs(
    const Variable& v) const {
  auto pos = ctx_->position(v);
  if (!pos) throw DomainError("univariate_coeffs: variable not in context");
  auto sup = support_positions();
  for (std::size_t p : sup)
    if (p != *pos)
      throw DomainError("univariate_coeffs: polynomial is not univariate in " +
                        ctx_->var_name(*pos));
  std::vector<Rational> c(degree_in(v) + 1, Rational(0));
  for (const auto& [e, k] : terms_) c[e[*pos]] = k;
  return c;
}

RationalPolynomial RationalPolynomial::coefficient_in(const Variable& v,
                                                      unsigned k) const {
  auto pos = ctx_->position(v);
  if (!pos) throw DomainError("coefficient_in: variable not in context");
  RationalPolynomial r(ctx_);
  for (const auto& [e, c] : terms_) {
    if (e[*pos] != k) continue;
    Exponents e2 = e;
    e2[*pos] = 0;
    r.insert_term(e2, c);
  }
  return r;
}

std::string RationalPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << '-';
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    std::string vars;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!vars.empty()) vars += '*';
      vars += ctx_->var_name(i);
      if (e[i] > 1) vars += "^" + std::to_string(e[i]);
    }
    if (vars.empty()) {
      os << mag.to_string();
    } else if (mag.is_one()) {
      os << vars;
    } else {
      os << mag.to_string() << '*' << vars;
    }
  }
  return os.str();
}

std::pair<RationalPolynomial, RationalPolynomial> unify(
    const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.context() == b.context() || a.context()->same_as(*b.context()))
    return {a, b};
  if (a.context()->coord_names() != b.context()->coord_names())
    throw ContextMismatch("unify: coordinate names disagree");
  std::vector<MultiIndex> jets = a.context()->jets();
  for (const auto& j : b.context()->jets()) jets.push_back(j);
  ContextPtr merged = PolyContext::make(a.context()->coord_names(), jets);
  return {a.in_context(merged), b.in_context(merged)};
}

namespace {

// Positive divisors of n (n > 0, n <= 10^12), unsorted.
std::vector<Integer> positive_divisors(const Integer& n) {
  if (!n.fits_ulong_p() || n > 1000000000000L)
    throw BudgetExceeded("rational_roots: constant term too large to factor");
  unsigned long v = n.get_ui();
  std::vector<Integer> out;
  for (unsigned long d = 1; d * d <= v; ++d) {
    if (v % d) continue;
    out.push_back(Integer((unsigned long)d));
    if (d != v / d) out.push_back(Integer(v / d));
  }
  return out;
}

Rational horner(const std::vector<Rational>& c, const Rational& x) {
  Rational acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Exact division by (t - r); c must vanish at r.
std::vector<Rational> deflate(const std::vector<Rational>& c,
                              const Rational& r) {
  std::vector<Rational> q(c.size() - 1, Rational(0));
  Rational carry(0);
  for (std::size_t i = c.size(); i-- > 1;) {
    carry = c[i] + carry * r;
    q[i - 1] = carry;
  }
  return q;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(
    const RationalPolynomial& p) {
  if (p.is_zero()) throw DomainError("rational_roots: zero polynomial");
  auto sup = p.support_positions();
  std::vector<std::pair<Rational, int>> roots;
  if (sup.empty()) return roots;  // nonzero constant
  if (sup.size() > 1)
    throw DomainError("rational_roots: polynomial is not univariate");
  std::vector<Rational> c = p.univariate_coeffs(p.context()->var(sup[0]));
  std::size_t low = 0;
  while (c[low].is_zero()) ++low;
  if (low > 0) {
    roots.emplace_back(Rational(0), (int)low);
    c.erase(c.begin(), c.begin() + (long)low);
  }
  if (c.size() == 1) {
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return roots;
  }
  // Primitive integer form for root candidates.
  Integer lcm(1);
  for (const auto& k : c) {
    Integer den = k.denominator();
    Integer g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  std::vector<Integer> a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    Rational scaled = c[i] * Rational(lcm);
    a[i] = scaled.numerator();
  }
  Integer content(0);
  for (const auto& x : a) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    content = g;
  }
  for (auto& x : a) x /= content;
  Integer a0 = ::abs(a.front());
  Integer ad = ::abs(a.back());
  std::set<Rational> candidates;
  for (const Integer& num : positive_divisors(a0))
    for (const Integer& den : positive_divisors(ad)) {
      Rational r(num, den);
      candidates.insert(r);
      candidates.insert(-r);
    }
  for (const Rational& r : candidates) {
    if (!horner(c, r).is_zero()) continue;
    int mult = 0;
    std::vector<Rational> work = c;
    while (work.size() > 1 && horner(work, r).is_zero()) {
      work = deflate(work, r);
      ++mult;
    }
    roots.emplace_back(r, mult);
  }
  std::sort(roots.begin(), roots.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return roots;
}

}  // namespace pf
