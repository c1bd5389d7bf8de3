#include "pf/freepoisson.hpp"

#include <algorithm>
#include <sstream>

#include "pf/errors.hpp"

namespace pf {

PoissonMonomial PoissonMonomial::single(const Word& w) {
  PoissonMonomial m;
  m.f_.emplace_back(w, 1u);
  return m;
}

unsigned PoissonMonomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [w, k] : f_) d += (unsigned)w.size() * k;
  return d;
}

unsigned PoissonMonomial::generator_degree(unsigned g) const {
  unsigned d = 0;
  for (const auto& [w, k] : f_) {
    unsigned in_word = 0;
    for (char c : w)
      if ((unsigned)(unsigned char)c == g) ++in_word;
    d += in_word * k;
  }
  return d;
}

PoissonMonomial PoissonMonomial::times(const PoissonMonomial& o) const {
  PoissonMonomial r;
  std::size_t i = 0, j = 0;
  while (i < f_.size() || j < o.f_.size()) {
    if (j == o.f_.size() ||
        (i < f_.size() && word_graded_less(f_[i].first, o.f_[j].first))) {
      r.f_.push_back(f_[i++]);
    } else if (i == f_.size() || word_graded_less(o.f_[j].first, f_[i].first)) {
      r.f_.push_back(o.f_[j++]);
    } else {
      r.f_.emplace_back(f_[i].first, f_[i].second + o.f_[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

PoissonMonomial PoissonMonomial::times_word(const Word& w) const {
  PoissonMonomial r;
  auto it = std::lower_bound(
      f_.begin(), f_.end(), w,
      [](const std::pair<Word, unsigned>& p, const Word& x) {
        return word_graded_less(p.first, x);
      });
  r.f_.assign(f_.begin(), it);
  if (it != f_.end() && it->first == w) {
    r.f_.emplace_back(w, it->second + 1);
    ++it;
  } else {
    r.f_.emplace_back(w, 1u);
  }
  r.f_.insert(r.f_.end(), it, f_.end());
  return r;
}

PoissonMonomial PoissonMonomial::without(std::size_t i) const {
  PoissonMonomial r;
  r.f_ = f_;
  if (r.f_[i].second > 1)
    --r.f_[i].second;
  else
    r.f_.erase(r.f_.begin() + (long)i);
  return r;
}

int PoissonMonomial::compare(const PoissonMonomial& a,
                             const PoissonMonomial& b) {
  unsigned da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  std::size_t i = 0;
  for (; i < a.f_.size() && i < b.f_.size(); ++i) {
    if (a.f_[i].first != b.f_[i].first)
      return word_graded_less(a.f_[i].first, b.f_[i].first) ? -1 : 1;
    if (a.f_[i].second != b.f_[i].second)
      return a.f_[i].second < b.f_[i].second ? -1 : 1;
  }
  if (i < a.f_.size()) return 1;
  if (i < b.f_.size()) return -1;
  return 0;
}

PoissonElement PoissonElement::constant(unsigned gens, const Rational& c) {
  PoissonElement e(gens);
  if (!c.is_zero()) e.terms_[PoissonMonomial()] = c;
  return e;
}

PoissonElement PoissonElement::generator(unsigned gens, unsigned i) {
  if (i >= gens) throw DomainError("PoissonElement::generator: index");
  PoissonElement e(gens);
  e.terms_[PoissonMonomial::single(Word(1, char(i)))] = Rational(1);
  return e;
}

PoissonElement PoissonElement::from_monomial(unsigned gens,
                                             const PoissonMonomial& m,
                                             const Rational& c) {
  for (const auto& [w, k] : m.factors()) {
    if (!is_lyndon(w))
      throw DomainError("PoissonElement: factor is not a Lyndon word");
    for (char ch : w)
      if ((unsigned)(unsigned char)ch >= gens)
        throw DomainError("PoissonElement: letter outside generator set");
    (void)k;
  }
  PoissonElement e(gens);
  if (!c.is_zero()) e.terms_[m] = c;
  return e;
}

PoissonElement PoissonElement::from_lie(unsigned gens, const LieElement& x) {
  if (x.alphabet() != gens)
    throw ArityMismatch("from_lie: alphabet mismatch");
  PoissonElement e(gens);
  for (const auto& [w, c] : x.terms())
    e.terms_[PoissonMonomial::single(w)] = c;
  return e;
}

bool PoissonElement::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational PoissonElement::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant())
    throw DomainError("constant_value: element is not constant");
  return terms_.begin()->second;
}

void PoissonElement::add_term(const PoissonMonomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PoissonElement PoissonElement::operator-() const {
  PoissonElement r(gens_);
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

namespace {
void require_same_gens(const PoissonElement& a, const PoissonElement& b,
                       const char* op) {
  if (a.generators() != b.generators())
    throw ArityMismatch(std::string(op) + ": generator count mismatch");
}
}  // namespace

PoissonElement& PoissonElement::operator+=(const PoissonElement& o) {
  require_same_gens(*this, o, "add");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PoissonElement& PoissonElement::operator-=(const PoissonElement& o) {
  require_same_gens(*this, o, "sub");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PoissonElement operator*(const PoissonElement& a, const PoissonElement& b) {
  require_same_gens(a, b, "mul");
  PoissonElement r(a.generators());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      r.add_term(ma.times(mb), ca * cb);
  return r;
}

PoissonElement PoissonElement::scaled(const Rational& c) const {
  PoissonElement r(gens_);
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
  return r;
}

PoissonElement PoissonElement::pow(unsigned k) const {
  PoissonElement r = constant(gens_, Rational(1));
  PoissonElement base = *this;
  while (k) {
    if (k & 1u) r *= base;
    if (k >>= 1u) base *= base;
  }
  return r;
}

bool PoissonElement::operator==(const PoissonElement& o) const {
  require_same_gens(*this, o, "eq");
  return terms_ == o.terms_;
}

unsigned PoissonElement::total_degree() const {
  if (terms_.empty()) throw DomainError("total_degree: zero element");
  // Terms are graded: the last one is maximal.
  return terms_.rbegin()->first.total_degree();
}

unsigned PoissonElement::generator_degree(unsigned g) const {
  if (terms_.empty()) throw DomainError("generator_degree: zero element");
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.generator_degree(g));
  return d;
}

std::map<std::vector<unsigned>, PoissonElement>
PoissonElement::multihomogeneous_components() const {
  std::map<std::vector<unsigned>, PoissonElement> out;
  for (const auto& [m, c] : terms_) {
    std::vector<unsigned> key(gens_);
    for (unsigned g = 0; g < gens_; ++g) key[g] = m.generator_degree(g);
    auto it = out.find(key);
    if (it == out.end()) it = out.emplace(key, PoissonElement(gens_)).first;
    it->second.add_term(m, c);
  }
  return out;
}

std::map<unsigned, PoissonElement> PoissonElement::homogeneous_components()
    const {
  std::map<unsigned, PoissonElement> out;
  for (const auto& [m, c] : terms_) {
    auto it = out.find(m.total_degree());
    if (it == out.end())
      it = out.emplace(m.total_degree(), PoissonElement(gens_)).first;
    it->second.add_term(m, c);
  }
  return out;
}

std::string PoissonElement::to_string() const {
  return to_string(default_generator_names(gens_));
}

std::string PoissonElement::to_string(
    const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (first) {
      if (c.sign() < 0) os << '-';
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    Rational mag = c.abs();
    std::string vars;
    for (const auto& [w, k] : m.factors()) {
      if (!vars.empty()) vars += '*';
      vars += word_to_bracket_string(w, names);
      if (k > 1) vars += "^" + std::to_string(k);
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

PoissonElement poisson_bracket(const PoissonElement& a,
                               const PoissonElement& b) {
  require_same_gens(a, b, "poisson_bracket");
  unsigned gens = a.generators();
  PoissonElement r(gens);
  for (const auto& [ma, ca] : a.terms()) {
    const auto& fa = ma.factors();
    for (const auto& [mb, cb] : b.terms()) {
      const auto& fb = mb.factors();
      Rational c0 = ca * cb;
      for (std::size_t i = 0; i < fa.size(); ++i) {
        for (std::size_t j = 0; j < fb.size(); ++j) {
          const Word& u = fa[i].first;
          const Word& v = fb[j].first;
          if (u == v) continue;
          Rational mult = c0 * Rational((long)(fa[i].second * fb[j].second));
          PoissonMonomial base = ma.without(i).times(mb.without(j));
          if (u.size() == 1 && v.size() == 1) {
            // Letter-letter fast path: [z_i, z_j] = +/- basis word.
            if (u < v)
              r.add_term(base.times_word(u + v), mult);
            else
              r.add_term(base.times_word(v + u), -mult);
            continue;
          }
          LieElement lw = lie_bracket_words(gens, u, v);
          for (const auto& [w, cw] : lw.terms())
            r.add_term(base.times_word(w), mult * cw);
        }
      }
    }
  }
  return r;
}

std::vector<std::string> default_generator_names(unsigned gens) {
  if (gens == 2) return {"x", "y"};
  std::vector<std::string> names;
  names.reserve(gens);
  for (unsigned i = 1; i <= gens; ++i) names.push_back("z" + std::to_string(i));
  return names;
}

namespace {
// Perfect matchings of {0..2n-1} in canonical form: pairs (a,b) with a < b,
// listed with increasing a; enumerated smallest-first deterministically.
void matchings_rec(std::vector<unsigned>& free_idx,
                   std::vector<std::pair<unsigned, unsigned>>& cur,
                   std::vector<std::vector<std::pair<unsigned, unsigned>>>& out) {
  if (free_idx.empty()) {
    out.push_back(cur);
    return;
  }
  unsigned a = free_idx.front();
  for (std::size_t k = 1; k < free_idx.size(); ++k) {
    unsigned b = free_idx[k];
    std::vector<unsigned> rest;
    for (std::size_t t = 1; t < free_idx.size(); ++t)
      if (t != k) rest.push_back(free_idx[t]);
    cur.emplace_back(a, b);
    matchings_rec(rest, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::pair<unsigned, unsigned>>> perfect_matchings(
    unsigned n2) {
  std::vector<unsigned> idx(n2);
  for (unsigned i = 0; i < n2; ++i) idx[i] = i;
  std::vector<std::vector<std::pair<unsigned, unsigned>>> out;
  std::vector<std::pair<unsigned, unsigned>> cur;
  matchings_rec(idx, cur, out);
  return out;
}

int matching_sign(const std::vector<std::pair<unsigned, unsigned>>& m) {
  // Sign of the permutation (a1 b1 a2 b2 ...) of 0..2n-1.
  std::vector<unsigned> perm;
  for (const auto& [a, b] : m) {
    perm.push_back(a);
    perm.push_back(b);
  }
  int inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}
}  // namespace

std::vector<PoissonElement> customary_basis(unsigned n) {
  if (n == 0) throw DomainError("customary_basis: n must be positive");
  unsigned gens = 2 * n;
  std::vector<PoissonElement> out;
  for (const auto& m : perfect_matchings(gens)) {
    PoissonMonomial mono;
    for (const auto& [a, b] : m) {
      Word w;
      w.push_back(char(a));
      w.push_back(char(b));
      mono = mono.times_word(w);
    }
    out.push_back(PoissonElement::from_monomial(gens, mono, Rational(1)));
  }
  return out;
}

PoissonElement standard_customary(unsigned n) {
  unsigned gens = 2 * n + 2;
  PoissonElement r(gens);
  for (const auto& m : perfect_matchings(gens)) {
    PoissonMonomial mono;
    for (const auto& [a, b] : m) {
      Word w;
      w.push_back(char(a));
      w.push_back(char(b));
      mono = mono.times_word(w);
    }
    r.add_term(mono, Rational(matching_sign(m)));
  }
  return r;
}

PoissonElement st4() { return standard_customary(1); }

std::pair<PoissonElement, PoissonElement> split_commutative_part(
    const PoissonElement& f) {
  if (f.generators() != 2)
    throw ArityMismatch("split_commutative_part: needs exactly 2 generators");
  PoissonElement f1(2), f2(2);
  for (const auto& [m, c] : f.terms()) {
    bool commutative = true;
    for (const auto& [w, k] : m.factors()) {
      (void)k;
      if (w.size() > 1) {
        commutative = false;
        break;
      }
    }
    (commutative ? f1 : f2).add_term(m, c);
  }
  return {f1, f2};
}

PoissonElement polynomial_to_poisson(const RationalPolynomial& p) {
  const auto& ctx = p.context();
  if (ctx->jet_count() != 0)
    throw DomainError("polynomial_to_poisson: jet symbols present");
  unsigned gens = (unsigned)ctx->coord_count();
  PoissonElement r(gens);
  for (const auto& [e, c] : p.terms()) {
    PoissonMonomial m;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) m = m.times_word(Word(1, char(i)));
    r.add_term(m, c);
  }
  return r;
}

RationalPolynomial commutative_to_polynomial(const PoissonElement& f,
                                             const ContextPtr& ctx) {
  if (ctx->coord_count() != f.generators() || ctx->jet_count() != 0)
    throw ContextMismatch(
        "commutative_to_polynomial: context does not match generator set");
  RationalPolynomial r(ctx);
  for (const auto& [m, c] : f.terms()) {
    Exponents e(ctx->var_count(), 0u);
    for (const auto& [w, k] : m.factors()) {
      if (w.size() != 1)
        throw DomainError(
            "commutative_to_polynomial: non-letter word in monomial");
      e[(std::size_t)(unsigned char)w[0]] += k;
    }
    r += RationalPolynomial::monomial(ctx, e, c);
  }
  return r;
}

}  // namespace pf
