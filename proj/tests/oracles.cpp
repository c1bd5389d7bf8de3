#include "oracles.hpp"

#include <algorithm>
#include <numeric>

#include "pf/errors.hpp"

namespace pforacle {

using pf::Integer;
using pf::LieElement;
using pf::PoissonElement;
using pf::PoissonMonomial;
using pf::Rational;
using pf::RationalPolynomial;
using pf::Word;

Tensor tensor_mul(const Tensor& a, const Tensor& b) {
  Tensor out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) {
      Rational c = cu * cv;
      auto [it, fresh] = out.emplace(u + v, c);
      if (!fresh) {
        it->second = it->second + c;
        if (it->second == Rational(0)) out.erase(it);
      }
    }
  return out;
}

Tensor tensor_of_word(const pf::Word& w) {
  if (!pf::is_lyndon(w)) throw pf::DomainError("tensor_of_word: not Lyndon");
  if (w.size() == 1) return Tensor{{w, Rational(1)}};
  auto [u, v] = pf::standard_factorization(w);
  Tensor tu = tensor_of_word(u);
  Tensor tv = tensor_of_word(v);
  Tensor out = tensor_mul(tu, tv);
  for (const auto& [x, c] : tensor_mul(tv, tu)) {
    auto [it, fresh] = out.emplace(x, -c);
    if (!fresh) {
      it->second = it->second - c;
      if (it->second == Rational(0)) out.erase(it);
    }
  }
  return out;
}

Tensor tensor_of_lie(const pf::LieElement& x) {
  Tensor out;
  for (const auto& [w, c] : x.terms())
    for (const auto& [v, cv] : tensor_of_word(w)) {
      auto [it, fresh] = out.emplace(v, c * cv);
      if (!fresh) {
        it->second = it->second + c * cv;
        if (it->second == Rational(0)) out.erase(it);
      }
    }
  return out;
}

pf::LieElement lie_from_tensor(unsigned alphabet, Tensor t) {
  LieElement out(alphabet);
  while (!t.empty()) {
    // std::map over std::string orders lexicographically; all words in a
    // commutator expansion share one length, and across lengths the strip
    // below removes whole homogeneous layers, so lex order suffices.
    auto it = t.begin();
    Word w = it->first;
    Rational c = it->second;
    if (!pf::is_lyndon(w))
      throw pf::DomainError(
          "lie_from_tensor: leading word is not Lyndon; not a Lie element");
    out.add_term(w, c);
    for (const auto& [v, cv] : tensor_of_word(w)) {
      auto [jt, fresh] = t.emplace(v, -(c * cv));
      if (!fresh) {
        jt->second = jt->second - c * cv;
        if (jt->second == Rational(0)) t.erase(jt);
      }
    }
  }
  return out;
}

pf::LieElement lie_bracket_oracle(const pf::LieElement& a,
                                  const pf::LieElement& b) {
  if (a.alphabet() != b.alphabet())
    throw pf::ArityMismatch("lie_bracket_oracle: alphabet mismatch");
  Tensor ta = tensor_of_lie(a);
  Tensor tb = tensor_of_lie(b);
  Tensor comm = tensor_mul(ta, tb);
  for (const auto& [x, c] : tensor_mul(tb, ta)) {
    auto [it, fresh] = comm.emplace(x, -c);
    if (!fresh) {
      it->second = it->second - c;
      if (it->second == Rational(0)) comm.erase(it);
    }
  }
  return lie_from_tensor(a.alphabet(), std::move(comm));
}

pf::PoissonElement poisson_bracket_oracle(const pf::PoissonElement& a,
                                          const pf::PoissonElement& b) {
  unsigned gens = a.generators();
  PoissonElement out(gens);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      const auto& fa = ma.factors();
      const auto& fb = mb.factors();
      for (std::size_t i = 0; i < fa.size(); ++i)
        for (std::size_t j = 0; j < fb.size(); ++j) {
          // Leibniz: one bracket per (factor of ma) x (factor of mb) pair,
          // weighted by the multiplicities.
          Rational weight = ca * cb *
                            Rational(int(fa[i].second) * int(fb[j].second));
          LieElement lu = LieElement::basis(gens, fa[i].first);
          LieElement lv = LieElement::basis(gens, fb[j].first);
          LieElement br = lie_bracket_oracle(lu, lv);
          if (br.is_zero()) continue;
          PoissonMonomial rest = ma.without(i).times(mb.without(j));
          PoissonElement lie_part = PoissonElement::from_lie(gens, br);
          PoissonElement rest_part =
              PoissonElement::from_monomial(gens, rest, weight);
          out += lie_part * rest_part;
        }
    }
  return out;
}

std::vector<std::vector<std::pair<unsigned, unsigned>>> matchings_oracle(
    unsigned n) {
  std::vector<unsigned> perm(2 * n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::vector<std::vector<std::pair<unsigned, unsigned>>> out;
  do {
    bool ok = true;
    for (unsigned i = 0; i < n && ok; ++i) {
      if (perm[2 * i] > perm[2 * i + 1]) ok = false;
      if (i > 0 && perm[2 * (i - 1)] > perm[2 * i]) ok = false;
    }
    if (!ok) continue;
    std::vector<std::pair<unsigned, unsigned>> m;
    for (unsigned i = 0; i < n; ++i) m.emplace_back(perm[2 * i], perm[2 * i + 1]);
    out.push_back(std::move(m));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

int permutation_sign(const std::vector<unsigned>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

pf::PoissonElement standard_customary_oracle(unsigned n) {
  unsigned gens = 2 * (n + 1);
  PoissonElement out(gens);
  for (const auto& m : matchings_oracle(n + 1)) {
    std::vector<unsigned> flat;
    for (const auto& [a, b] : m) {
      flat.push_back(a);
      flat.push_back(b);
    }
    PoissonElement term = PoissonElement::constant(
        gens, Rational(permutation_sign(flat)));
    for (const auto& [a, b] : m) {
      LieElement br = lie_bracket_oracle(LieElement::generator(gens, a),
                                         LieElement::generator(gens, b));
      term = term * PoissonElement::from_lie(gens, br);
    }
    out += term;
  }
  return out;
}

pf::Rational exp_coefficient(unsigned k) {
  return Rational(Integer(1), pf::factorial(k));
}

pf::Rational sqrt_coefficient(unsigned k) {
  // C(1/2, k) = (1/2)(1/2 - 1)...(1/2 - k + 1) / k!
  Rational num(1);
  Rational half(1, 2);
  for (unsigned i = 0; i < k; ++i) num = num * (half - Rational(int(i)));
  return num / Rational(pf::factorial(k));
}

pf::Rational eval_poly_at(const pf::RationalPolynomial& p,
                          const std::vector<pf::Rational>& point) {
  if (point.size() != p.context()->var_count())
    throw pf::DomainError("eval_poly_at: point size mismatch");
  Rational total(0);
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) term = term * point[i];
    total = total + term;
  }
  return total;
}

}  // namespace pforacle
