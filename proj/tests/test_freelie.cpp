#include <doctest.h>

#include <string>
#include <vector>

#include "oracles.hpp"
#include "pf/errors.hpp"
#include "pf/freelie.hpp"

using pf::LieElement;
using pf::Rational;
using pf::Word;

namespace {

Word W(std::initializer_list<int> letters) {
  Word w;
  for (int l : letters) w.push_back(char(l));
  return w;
}

}  // namespace

TEST_CASE("lyndon word recognition") {
  CHECK(pf::is_lyndon(W({0})));
  CHECK(pf::is_lyndon(W({0, 1})));
  CHECK(!pf::is_lyndon(W({1, 0})));
  CHECK(!pf::is_lyndon(W({0, 0})));
  CHECK(pf::is_lyndon(W({0, 0, 1})));
  CHECK(pf::is_lyndon(W({0, 1, 1})));
  CHECK(!pf::is_lyndon(W({0, 1, 0})));
  CHECK(!pf::is_lyndon(W({0, 1, 0, 1})));
  CHECK(pf::is_lyndon(W({0, 0, 1, 0, 1})));
  CHECK_THROWS_AS(pf::is_lyndon(Word()), pf::DomainError);
}

TEST_CASE("standard factorization picks the longest Lyndon suffix") {
  auto f = pf::standard_factorization(W({0, 1}));
  CHECK(f.first == W({0}));
  CHECK(f.second == W({1}));
  f = pf::standard_factorization(W({0, 0, 1}));
  CHECK(f.first == W({0}));
  CHECK(f.second == W({0, 1}));
  f = pf::standard_factorization(W({0, 1, 1}));
  CHECK(f.first == W({0, 1}));
  CHECK(f.second == W({1}));
  // 0101 is not Lyndon, so the longest Lyndon proper suffix of 00101 is 01.
  f = pf::standard_factorization(W({0, 0, 1, 0, 1}));
  CHECK(f.first == W({0, 0, 1}));
  CHECK(f.second == W({0, 1}));
  // Both parts are Lyndon for every enumerated word.
  for (const Word& w : pf::lyndon_words(3, 5)) {
    if (w.size() < 2) continue;
    auto [u, v] = pf::standard_factorization(w);
    CHECK(pf::is_lyndon(u));
    CHECK(pf::is_lyndon(v));
    CHECK(u + v == w);
  }
}

TEST_CASE("lyndon word counts match the Witt formula for two letters") {
  auto words = pf::lyndon_words(2, 6);
  std::vector<int> by_len(7, 0);
  for (const Word& w : words) ++by_len[w.size()];
  CHECK(by_len[1] == 2);
  CHECK(by_len[2] == 1);
  CHECK(by_len[3] == 2);
  CHECK(by_len[4] == 3);
  CHECK(by_len[5] == 6);
  CHECK(by_len[6] == 9);
}

TEST_CASE("lyndon word counts for three letters") {
  auto words = pf::lyndon_words(3, 4);
  std::vector<int> by_len(5, 0);
  for (const Word& w : words) ++by_len[w.size()];
  CHECK(by_len[1] == 3);
  CHECK(by_len[2] == 3);
  CHECK(by_len[3] == 8);
  CHECK(by_len[4] == 18);
}

TEST_CASE("bracket strings") {
  std::vector<std::string> names = {"x", "y"};
  CHECK(pf::word_to_bracket_string(W({0}), names) == "x");
  CHECK(pf::word_to_bracket_string(W({0, 1}), names) == "{x,y}");
  CHECK(pf::word_to_bracket_string(W({0, 0, 1}), names) == "{x,{x,y}}");
  CHECK(pf::word_to_bracket_string(W({0, 1, 1}), names) == "{{x,y},y}");
}

TEST_CASE("small brackets by hand") {
  LieElement x = LieElement::generator(2, 0);
  LieElement y = LieElement::generator(2, 1);
  LieElement xy = pf::lie_bracket(x, y);
  CHECK(xy == LieElement::basis(2, W({0, 1})));
  CHECK(pf::lie_bracket(y, x) == -xy);
  CHECK(pf::lie_bracket(x, x).is_zero());
  // [xy, x] = -[x, xy] = -b_{xxy}.
  CHECK(pf::lie_bracket(xy, x) == -LieElement::basis(2, W({0, 0, 1})));
  CHECK(pf::lie_bracket(xy, y) == LieElement::basis(2, W({0, 1, 1})));
}

TEST_CASE("bracket agrees with the tensor-algebra oracle") {
  // Exhaustive over pairs of Lyndon basis words of total length <= 7.
  auto words = pf::lyndon_words(2, 6);
  for (const Word& u : words)
    for (const Word& v : words) {
      if (u.size() + v.size() > 7) continue;
      LieElement a = LieElement::basis(2, u);
      LieElement b = LieElement::basis(2, v);
      CHECK(pf::lie_bracket(a, b) == pforacle::lie_bracket_oracle(a, b));
    }
}

TEST_CASE("bracket oracle agreement on three letters") {
  auto words = pf::lyndon_words(3, 4);
  for (const Word& u : words)
    for (const Word& v : words) {
      if (u.size() + v.size() > 5) continue;
      LieElement a = LieElement::basis(3, u);
      LieElement b = LieElement::basis(3, v);
      CHECK(pf::lie_bracket(a, b) == pforacle::lie_bracket_oracle(a, b));
    }
}

TEST_CASE("antisymmetry and Jacobi on basis words") {
  auto words = pf::lyndon_words(2, 4);
  for (const Word& u : words)
    for (const Word& v : words) {
      if (u.size() + v.size() > 6) continue;
      LieElement a = LieElement::basis(2, u);
      LieElement b = LieElement::basis(2, v);
      CHECK(pf::lie_bracket(a, b) == -pf::lie_bracket(b, a));
      for (const Word& w : words) {
        if (u.size() + v.size() + w.size() > 6) continue;
        LieElement c = LieElement::basis(2, w);
        LieElement jac = pf::lie_bracket(a, pf::lie_bracket(b, c)) +
                         pf::lie_bracket(b, pf::lie_bracket(c, a)) +
                         pf::lie_bracket(c, pf::lie_bracket(a, b));
        CHECK(jac.is_zero());
      }
    }
}

TEST_CASE("bilinearity on combinations") {
  LieElement x = LieElement::generator(2, 0);
  LieElement y = LieElement::generator(2, 1);
  LieElement xy = LieElement::basis(2, W({0, 1}));
  LieElement a = x.scaled(Rational(2)) - xy.scaled(Rational(1, 3));
  LieElement b = y + xy.scaled(Rational(5));
  LieElement lhs = pf::lie_bracket(a, b);
  LieElement rhs = pf::lie_bracket(x, y).scaled(Rational(2)) +
                   pf::lie_bracket(x, xy).scaled(Rational(10)) -
                   pf::lie_bracket(xy, y).scaled(Rational(1, 3)) -
                   pf::lie_bracket(xy, xy).scaled(Rational(5, 3));
  CHECK(lhs == rhs);
  CHECK(lhs == pforacle::lie_bracket_oracle(a, b));
}

TEST_CASE("basis validates its input") {
  CHECK_THROWS_AS(LieElement::basis(2, W({1, 0})), pf::DomainError);
  CHECK_THROWS_AS(LieElement::basis(2, W({0, 2})), pf::DomainError);
  CHECK_THROWS_AS(pf::lie_bracket(LieElement::generator(2, 0),
                                  LieElement::generator(3, 0)),
                  pf::ArityMismatch);
}

TEST_CASE("deep nested bracket against the oracle") {
  // [[x,y],[x,[x,y]]] is the classic first non-obvious case.
  LieElement x = LieElement::generator(2, 0);
  LieElement y = LieElement::generator(2, 1);
  LieElement xy = pf::lie_bracket(x, y);
  LieElement xxy = pf::lie_bracket(x, xy);
  LieElement lhs = pf::lie_bracket(xy, xxy);
  CHECK(lhs == pforacle::lie_bracket_oracle(xy, xxy));
  CHECK(!lhs.is_zero());
}
