#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pf/rational.hpp"

namespace pf {

// A word over the generator alphabet; each byte is a generator index
// (0-based), not a printable character.
using Word = std::string;

// Graded order on words: first by length, then lexicographically.
bool word_graded_less(const Word& a, const Word& b);

// True iff w is strictly smaller than every proper suffix. Throws on empty.
bool is_lyndon(const Word& w);

// Standard factorization w = u v with v the longest proper Lyndon suffix
// (equivalently the lex-least proper suffix). Requires |w| >= 2 and w Lyndon.
std::pair<Word, Word> standard_factorization(const Word& w);

// All Lyndon words over the given alphabet with length in [1, max_len],
// in graded order.
std::vector<Word> lyndon_words(unsigned alphabet, unsigned max_len);

// "xy" given names {"x","y"}: generator names juxtaposed.
std::string word_to_string(const Word& w, const std::vector<std::string>& names);
// The standard-factorization bracketing: "xxy" -> "{x,{x,y}}".
std::string word_to_bracket_string(const Word& w,
                                   const std::vector<std::string>& names);

// Element of the free Lie algebra in the Lyndon basis: a finite Rational
// combination of Lyndon words over a fixed alphabet.
class LieElement {
 public:
  struct WordGradedLess {
    bool operator()(const Word& a, const Word& b) const {
      return word_graded_less(a, b);
    }
  };
  using TermMap = std::map<Word, Rational, WordGradedLess>;

  explicit LieElement(unsigned alphabet) : alphabet_(alphabet) {}
  static LieElement basis(unsigned alphabet, const Word& w);  // w Lyndon
  static LieElement generator(unsigned alphabet, unsigned i);

  unsigned alphabet() const { return alphabet_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  LieElement operator-() const;
  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  friend LieElement operator+(LieElement a, const LieElement& b) {
    return a += b;
  }
  friend LieElement operator-(LieElement a, const LieElement& b) {
    return a -= b;
  }
  LieElement scaled(const Rational& c) const;
  bool operator==(const LieElement& o) const;

  void add_term(const Word& w, const Rational& c);

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  unsigned alphabet_;
  TermMap terms_;
};

// Lie bracket, expanded into the Lyndon basis by recursive rewriting with a
// process-wide memo on word pairs. Throws ArityMismatch on alphabet mismatch
// and BudgetExceeded when the memo or recursion budget is exhausted.
LieElement lie_bracket(const LieElement& a, const LieElement& b);

// Bracket of two basis words (both Lyndon). Exposed so the Poisson layer can
// reuse the memo directly.
LieElement lie_bracket_words(unsigned alphabet, const Word& u, const Word& v);

}  // namespace pf
