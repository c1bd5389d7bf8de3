#include "pf/freelie.hpp"

#include <mutex>
#include <sstream>

#include "pf/errors.hpp"

namespace pf {

bool word_graded_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool is_lyndon(const Word& w) {
  if (w.empty()) throw DomainError("is_lyndon: empty word");
  for (std::size_t i = 1; i < w.size(); ++i) {
    // Compare w with its suffix starting at i.
    if (w.compare(w.substr(i)) >= 0) return false;
  }
  return true;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  if (w.size() < 2)
    throw DomainError("standard_factorization: word too short");
  if (!is_lyndon(w))
    throw DomainError("standard_factorization: word is not Lyndon");
  // The right factor is the lex-least proper suffix, which is also the
  // longest proper Lyndon suffix.
  std::size_t best = 1;
  for (std::size_t i = 2; i < w.size(); ++i) {
    if (w.compare(i, Word::npos, w, best, Word::npos) < 0) best = i;
  }
  return {w.substr(0, best), w.substr(best)};
}

std::vector<Word> lyndon_words(unsigned alphabet, unsigned max_len) {
  if (alphabet == 0) throw DomainError("lyndon_words: empty alphabet");
  // Duval's generation, collected then sorted into graded order.
  std::vector<Word> out;
  Word w(1, char(0));
  for (;;) {
    if (w.size() <= max_len) out.push_back(w);
    // Extend periodically to length max_len, then increment.
    Word t = w;
    while (t.size() < max_len) t += t[t.size() % w.size()];
    while (!t.empty() && t.back() == char(alphabet - 1)) t.pop_back();
    if (t.empty()) break;
    ++t.back();
    w = t;
  }
  std::sort(out.begin(), out.end(), word_graded_less);
  return out;
}

std::string word_to_string(const Word& w,
                           const std::vector<std::string>& names) {
  std::string s;
  for (char c : w) {
    std::size_t i = (std::size_t)(unsigned char)c;
    if (i >= names.size()) throw DomainError("word_to_string: letter index");
    s += names[i];
  }
  return s;
}

std::string word_to_bracket_string(const Word& w,
                                   const std::vector<std::string>& names) {
  if (w.size() == 1) return word_to_string(w, names);
  auto [u, v] = standard_factorization(w);
  return "{" + word_to_bracket_string(u, names) + "," +
         word_to_bracket_string(v, names) + "}";
}

LieElement LieElement::basis(unsigned alphabet, const Word& w) {
  if (!is_lyndon(w)) throw DomainError("LieElement::basis: not a Lyndon word");
  for (char c : w)
    if ((unsigned)(unsigned char)c >= alphabet)
      throw DomainError("LieElement::basis: letter outside alphabet");
  LieElement e(alphabet);
  e.terms_[w] = Rational(1);
  return e;
}

LieElement LieElement::generator(unsigned alphabet, unsigned i) {
  if (i >= alphabet) throw DomainError("LieElement::generator: index");
  return basis(alphabet, Word(1, char(i)));
}

LieElement LieElement::operator-() const {
  LieElement r(alphabet_);
  for (const auto& [w, c] : terms_) r.terms_[w] = -c;
  return r;
}

void LieElement::add_term(const Word& w, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& o) {
  if (alphabet_ != o.alphabet_)
    throw ArityMismatch("LieElement: alphabet mismatch");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  if (alphabet_ != o.alphabet_)
    throw ArityMismatch("LieElement: alphabet mismatch");
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

LieElement LieElement::scaled(const Rational& c) const {
  LieElement r(alphabet_);
  if (c.is_zero()) return r;
  for (const auto& [w, k] : terms_) r.terms_[w] = k * c;
  return r;
}

bool LieElement::operator==(const LieElement& o) const {
  if (alphabet_ != o.alphabet_)
    throw ArityMismatch("LieElement: alphabet mismatch");
  return terms_ == o.terms_;
}

std::string LieElement::to_string(
    const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [w, c] = *it;
    if (first) {
      if (c.sign() < 0) os << '-';
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    Rational mag = c.abs();
    if (!mag.is_one()) os << mag.to_string() << '*';
    os << word_to_bracket_string(w, names);
  }
  return os.str();
}

namespace {

// Process-wide memo for brackets of Lyndon word pairs (u < v graded-lex is
// NOT required; keys store u,v with u lex-less than v). Guarded by a mutex;
// entries are capped so runaway inputs fail loudly instead of thrashing.
struct BracketMemo {
  std::mutex mu;
  std::map<std::pair<Word, Word>, LieElement::TermMap> table;
  static constexpr std::size_t kMaxEntries = 500000;
  static constexpr int kMaxDepth = 512;
};

BracketMemo& memo() {
  static BracketMemo m;
  return m;
}

LieElement::TermMap bracket_core(unsigned alphabet, const Word& u,
                                 const Word& v, int depth);

// [b_x, b_y] for arbitrary Lyndon words, normalizing order and equality.
LieElement bracket_pair(unsigned alphabet, const Word& x, const Word& y,
                        int depth) {
  LieElement r(alphabet);
  if (x == y) return r;
  const Word& a = x < y ? x : y;
  const Word& b = x < y ? y : x;
  bool flip = !(x < y);
  for (const auto& [w, c] : bracket_core(alphabet, a, b, depth))
    r.add_term(w, flip ? -c : c);
  return r;
}

// Core rewriting on a pair of Lyndon words with u < v lexicographically.
// Returns the expansion of [b_u, b_v] in the Lyndon basis.
LieElement::TermMap bracket_core(unsigned alphabet, const Word& u,
                                 const Word& v, int depth) {
  if (depth > BracketMemo::kMaxDepth)
    throw BudgetExceeded("lie_bracket: rewriting depth exceeded");
  {
    std::lock_guard<std::mutex> lock(memo().mu);
    auto it = memo().table.find({u, v});
    if (it != memo().table.end()) return it->second;
  }
  LieElement acc(alphabet);
  Word uv = u + v;
  auto [l, r] = standard_factorization(uv);
  (void)r;
  if (l == u) {
    // (u, v) is the standard factorization of uv, so [b_u, b_v] = b_{uv}.
    acc.add_term(uv, Rational(1));
  } else {
    // Rewrite via Jacobi on u = u1 u2 (standard factorization):
    // [u, v] = [u1, [u2, v]] - [u2, [u1, v]].
    auto [u1, u2] = standard_factorization(u);
    LieElement inner = bracket_pair(alphabet, u2, v, depth + 1);
    for (const auto& [w, c] : inner.terms()) {
      LieElement t = bracket_pair(alphabet, u1, w, depth + 1);
      for (const auto& [w2, c2] : t.terms()) acc.add_term(w2, c * c2);
    }
    inner = bracket_pair(alphabet, u1, v, depth + 1);
    for (const auto& [w, c] : inner.terms()) {
      LieElement t = bracket_pair(alphabet, u2, w, depth + 1);
      for (const auto& [w2, c2] : t.terms()) acc.add_term(w2, -(c * c2));
    }
  }
  {
    std::lock_guard<std::mutex> lock(memo().mu);
    if (memo().table.size() >= BracketMemo::kMaxEntries)
      throw BudgetExceeded("lie_bracket: memo budget exceeded");
    memo().table.emplace(std::make_pair(u, v), acc.terms());
  }
  return acc.terms();
}

}  // namespace

LieElement lie_bracket_words(unsigned alphabet, const Word& u, const Word& v) {
  // Fast path: two letters.
  if (u.size() == 1 && v.size() == 1) {
    LieElement r(alphabet);
    if (u == v) return r;
    if (u < v)
      r.add_term(u + v, Rational(1));
    else
      r.add_term(v + u, Rational(-1));
    return r;
  }
  return bracket_pair(alphabet, u, v, 0);
}

LieElement lie_bracket(const LieElement& a, const LieElement& b) {
  if (a.alphabet() != b.alphabet())
    throw ArityMismatch("lie_bracket: alphabet mismatch");
  LieElement r(a.alphabet());
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) {
      if (u == v) continue;
      LieElement t = lie_bracket_words(a.alphabet(), u, v);
      for (const auto& [w, c] : t.terms()) r.add_term(w, cu * cv * c);
    }
  return r;
}

}  // namespace pf
