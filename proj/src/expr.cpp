#include "pf/expr.hpp"

#include <cctype>
#include <map>
#include <utility>

#include "pf/errors.hpp"
#include "pf/symplectic.hpp"

namespace pf {

namespace {

enum class Tok {
  Number,
  Ident,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  End
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;  // Number digits or Ident name
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
    cur_.pos = i_;
    cur_.text.clear();
    if (i_ >= s_.size()) {
      cur_.kind = Tok::End;
      return;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[j])))
        ++j;
      cur_.kind = Tok::Number;
      cur_.text = s_.substr(i_, j - i_);
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) ||
              s_[j] == '_'))
        ++j;
      cur_.kind = Tok::Ident;
      cur_.text = s_.substr(i_, j - i_);
      i_ = j;
      return;
    }
    ++i_;
    switch (c) {
      case '+': cur_.kind = Tok::Plus; return;
      case '-': cur_.kind = Tok::Minus; return;
      case '*': cur_.kind = Tok::Star; return;
      case '/': cur_.kind = Tok::Slash; return;
      case '^': cur_.kind = Tok::Caret; return;
      case '(': cur_.kind = Tok::LParen; return;
      case ')': cur_.kind = Tok::RParen; return;
      case '{': cur_.kind = Tok::LBrace; return;
      case '}': cur_.kind = Tok::RBrace; return;
      case ',': cur_.kind = Tok::Comma; return;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'",
                          cur_.pos);
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  Token cur_;
};

ExprPtr make(ExprKind k, std::size_t pos) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->pos = pos;
  return e;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : lex_(s) {}

  ExprPtr run() {
    ExprPtr e = expr();
    if (lex_.peek().kind != Tok::End)
      throw SyntaxError("unexpected trailing input", lex_.peek().pos);
    return e;
  }

 private:
  Token expect(Tok k, const char* what) {
    if (lex_.peek().kind != k)
      throw SyntaxError(std::string("expected ") + what, lex_.peek().pos);
    return lex_.take();
  }

  static unsigned to_nat(const Token& t) {
    unsigned long v = 0;
    for (char c : t.text) {
      v = v * 10 + unsigned(c - '0');
      if (v > 1000000000UL)
        throw SyntaxError("number literal too large", t.pos);
    }
    return unsigned(v);
  }

  ExprPtr expr() {
    std::size_t pos = lex_.peek().pos;
    bool neg = false;
    if (lex_.peek().kind == Tok::Plus) {
      lex_.take();
    } else if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      neg = true;
    }
    ExprPtr acc = term();
    if (neg) {
      auto n = make(ExprKind::Neg, pos);
      std::const_pointer_cast<Expr>(n)->a = acc;
      acc = n;
    }
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k != Tok::Plus && k != Tok::Minus) break;
      Token op = lex_.take();
      ExprPtr rhs = term();
      auto n = make(k == Tok::Plus ? ExprKind::Add : ExprKind::Sub, op.pos);
      auto m = std::const_pointer_cast<Expr>(n);
      m->a = acc;
      m->b = rhs;
      acc = n;
    }
    return acc;
  }

  static bool starts_factor(Tok k) {
    return k == Tok::Number || k == Tok::Ident || k == Tok::LParen ||
           k == Tok::LBrace;
  }

  ExprPtr term() {
    ExprPtr acc = factor();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Star) {
        Token op = lex_.take();
        ExprPtr rhs = factor();
        auto n = make(ExprKind::Mul, op.pos);
        auto m = std::const_pointer_cast<Expr>(n);
        m->a = acc;
        m->b = rhs;
        acc = n;
      } else if (k == Tok::Ident || k == Tok::LParen || k == Tok::LBrace) {
        // Juxtaposition; numbers never follow implicitly.
        std::size_t pos = lex_.peek().pos;
        ExprPtr rhs = factor();
        auto n = make(ExprKind::Mul, pos);
        auto m = std::const_pointer_cast<Expr>(n);
        m->a = acc;
        m->b = rhs;
        acc = n;
      } else {
        break;
      }
    }
    return acc;
  }

  ExprPtr factor() {
    ExprPtr base = primary();
    for (;;) {
      if (lex_.peek().kind == Tok::Caret) {
        Token op = lex_.take();
        Token nt = expect(Tok::Number, "an exponent");
        auto n = make(ExprKind::Pow, op.pos);
        auto m = std::const_pointer_cast<Expr>(n);
        m->a = base;
        m->exponent = to_nat(nt);
        base = n;
      } else if (lex_.peek().kind == Tok::Slash) {
        Token op = lex_.take();
        Token dt = expect(Tok::Number, "a numeric divisor");
        Integer q(dt.text);
        if (q == 0) throw SyntaxError("division by zero", dt.pos);
        if (lex_.peek().kind == Tok::Caret)
          throw SyntaxError(
              "ambiguous exponent after division; add parentheses",
              lex_.peek().pos);
        auto c = make(ExprKind::Number, dt.pos);
        std::const_pointer_cast<Expr>(c)->number = Rational(Integer(1), q);
        auto n = make(ExprKind::Mul, op.pos);
        auto m = std::const_pointer_cast<Expr>(n);
        m->a = base;
        m->b = c;
        base = n;
      } else {
        break;
      }
    }
    return base;
  }

  ExprPtr primary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Number: {
        Token num = lex_.take();
        Integer p(num.text);
        Integer q(1);
        if (lex_.peek().kind == Tok::Slash) {
          lex_.take();
          Token den = expect(Tok::Number, "a denominator");
          q = Integer(den.text);
          if (q == 0) throw SyntaxError("zero denominator", den.pos);
        }
        auto n = make(ExprKind::Number, num.pos);
        std::const_pointer_cast<Expr>(n)->number = Rational(p, q);
        return n;
      }
      case Tok::Ident: {
        Token id = lex_.take();
        if (id.text == "u" && lex_.peek().kind == Tok::LParen) {
          lex_.take();
          std::vector<unsigned> idx;
          idx.push_back(to_nat(expect(Tok::Number, "a jet index")));
          while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            idx.push_back(to_nat(expect(Tok::Number, "a jet index")));
          }
          expect(Tok::RParen, "')'");
          auto n = make(ExprKind::Jet, id.pos);
          std::const_pointer_cast<Expr>(n)->jet = MultiIndex(idx);
          return n;
        }
        auto n = make(ExprKind::Ident, id.pos);
        std::const_pointer_cast<Expr>(n)->ident = id.text;
        return n;
      }
      case Tok::LParen: {
        lex_.take();
        ExprPtr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::LBrace: {
        Token open = lex_.take();
        ExprPtr a = expr();
        expect(Tok::Comma, "','");
        ExprPtr b = expr();
        expect(Tok::RBrace, "'}'");
        auto n = make(ExprKind::Bracket, open.pos);
        auto m = std::const_pointer_cast<Expr>(n);
        m->a = a;
        m->b = b;
        return n;
      }
      default:
        throw SyntaxError("expected a number, variable, '(', or '{'", t.pos);
    }
  }

  Lexer lex_;
};

// Generic elaboration over an algebra of values T supplied by a policy.
template <typename Policy>
typename Policy::value_type elaborate(const ExprPtr& e, Policy& p) {
  using T = typename Policy::value_type;
  switch (e->kind) {
    case ExprKind::Number: return p.number(e->number);
    case ExprKind::Ident: return p.ident(e->ident, e->pos);
    case ExprKind::Jet: return p.jet(e->jet, e->pos);
    case ExprKind::Neg: return p.neg(elaborate(e->a, p));
    case ExprKind::Add: {
      T a = elaborate(e->a, p);
      T b = elaborate(e->b, p);
      return p.add(a, b);
    }
    case ExprKind::Sub: {
      T a = elaborate(e->a, p);
      T b = elaborate(e->b, p);
      return p.sub(a, b);
    }
    case ExprKind::Mul: {
      T a = elaborate(e->a, p);
      T b = elaborate(e->b, p);
      return p.mul(a, b);
    }
    case ExprKind::Pow: return p.pow(elaborate(e->a, p), e->exponent);
    case ExprKind::Bracket: {
      T a = elaborate(e->a, p);
      T b = elaborate(e->b, p);
      return p.bracket(a, b, e->pos);
    }
  }
  throw Error("elaborate: unreachable");
}

struct PoissonPolicy {
  using value_type = PoissonElement;
  unsigned gens;
  std::map<std::string, unsigned> names;

  explicit PoissonPolicy(unsigned m) : gens(m) {
    for (unsigned i = 0; i < m; ++i)
      names["z" + std::to_string(i + 1)] = i;
    if (m == 2) {
      names["x"] = 0;
      names["y"] = 1;
    }
  }
  PoissonElement number(const Rational& c) {
    return PoissonElement::constant(gens, c);
  }
  PoissonElement ident(const std::string& s, std::size_t pos) {
    auto it = names.find(s);
    if (it == names.end())
      throw SyntaxError("unknown generator '" + s + "'", pos);
    return PoissonElement::generator(gens, it->second);
  }
  PoissonElement jet(const MultiIndex&, std::size_t pos) {
    throw SyntaxError("jet symbols are not allowed here", pos);
  }
  PoissonElement neg(const PoissonElement& a) { return -a; }
  PoissonElement add(const PoissonElement& a, const PoissonElement& b) {
    return a + b;
  }
  PoissonElement sub(const PoissonElement& a, const PoissonElement& b) {
    return a - b;
  }
  PoissonElement mul(const PoissonElement& a, const PoissonElement& b) {
    return a * b;
  }
  PoissonElement pow(const PoissonElement& a, unsigned k) { return a.pow(k); }
  PoissonElement bracket(const PoissonElement& a, const PoissonElement& b,
                         std::size_t) {
    return poisson_bracket(a, b);
  }
};

struct PolyPolicy {
  using value_type = RationalPolynomial;
  ContextPtr ctx;
  std::map<std::string, std::size_t> names;
  bool allow_brackets = false;
  bool allow_jets = false;

  RationalPolynomial number(const Rational& c) {
    return RationalPolynomial::constant(ctx, c);
  }
  RationalPolynomial ident(const std::string& s, std::size_t pos) {
    auto it = names.find(s);
    if (it == names.end())
      throw SyntaxError("unknown variable '" + s + "'", pos);
    return RationalPolynomial::variable(ctx, Variable::coordinate(it->second));
  }
  RationalPolynomial jet(const MultiIndex& a, std::size_t pos) {
    if (!allow_jets)
      throw SyntaxError("jet symbols are not allowed here", pos);
    if (a.arity() != ctx->coord_count())
      throw SyntaxError("jet arity does not match the coordinate count", pos);
    return RationalPolynomial::variable(ctx, Variable::jet(a));
  }
  RationalPolynomial neg(const RationalPolynomial& a) { return -a; }
  RationalPolynomial add(const RationalPolynomial& a,
                         const RationalPolynomial& b) {
    return a + b;
  }
  RationalPolynomial sub(const RationalPolynomial& a,
                         const RationalPolynomial& b) {
    return a - b;
  }
  RationalPolynomial mul(const RationalPolynomial& a,
                         const RationalPolynomial& b) {
    return a * b;
  }
  RationalPolynomial pow(const RationalPolynomial& a, unsigned k) {
    return a.pow(k);
  }
  RationalPolynomial bracket(const RationalPolynomial& a,
                             const RationalPolynomial& b, std::size_t pos) {
    if (!allow_brackets)
      throw SyntaxError("brackets are not allowed here", pos);
    return ps_bracket(a, b);
  }
};

void collect_jets(const ExprPtr& e, std::vector<MultiIndex>& out) {
  if (!e) return;
  if (e->kind == ExprKind::Jet) out.push_back(e->jet);
  collect_jets(e->a, out);
  collect_jets(e->b, out);
}

}  // namespace

ExprPtr parse_expression(const std::string& text) {
  Parser p(text);
  return p.run();
}

PoissonElement to_poisson(const ExprPtr& e, unsigned gens) {
  if (gens == 0) throw DomainError("to_poisson: need at least one generator");
  PoissonPolicy pol(gens);
  return elaborate(e, pol);
}

RationalPolynomial to_symplectic(const ExprPtr& e, unsigned rank) {
  if (rank == 0) throw DomainError("to_symplectic: rank must be positive");
  PolyPolicy pol;
  pol.ctx = symplectic_context(rank);
  pol.allow_brackets = true;
  for (unsigned k = 0; k < rank; ++k) {
    pol.names["x" + std::to_string(k + 1)] = 2 * k;
    pol.names["y" + std::to_string(k + 1)] = 2 * k + 1;
  }
  if (rank == 1) {
    pol.names["x"] = 0;
    pol.names["y"] = 1;
  }
  return elaborate(e, pol);
}

RationalPolynomial to_plane_polynomial(const ExprPtr& e) {
  PolyPolicy pol;
  pol.ctx = PolyContext::make({"x", "y"}, {});
  pol.names["x"] = 0;
  pol.names["y"] = 1;
  return elaborate(e, pol);
}

RationalPolynomial to_jet_polynomial(const ExprPtr& e,
                                     const std::vector<std::string>& coords) {
  if (coords.empty())
    throw DomainError("to_jet_polynomial: need at least one coordinate");
  std::vector<MultiIndex> jets;
  collect_jets(e, jets);
  for (const MultiIndex& a : jets)
    if (a.arity() != coords.size())
      throw SyntaxError("jet arity does not match the coordinate count",
                        e->pos);
  PolyPolicy pol;
  pol.ctx = PolyContext::make(coords, jets);
  pol.allow_jets = true;
  for (std::size_t i = 0; i < coords.size(); ++i) pol.names[coords[i]] = i;
  return elaborate(e, pol);
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace pf
