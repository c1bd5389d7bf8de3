#include "pf/multiindex.hpp"

#include <sstream>

#include "pf/errors.hpp"

namespace pf {

namespace {
void require_same_arity(const MultiIndex& a, const MultiIndex& b,
                        const char* op) {
  if (a.arity() != b.arity())
    throw ArityMismatch(std::string(op) + ": arity " +
                        std::to_string(a.arity()) + " vs " +
                        std::to_string(b.arity()));
}
}  // namespace

MultiIndex MultiIndex::unit(std::size_t arity, std::size_t j) {
  if (j >= arity) throw DomainError("MultiIndex::unit: index out of range");
  std::vector<unsigned> e(arity, 0u);
  e[j] = 1u;
  return MultiIndex(std::move(e));
}

unsigned MultiIndex::total_degree() const {
  unsigned s = 0;
  for (unsigned x : e_) s += x;
  return s;
}

std::strong_ordering MultiIndex::lex_compare(const MultiIndex& o) const {
  require_same_arity(*this, o, "lex_compare");
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] != o.e_[i])
      return e_[i] < o.e_[i] ? std::strong_ordering::less
                             : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering MultiIndex::graded_lex_compare(const MultiIndex& o) const {
  require_same_arity(*this, o, "graded_lex_compare");
  unsigned da = total_degree(), db = o.total_degree();
  if (da != db)
    return da < db ? std::strong_ordering::less : std::strong_ordering::greater;
  return lex_compare(o);
}

MultiIndex MultiIndex::add(const MultiIndex& o) const {
  require_same_arity(*this, o, "add");
  std::vector<unsigned> r(e_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.e_[i];
  return MultiIndex(std::move(r));
}

std::optional<MultiIndex> MultiIndex::sub_checked(const MultiIndex& o) const {
  require_same_arity(*this, o, "sub_checked");
  std::vector<unsigned> r(e_);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < o.e_[i]) return std::nullopt;
    r[i] -= o.e_[i];
  }
  return MultiIndex(std::move(r));
}

bool MultiIndex::dominates(const MultiIndex& o) const {
  require_same_arity(*this, o, "dominates");
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] < o.e_[i]) return false;
  return true;
}

Integer MultiIndex::factorial() const {
  Integer r(1);
  for (unsigned x : e_) r *= pf::factorial(x);
  return r;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) os << ',';
    os << e_[i];
  }
  os << ')';
  return os.str();
}

MultiIndex MultiIndex::parse(const std::string& s) {
  std::size_t i = 0, n = s.size();
  auto skip_ws = [&] {
    while (i < n && (s[i] == ' ' || s[i] == '\t')) ++i;
  };
  skip_ws();
  if (i >= n || s[i] != '(')
    throw DomainError("MultiIndex::parse: expected '(' in '" + s + "'");
  ++i;
  std::vector<unsigned> e;
  skip_ws();
  if (i < n && s[i] == ')') return MultiIndex(std::move(e));
  for (;;) {
    skip_ws();
    if (i >= n || s[i] < '0' || s[i] > '9')
      throw DomainError("MultiIndex::parse: expected digit in '" + s + "'");
    unsigned long v = 0;
    while (i < n && s[i] >= '0' && s[i] <= '9') {
      v = v * 10 + (unsigned long)(s[i] - '0');
      if (v > 1000000ul)
        throw DomainError("MultiIndex::parse: entry too large in '" + s + "'");
      ++i;
    }
    e.push_back((unsigned)v);
    skip_ws();
    if (i < n && s[i] == ',') {
      ++i;
      continue;
    }
    if (i < n && s[i] == ')') {
      ++i;
      break;
    }
    throw DomainError("MultiIndex::parse: expected ',' or ')' in '" + s + "'");
  }
  skip_ws();
  if (i != n)
    throw DomainError("MultiIndex::parse: trailing input in '" + s + "'");
  return MultiIndex(std::move(e));
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t arity, unsigned bound) {
  std::vector<MultiIndex> out;
  std::vector<unsigned> cur(arity, 0u);
  // Enumerate recursively for each total degree to get graded lex order.
  auto rec = [&](auto&& self, std::size_t pos, unsigned remaining) -> void {
    if (pos + 1 == arity) {
      cur[pos] = remaining;
      out.push_back(MultiIndex(cur));
      return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  if (arity == 0) {
    out.push_back(MultiIndex::zero(0));
    return out;
  }
  for (unsigned d = 0; d <= bound; ++d) rec(rec, 0, d);
  return out;
}

}  // namespace pf
