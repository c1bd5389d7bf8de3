#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pf/rational.hpp"

namespace pf {

// Exponent vector in Z_{>=0}^n with a fixed arity. Binary ops require equal
// arities and throw ArityMismatch otherwise.
class MultiIndex {
 public:
  MultiIndex() = default;  // the unique index of arity zero
  explicit MultiIndex(std::vector<unsigned> entries) : e_(std::move(entries)) {}
  static MultiIndex zero(std::size_t arity) {
    return MultiIndex(std::vector<unsigned>(arity, 0u));
  }
  static MultiIndex unit(std::size_t arity, std::size_t j);

  std::size_t arity() const { return e_.size(); }
  unsigned operator[](std::size_t i) const { return e_[i]; }
  const std::vector<unsigned>& entries() const { return e_; }
  unsigned total_degree() const;
  bool is_zero() const { return total_degree() == 0; }

  // Strict lexicographic order, leftmost entry most significant.
  std::strong_ordering lex_compare(const MultiIndex& o) const;
  // Total degree first, lex as tie-break.
  std::strong_ordering graded_lex_compare(const MultiIndex& o) const;

  bool operator==(const MultiIndex& o) const { return e_ == o.e_; }

  MultiIndex add(const MultiIndex& o) const;
  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    return a.add(b);
  }
  // a - b componentwise; nullopt if any entry would go negative.
  std::optional<MultiIndex> sub_checked(const MultiIndex& o) const;
  // Componentwise >=.
  bool dominates(const MultiIndex& o) const;

  // Product of entrywise factorials, exact.
  Integer factorial() const;

  std::string to_string() const;  // "(i1,i2,...)"
  static MultiIndex parse(const std::string& s);

 private:
  std::vector<unsigned> e_;
};

struct MultiIndexLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return a.lex_compare(b) == std::strong_ordering::less;
  }
};

struct MultiIndexGradedLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return a.graded_lex_compare(b) == std::strong_ordering::less;
  }
};

// All multi-indices of the given arity with total degree <= bound, in graded
// lex order. Truncation drivers enumerate through this.
std::vector<MultiIndex> multi_indices_up_to(std::size_t arity, unsigned bound);

}  // namespace pf
