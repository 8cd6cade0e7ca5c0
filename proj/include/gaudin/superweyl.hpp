#ifndef GAUDIN_SUPERWEYL_HPP
#define GAUDIN_SUPERWEYL_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gaudin/rational.hpp"

namespace gaudin {

inline constexpr int kMaxGenerators = 16;

// Sequence of +1 (even) and -1 (odd) labels for rows and columns.
class ParitySequence {
 public:
  ParitySequence() = default;
  explicit ParitySequence(std::vector<int> entries);
  // (+1)^m (-1)^n.
  static ParitySequence standard(int m, int n);
  // Concatenation of blocks of +1 / -1 with the given lengths.
  static ParitySequence blocks(std::initializer_list<std::pair<int, int>> runs);

  const std::vector<int>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  int operator[](int i) const { return entries_[i]; }
  // 0 for even, 1 for odd (0-based index).
  int bar(int i) const { return entries_[i] < 0 ? 1 : 0; }
  int m() const;
  int n() const { return size() - m(); }
  ParitySequence slice(int begin, int count) const;

  friend bool operator==(const ParitySequence&, const ParitySequence&) = default;

 private:
  std::vector<int> entries_;
};

// Sizes of the coordinate matrix x_{i,a}: rows i = 1..m+n (the first m even),
// columns a = 1..k. Generators are indexed column-major, g = (a-1)(m+n) + (i-1),
// so index order is the canonical (column, row) order.
class Layout {
 public:
  Layout() = default;
  Layout(int m, int n, int k);

  int m() const { return m_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int rows() const { return m_ + n_; }
  int generators() const { return rows() * k_; }
  bool empty() const { return k_ == 0 || rows() == 0; }

  int index(int row, int col) const { return (col - 1) * rows() + (row - 1); }
  int row_of(int g) const { return g % rows() + 1; }
  int col_of(int g) const { return g / rows() + 1; }
  bool odd(int g) const { return (odd_mask_ >> g) & 1u; }
  std::uint32_t odd_mask() const { return odd_mask_; }

  friend bool operator==(const Layout& a, const Layout& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.k_ == b.k_;
  }

 private:
  int m_ = 0, n_ = 0, k_ = 0;
  std::uint32_t odd_mask_ = 0;
};

enum class Kind : std::uint8_t { X = 0, Del = 1 };

struct Letter {
  Kind kind;
  int row;
  int col;
};

// Normal-ordered monomial: all x's (in index order) followed by all derivations
// (in index order). Odd exponents are 0 or 1.
struct NOWord {
  std::array<std::uint8_t, kMaxGenerators> x{};
  std::array<std::uint8_t, kMaxGenerators> d{};

  bool is_identity() const;
  bool has_derivations() const;
  int parity(const Layout& layout) const;
  friend auto operator<=>(const NOWord&, const NOWord&) = default;
};

struct Term {
  NOWord word;
  Rational coeff;
};

class NOElement;

// Collects unsorted terms; finish() sorts, merges and drops zeros.
class TermBuffer {
 public:
  void push(const NOWord& w, Rational c) { terms_.push_back({w, std::move(c)}); }
  void push(const NOWord& w, const Rational& c, std::int64_t mult);
  void add(const NOElement& e, const Rational& scale);
  void add_product(const NOElement& p, const NOElement& q, const Rational& scale);
  void note_layout(const Layout& layout);
  bool empty() const { return terms_.empty(); }
  NOElement finish();

 private:
  std::vector<Term> terms_;
  Layout layout_;
};

// Element of the Weyl superalgebra: finite rational combination of normal-ordered
// words, stored sorted by word with no zero coefficients. A default layout marks
// a pure scalar which combines with any layout.
class NOElement {
 public:
  NOElement() = default;
  NOElement(Rational scalar);  // NOLINT(google-explicit-constructor)
  NOElement(long long scalar) : NOElement(Rational(scalar)) {}  // NOLINT
  NOElement(const Layout& layout, const NOWord& word, Rational coeff);

  static NOElement x(const Layout& layout, int row, int col);
  static NOElement del(const Layout& layout, int row, int col);
  static NOElement letter(const Layout& layout, const Letter& l);

  const std::vector<Term>& terms() const { return terms_; }
  const Layout& layout() const { return layout_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const;
  // Coefficient of the identity word.
  Rational scalar_part() const;
  Rational coeff(const NOWord& w) const;
  // 0 or 1 for homogeneous elements, nullopt otherwise; zero is reported even.
  std::optional<int> parity() const;
  bool has_odd_generators() const;

  NOElement& operator+=(const NOElement& rhs);
  NOElement& operator-=(const NOElement& rhs);
  NOElement& operator*=(const Rational& s);
  friend NOElement operator+(NOElement a, const NOElement& b) { return a += b; }
  friend NOElement operator-(NOElement a, const NOElement& b) { return a -= b; }
  friend NOElement operator*(NOElement a, const Rational& s) { return a *= s; }
  friend NOElement operator*(const Rational& s, NOElement a) { return a *= s; }
  friend NOElement operator*(const NOElement& a, const NOElement& b);
  NOElement operator-() const;

  friend bool operator==(const NOElement& a, const NOElement& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  friend class TermBuffer;
  Layout layout_;
  std::vector<Term> terms_;
};

bool operator==(const Term& a, const Term& b);

Layout merge_layouts(const Layout& a, const Layout& b);

// Normal-ordered expansion of the product of two words, with integer
// multiplicities. Appends to out.
void multiply_words(const Layout& layout, const NOWord& a, const NOWord& b,
                    std::vector<std::pair<NOWord, std::int64_t>>& out);

// The :m: symbol: sort the letters into canonical order, track the
// supercommutativity sign, drop every contraction term. nullopt if an odd letter
// repeats.
struct OrderedSymbol {
  int sign = 1;
  std::optional<NOWord> word;
};
OrderedSymbol normal_order_symbol(const Layout& layout, std::span<const Letter> letters);

// pq - (-1)^{|p||q|} qp. Throws NonHomogeneous if either argument is not.
NOElement super_commutator(const NOElement& p, const NOElement& q);

// Images of gl(m|n) and gl(k) generators: sum_a x_{i,a} d_{j,a} and
// sum_i x_{i,a} d_{i,b}.
NOElement pi_mn(const Layout& layout, int i, int j);
NOElement pi_k(const Layout& layout, int a, int b);

std::string word_to_string(const Layout& layout, const NOWord& w);

}  // namespace gaudin

#endif  // GAUDIN_SUPERWEYL_HPP
