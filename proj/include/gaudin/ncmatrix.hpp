#ifndef GAUDIN_NCMATRIX_HPP
#define GAUDIN_NCMATRIX_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "gaudin/error.hpp"
#include "gaudin/specseries.hpp"
#include "gaudin/superweyl.hpp"

namespace gaudin {

// What the matrix routines need from a coefficient ring.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
  static Rational one() { return Rational(1); }
  static bool exact_zero(const Rational& a) { return a.is_zero(); }
  static Rational invert(const Rational& a, const Truncation&) {
    if (a.is_zero()) throw Error(ErrorCode::NotInvertible, "division by zero");
    return Rational(1) / a;
  }
  static bool equal(const Rational& a, const Rational& b) { return a == b; }
};

template <>
struct RingTraits<NOElement> {
  static NOElement one() { return NOElement(1); }
  static bool exact_zero(const NOElement& a) { return a.is_zero(); }
  static NOElement invert(const NOElement& a, const Truncation&) {
    if (!a.is_scalar() || a.is_zero())
      throw Error(ErrorCode::NotInvertible, "only nonzero scalars are invertible in the Weyl superalgebra");
    return NOElement(Rational(1) / a.scalar_part());
  }
  static bool equal(const NOElement& a, const NOElement& b) { return a == b; }
};

template <>
struct RingTraits<PDO> {
  static PDO one() { return PDO(Rational(1)); }
  static bool exact_zero(const PDO& a) { return a.is_zero() && a.exact(); }
  static PDO invert(const PDO& a, const Truncation& t) { return pdo_invert(a, t); }
  static bool equal(const PDO& a, const PDO& b) { return equal_on_window(a, b); }
};

template <>
struct RingTraits<WSeries> {
  static WSeries one() { return WSeries(Rational(1)); }
  static bool exact_zero(const WSeries& a) { return a.is_zero() && a.w_top() >= kPosInf; }
  static WSeries invert(const WSeries& a, const Truncation& t) { return ws_invert(a, t); }
  static bool equal(const WSeries& a, const WSeries& b) { return equal_on_window(a, b); }
};

// Rectangular matrix over a (super)ring. Square matrices carry one parity
// sequence shared by rows and columns; entry (i,j) is declared to have parity
// bar(i) + bar(j).
template <class R>
class NCMatrix {
 public:
  NCMatrix() = default;
  NCMatrix(int rows, int cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
    parity_ = ParitySequence(std::vector<int>(rows, 1));
  }
  NCMatrix(int size, ParitySequence parity) : NCMatrix(size, size) {
    if (parity.size() != size) throw Error(ErrorCode::InvalidSizes, "parity sequence length mismatch");
    parity_ = std::move(parity);
  }

  static NCMatrix identity(int size, ParitySequence parity) {
    NCMatrix m(size, std::move(parity));
    for (int i = 0; i < size; ++i) m(i, i) = RingTraits<R>::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_; }
  bool square() const { return rows_ == cols_; }
  const ParitySequence& parity() const { return parity_; }
  void set_parity(ParitySequence p) { parity_ = std::move(p); }

  R& operator()(int i, int j) { return entries_[i * cols_ + j]; }
  const R& operator()(int i, int j) const { return entries_[i * cols_ + j]; }

  NCMatrix block(int r0, int c0, int nr, int nc) const {
    NCMatrix out(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    if (nr == nc && r0 == c0) out.parity_ = parity_.slice(r0, nr);
    return out;
  }

  template <class F>
  auto map(F&& f) const -> NCMatrix<decltype(f(std::declval<const R&>()))> {
    NCMatrix<decltype(f(std::declval<const R&>()))> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    if (square()) out.set_parity(parity_);
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<R> entries_;
  ParitySequence parity_;
};

template <class R>
NCMatrix<R> operator*(const NCMatrix<R>& a, const NCMatrix<R>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidSizes, "matrix product shape mismatch");
  NCMatrix<R> out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      R acc{};
      for (int l = 0; l < a.cols(); ++l) {
        if (RingTraits<R>::exact_zero(a(i, l)) || RingTraits<R>::exact_zero(b(l, j))) continue;
        acc += a(i, l) * b(l, j);
      }
      out(i, j) = std::move(acc);
    }
  if (a.square() && b.square() && a.parity() == b.parity()) out.set_parity(a.parity());
  return out;
}

template <class R>
NCMatrix<R> operator-(const NCMatrix<R>& a, const NCMatrix<R>& b) {
  NCMatrix<R> out = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

template <class R>
NCMatrix<R> operator+(const NCMatrix<R>& a, const NCMatrix<R>& b) {
  NCMatrix<R> out = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

namespace detail {

inline int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

template <class R>
R ordered_product(const std::vector<const R*>& factors) {
  for (const R* f : factors)
    if (RingTraits<R>::exact_zero(*f)) return R{};
  R acc = *factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = acc * *factors[i];
  return acc;
}

}  // namespace detail

// Column determinant: sum over permutations, factors multiplied in column order.
template <class R>
R cdet(const NCMatrix<R>& a) {
  const int n = a.size();
  if (n == 0) return RingTraits<R>::one();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  R acc{};
  std::vector<const R*> f(n);
  do {
    for (int c = 0; c < n; ++c) f[c] = &a(p[c], c);
    R term = detail::ordered_product(f);
    if (detail::permutation_sign(p) < 0)
      acc -= term;
    else
      acc += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

// Row determinant: factors multiplied in row order.
template <class R>
R rdet(const NCMatrix<R>& a) {
  const int n = a.size();
  if (n == 0) return RingTraits<R>::one();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  R acc{};
  std::vector<const R*> f(n);
  do {
    for (int r = 0; r < n; ++r) f[r] = &a(r, p[r]);
    R term = detail::ordered_product(f);
    if (detail::permutation_sign(p) < 0)
      acc -= term;
    else
      acc += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

// Principal quasi-minors d_1..d_N by Gaussian elimination without pivoting.
// Row operations multiply on the left, so the diagonal after eliminating the
// first i-1 columns is the Schur complement of the leading block.
template <class R>
std::vector<R> quasi_minors(const NCMatrix<R>& a, const Truncation& t) {
  const int n = a.size();
  NCMatrix<R> m = a;
  std::vector<R> d;
  for (int c = 0; c < n; ++c) {
    d.push_back(m(c, c));
    if (c + 1 == n) break;
    R inv = RingTraits<R>::invert(m(c, c), t);
    for (int r = c + 1; r < n; ++r) {
      if (RingTraits<R>::exact_zero(m(r, c))) continue;
      R factor = m(r, c) * inv;
      for (int col = c + 1; col < n; ++col) {
        if (RingTraits<R>::exact_zero(m(c, col))) continue;
        m(r, col) -= factor * m(c, col);
      }
    }
  }
  return d;
}

// Two-sided inverse by Gauss-Jordan elimination with left row operations.
template <class R>
NCMatrix<R> inverse(const NCMatrix<R>& a, const Truncation& t) {
  const int n = a.size();
  NCMatrix<R> m = a;
  NCMatrix<R> inv = NCMatrix<R>::identity(n, a.parity());
  for (int c = 0; c < n; ++c) {
    R p = RingTraits<R>::invert(m(c, c), t);
    for (int j = 0; j < n; ++j) {
      if (!RingTraits<R>::exact_zero(m(c, j))) m(c, j) = p * m(c, j);
      if (!RingTraits<R>::exact_zero(inv(c, j))) inv(c, j) = p * inv(c, j);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || RingTraits<R>::exact_zero(m(r, c))) continue;
      R factor = m(r, c);
      for (int j = 0; j < n; ++j) {
        if (!RingTraits<R>::exact_zero(m(c, j))) m(r, j) -= factor * m(c, j);
        if (!RingTraits<R>::exact_zero(inv(c, j))) inv(r, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

// d_i = a_ii - (row i, first i-1 columns) W^{-1} (column i, first i-1 rows),
// with W the leading (i-1)x(i-1) block. i is 1-based.
template <class R>
R quasi_minor(const NCMatrix<R>& a, int i, const Truncation& t) {
  if (i < 1 || i > a.size()) throw Error(ErrorCode::InvalidSizes, "quasi-minor index out of range");
  if (i == 1) return a(0, 0);
  NCMatrix<R> w_inv = inverse(a.block(0, 0, i - 1, i - 1), t);
  NCMatrix<R> row = a.block(i - 1, 0, 1, i - 1);
  NCMatrix<R> col = a.block(0, i - 1, i - 1, 1);
  NCMatrix<R> corr = row * w_inv * col;
  return a(i - 1, i - 1) - corr(0, 0);
}

// Ber^s A = d_1^{s_1} ... d_N^{s_N} for the parity attached to A.
template <class R>
R ber_parity(const NCMatrix<R>& a, const Truncation& t) {
  std::vector<R> d = quasi_minors(a, t);
  R acc = RingTraits<R>::one();
  for (int i = 0; i < a.size(); ++i) acc = acc * (a.parity()[i] > 0 ? d[i] : RingTraits<R>::invert(d[i], t));
  return acc;
}

// Standard-parity Berezinian through cdet of the even block times rdet of the
// odd block of the inverse.
template <class R>
R ber_cdet_rdet(const NCMatrix<R>& a, const Truncation& t) {
  const int m = a.parity().m();
  if (a.parity() != ParitySequence::standard(m, a.size() - m))
    throw Error(ErrorCode::InvalidSizes, "cdet-rdet formula needs standard parity");
  NCMatrix<R> inv = inverse(a, t);
  return cdet(a.block(0, 0, m, m)) * rdet(inv.block(m, m, a.size() - m, a.size() - m));
}

// Ber^{s|r} W * Ber^{s|_{N-r}} (Z - Y W^{-1} X).
template <class R>
R block_ber(const NCMatrix<R>& a, int r, const Truncation& t) {
  const int n = a.size();
  if (r < 1 || r > n) throw Error(ErrorCode::InvalidSizes, "block split out of range");
  NCMatrix<R> w = a.block(0, 0, r, r);
  if (r == n) return ber_parity(w, t);
  NCMatrix<R> x = a.block(0, r, r, n - r);
  NCMatrix<R> y = a.block(r, 0, n - r, r);
  NCMatrix<R> z = a.block(r, r, n - r, n - r);
  NCMatrix<R> schur = z - y * inverse(w, t) * x;
  schur.set_parity(a.parity().slice(r, n - r));
  return ber_parity(w, t) * ber_parity(schur, t);
}

// sigma(A)_{ij} = a_{sigma^{-1}(i), sigma^{-1}(j)}; sigma given by its images,
// 0-based.
template <class R>
NCMatrix<R> permute(const NCMatrix<R>& a, const std::vector<int>& sigma) {
  const int n = a.size();
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) inv[sigma[i]] = i;
  std::vector<int> par(n);
  for (int i = 0; i < n; ++i) par[i] = a.parity()[inv[i]];
  NCMatrix<R> out(n, ParitySequence(par));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = a(inv[i], inv[j]);
  return out;
}

// A = 1 + wM with every entry of M starting at w^1; inverse by the geometric
// series in wM, exact through the truncation's w_top.
NCMatrix<WSeries> affine_inverse(const NCMatrix<WSeries>& a, const Truncation& t);

struct ManinViolation {
  int i, j, p, q;  // 1-based
};

// Checks [a_ij, a_pq] = (-1)^{ij + ip + jp} [a_pj, a_iq] with supercommutators
// taken with the declared entry parities. Returns the first violation.
template <class R>
std::optional<ManinViolation> is_manin(const NCMatrix<R>& a) {
  const int n = a.size();
  auto bar = [&](int i) { return a.parity().bar(i); };
  auto sc = [&](const R& x, int px, const R& y, int py) {
    if (RingTraits<R>::exact_zero(x) || RingTraits<R>::exact_zero(y)) return R{};
    R xy = x * y, yx = y * x;
    return (px * py) % 2 ? xy + yx : xy - yx;
  };
  // Each supercommutator of two entries appears in several relations.
  std::vector<std::optional<R>> memo(static_cast<std::size_t>(n) * n * n * n);
  auto entry_sc = [&](int i, int j, int p, int q) -> const R& {
    auto& slot = memo[((static_cast<std::size_t>(i) * n + j) * n + p) * n + q];
    if (slot) return *slot;
    const int px = bar(i) + bar(j), py = bar(p) + bar(q);
    const auto& swapped = memo[((static_cast<std::size_t>(p) * n + q) * n + i) * n + j];
    if (swapped)
      slot = (px * py) % 2 ? R(*swapped) : -*swapped;
    else
      slot = sc(a(i, j), px, a(p, q), py);
    return *slot;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          const R& lhs = entry_sc(i, j, p, q);
          R rhs = entry_sc(p, j, i, q);
          int e = bar(i) * bar(j) + bar(i) * bar(p) + bar(j) * bar(p);
          if (e % 2) rhs = -rhs;
          if (!RingTraits<R>::equal(lhs, rhs)) return ManinViolation{i + 1, j + 1, p + 1, q + 1};
        }
  return std::nullopt;
}

}  // namespace gaudin

#endif  // GAUDIN_NCMATRIX_HPP
