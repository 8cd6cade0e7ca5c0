#ifndef GAUDIN_SPECSERIES_HPP
#define GAUDIN_SPECSERIES_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "gaudin/bounds.hpp"
#include "gaudin/superweyl.hpp"

namespace gaudin {

// Truncated Laurent series in a spectral variable (v or u) with Weyl-superalgebra
// coefficients. Degrees >= floor() are exact; everything below is unknown and
// never stored. top() is an upper bound on every degree of the untruncated
// series.
class VSeries {
 public:
  VSeries() = default;
  explicit VSeries(NOElement constant);
  VSeries(std::map<int, NOElement> coeffs, int floor, int top);

  static VSeries monomial(NOElement c, int degree);
  // v - z, exact.
  static VSeries linear(const Rational& z);
  // (v - z)^{-1} expanded in v^{-1} down to the floor.
  static VSeries pole(const Rational& z, int floor);

  const std::map<int, NOElement>& coeffs() const { return coeffs_; }
  int floor() const { return floor_; }
  int top() const { return top_; }
  bool exact() const { return floor_ <= kNegInf; }
  bool certified(int degree) const { return degree >= floor_; }
  bool is_zero() const { return coeffs_.empty(); }
  // Highest degree carrying a nonzero coefficient, if any.
  std::optional<int> leading_degree() const;
  NOElement coeff(int degree) const;
  Layout layout() const;

  VSeries derivative(int times) const;
  VSeries truncated(int floor) const;

  VSeries& operator+=(const VSeries& rhs);
  VSeries& operator-=(const VSeries& rhs);
  friend VSeries operator+(VSeries a, const VSeries& b) { return a += b; }
  friend VSeries operator-(VSeries a, const VSeries& b) { return a -= b; }
  friend VSeries operator*(const VSeries& a, const VSeries& b) { return mul(a, b, kNegInf); }
  friend VSeries operator*(VSeries a, const Rational& s);
  VSeries operator-() const;

  // Product restricted to degrees >= floor_cap.
  static VSeries mul(const VSeries& a, const VSeries& b, int floor_cap);
  // Adds scale*a*b into acc at degrees >= floor. Returns true if any product
  // term was dropped for lying below floor.
  static bool mul_accumulate(const VSeries& a, const VSeries& b, const Rational& scale,
                             int floor, std::map<int, TermBuffer>& acc);

  std::string to_string(char var = 'v') const;

 private:
  void normalize();

  std::map<int, NOElement> coeffs_;
  int floor_ = kNegInf;
  int top_ = kNegInf;
};

// Two-sided inverse of a series whose leading coefficient is a nonzero scalar,
// exact down to max(floor, s.floor() - 2*deg).
VSeries series_invert(const VSeries& s, int floor);

bool equal_on_window(const VSeries& a, const VSeries& b);

// Pseudodifferential operator sum_r c_r(v) d^r with coefficients written to the
// left. Certified on the rectangle v-degree >= v_floor, order >= d_floor. The
// caps record the truncation a computation asked for; products never compute
// anything below them, and raise their floors to the cap only when something was
// actually dropped.
class PDO {
 public:
  PDO() = default;
  PDO(const Rational& scalar);  // NOLINT(google-explicit-constructor)
  explicit PDO(VSeries order_zero);
  PDO(std::map<int, VSeries> coeffs, int d_floor, int d_top);

  static PDO monomial(VSeries c, int order);
  // d^order with coefficient 1.
  static PDO del(int order = 1);
  // d - lambda.
  static PDO del_minus(const Rational& lambda);

  const std::map<int, VSeries>& coeffs() const { return coeffs_; }
  int v_floor() const { return v_floor_; }
  int v_top() const { return v_top_; }
  int d_floor() const { return d_floor_; }
  int d_top() const { return d_top_; }
  int v_cap() const { return v_cap_; }
  int d_cap() const { return d_cap_; }
  bool exact() const { return v_floor_ <= kNegInf && d_floor_ <= kNegInf; }
  bool is_zero() const { return coeffs_.empty(); }
  bool certified(int v_degree, int order) const {
    return v_degree >= v_floor_ && order >= d_floor_;
  }
  std::optional<int> leading_order() const;
  VSeries coeff(int order) const;
  NOElement coeff(int v_degree, int order) const;
  std::optional<int> parity() const;
  Layout layout() const;
  bool is_one() const;

  PDO with_caps(int v_cap, int d_cap) const;
  PDO with_caps(const Truncation& t) const { return with_caps(t.v_floor, t.d_floor); }
  // Caller asserts no order above d_top survives in the untruncated operator.
  PDO bounded_above(int d_top) const;

  PDO& operator+=(const PDO& rhs);
  PDO& operator-=(const PDO& rhs);
  friend PDO operator+(PDO a, const PDO& b) { return a += b; }
  friend PDO operator-(PDO a, const PDO& b) { return a -= b; }
  friend PDO operator*(const PDO& a, const PDO& b);
  friend PDO operator*(PDO a, const Rational& s);
  PDO operator-() const;

  std::string to_string(char var = 'v') const;

 private:
  friend PDO pdo_invert(const PDO& p, const Truncation& trunc);
  void normalize();

  std::map<int, VSeries> coeffs_;
  int v_floor_ = kNegInf;
  int v_top_ = kNegInf;
  int d_floor_ = kNegInf;
  int d_top_ = kNegInf;
  int v_cap_ = kNegInf;
  int d_cap_ = kNegInf;
};

// Inverse of c d^M (1 + lower order) with c an invertible series.
PDO pdo_invert(const PDO& p, const Truncation& trunc);

bool equal_on_window(const PDO& a, const PDO& b);

// Laurent series in an even central variable w with PDO coefficients, exact for
// powers <= w_top(). w_low() bounds the pole order from below.
class WSeries {
 public:
  WSeries() = default;
  WSeries(const Rational& scalar);  // NOLINT(google-explicit-constructor)
  explicit WSeries(PDO constant);
  WSeries(std::map<int, PDO> coeffs, int w_low, int w_top);

  static WSeries monomial(PDO c, int power);

  const std::map<int, PDO>& coeffs() const { return coeffs_; }
  int w_low() const { return w_low_; }
  int w_top() const { return w_top_; }
  int w_cap() const { return w_cap_; }
  bool is_zero() const;
  bool is_one() const;
  PDO coeff(int power) const;
  std::optional<int> lowest_power() const;
  std::optional<int> parity() const;

  WSeries shifted(int power) const;
  WSeries truncated(int w_top) const;
  WSeries with_cap(int w_cap) const;

  WSeries& operator+=(const WSeries& rhs);
  WSeries& operator-=(const WSeries& rhs);
  friend WSeries operator+(WSeries a, const WSeries& b) { return a += b; }
  friend WSeries operator-(WSeries a, const WSeries& b) { return a -= b; }
  friend WSeries operator*(const WSeries& a, const WSeries& b);
  friend WSeries operator*(WSeries a, const Rational& s);
  WSeries operator-() const;

  std::string to_string() const;

 private:
  void normalize();

  std::map<int, PDO> coeffs_;
  int w_low_ = kPosInf;
  int w_top_ = kPosInf;
  int w_cap_ = kPosInf;
};

WSeries ws_invert(const WSeries& s, const Truncation& trunc);

bool equal_on_window(const WSeries& a, const WSeries& b);

// d^r -> (w^{-1} + d)^r, coefficients fixed.
WSeries phi_map(const PDO& p, int w_cap);

// v -> v + w^{-1}, d_v -> d_v + w^{-1}, Weyl generators fixed.
WSeries phi_hat_map(const PDO& p, int w_cap);

}  // namespace gaudin

#endif  // GAUDIN_SPECSERIES_HPP
