#include "gaudin/specseries.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "gaudin/error.hpp"

namespace gaudin {

namespace {

std::optional<int> combine_parity(std::optional<int> acc, std::optional<int> next, bool& mixed) {
  if (!next) {
    mixed = true;
    return acc;
  }
  if (acc && *acc != *next) mixed = true;
  return next;
}

}  // namespace

// ---------------------------------------------------------------------------
// VSeries

VSeries::VSeries(NOElement constant) {
  if (!constant.is_zero()) {
    coeffs_.emplace(0, std::move(constant));
    top_ = 0;
  }
}

VSeries::VSeries(std::map<int, NOElement> coeffs, int floor, int top)
    : coeffs_(std::move(coeffs)), floor_(floor), top_(top) {
  normalize();
}

void VSeries::normalize() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->first < floor_ || it->second.is_zero())
      it = coeffs_.erase(it);
    else
      ++it;
  }
  if (!coeffs_.empty()) top_ = std::max(top_, coeffs_.rbegin()->first);
  if (exact() && coeffs_.empty()) top_ = kNegInf;
}

VSeries VSeries::monomial(NOElement c, int degree) {
  std::map<int, NOElement> m;
  m.emplace(degree, std::move(c));
  return VSeries(std::move(m), kNegInf, kNegInf);
}

VSeries VSeries::linear(const Rational& z) {
  std::map<int, NOElement> m;
  m.emplace(1, NOElement(Rational(1)));
  m.emplace(0, NOElement(-z));
  return VSeries(std::move(m), kNegInf, 1);
}

VSeries VSeries::pole(const Rational& z, int floor) {
  std::map<int, NOElement> m;
  Rational power(1);
  for (int d = -1; d >= floor; --d) {
    m.emplace(d, NOElement(power));
    power *= z;
  }
  return VSeries(std::move(m), floor, -1);
}

std::optional<int> VSeries::leading_degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.rbegin()->first;
}

NOElement VSeries::coeff(int degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? NOElement() : it->second;
}

Layout VSeries::layout() const {
  Layout l;
  for (const auto& [d, c] : coeffs_) l = merge_layouts(l, c.layout());
  return l;
}

VSeries VSeries::derivative(int times) const {
  if (times == 0) return *this;
  std::map<int, NOElement> out;
  for (const auto& [d, c] : coeffs_) {
    Rational f = falling_factorial(d, times);
    if (!f.is_zero()) out.emplace(d - times, c * f);
  }
  return VSeries(std::move(out), bound_add(floor_, -times),
                 exact() && out.empty() ? kNegInf : bound_add(top_, -times));
}

VSeries VSeries::truncated(int floor) const {
  if (floor <= floor_) return *this;
  VSeries r(*this);
  r.floor_ = floor;
  r.normalize();
  return r;
}

VSeries& VSeries::operator+=(const VSeries& rhs) {
  floor_ = std::max(floor_, rhs.floor_);
  top_ = std::max(top_, rhs.top_);
  for (const auto& [d, c] : rhs.coeffs_) {
    if (d < floor_) continue;
    auto [it, inserted] = coeffs_.try_emplace(d, c);
    if (!inserted) it->second += c;
  }
  normalize();
  return *this;
}

VSeries& VSeries::operator-=(const VSeries& rhs) { return *this += -rhs; }

VSeries VSeries::operator-() const {
  VSeries r(*this);
  for (auto& [d, c] : r.coeffs_) c = -c;
  return r;
}

VSeries operator*(VSeries a, const Rational& s) {
  for (auto& [d, c] : a.coeffs_) c *= s;
  a.normalize();
  return a;
}

bool VSeries::mul_accumulate(const VSeries& a, const VSeries& b, const Rational& scale, int floor,
                             std::map<int, TermBuffer>& acc) {
  bool dropped = false;
  if (scale.is_zero()) return dropped;
  for (const auto& [da, ca] : a.coeffs_) {
    auto start = b.coeffs_.lower_bound(floor <= kNegInf ? kNegInf : floor - da);
    if (start != b.coeffs_.begin()) dropped = true;
    for (auto it = start; it != b.coeffs_.end(); ++it) acc[da + it->first].add_product(ca, it->second, scale);
  }
  return dropped;
}

VSeries VSeries::mul(const VSeries& a, const VSeries& b, int floor_cap) {
  const int formula = std::max(bound_add(a.floor_, b.top_), bound_add(a.top_, b.floor_));
  const int limit = std::max(formula, floor_cap);
  int top = bound_add(a.top_, b.top_);
  std::map<int, TermBuffer> acc;
  const int floor = mul_accumulate(a, b, Rational(1), limit, acc) ? limit : formula;
  std::map<int, NOElement> out;
  for (auto& [d, buf] : acc) out.emplace(d, buf.finish());
  return VSeries(std::move(out), floor, top);
}

std::string VSeries::to_string(char var) const {
  if (coeffs_.empty()) return exact() ? "0" : "O(" + std::string(1, var) + "^" + std::to_string(floor_) + ")";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << '(' << it->second.to_string() << ')';
    if (it->first != 0) os << ' ' << var << '^' << it->first;
  }
  if (!exact()) os << " + O(" << var << '^' << floor_ << ')';
  return os.str();
}

VSeries series_invert(const VSeries& s, int floor) {
  auto lead = s.leading_degree();
  if (!lead) throw Error(ErrorCode::NotInvertible, "inverting a zero series");
  const int deg = *lead;
  NOElement c0 = s.coeff(deg);
  if (!c0.is_scalar()) throw Error(ErrorCode::NotInvertible, "leading coefficient is not a scalar");
  const Rational inv0 = Rational(1) / c0.scalar_part();
  if (s.exact() && s.coeffs().size() == 1) return VSeries::monomial(NOElement(inv0), -deg);
  const int out_floor = std::max(floor, bound_add(s.floor(), -2 * deg));
  const int steps = -deg - out_floor;  // relative indices 0..steps
  std::vector<NOElement> lower;        // c_j = coefficient of degree deg - j
  std::vector<NOElement> q;
  for (int i = 0; i <= steps; ++i) lower.push_back(s.coeff(deg - i));
  for (int i = 0; i <= steps; ++i) {
    TermBuffer buf;
    if (i == 0) buf.add(NOElement(Rational(1)), Rational(1));
    for (int j = 1; j <= i; ++j) buf.add_product(lower[j], q[i - j], Rational(-1));
    q.push_back(buf.finish() * inv0);
  }
  std::map<int, NOElement> out;
  for (int i = 0; i <= steps; ++i) out.emplace(-deg - i, std::move(q[i]));
  return VSeries(std::move(out), out_floor, -deg);
}

bool equal_on_window(const VSeries& a, const VSeries& b) {
  int floor = std::max(a.floor(), b.floor());
  std::map<int, bool> degrees;
  for (const auto& [d, c] : a.coeffs()) degrees[d];
  for (const auto& [d, c] : b.coeffs()) degrees[d];
  for (const auto& [d, unused] : degrees) {
    if (d < floor) continue;
    if (!(a.coeff(d) == b.coeff(d))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// PDO

PDO::PDO(const Rational& scalar) : PDO(VSeries(NOElement(scalar))) {}

PDO::PDO(VSeries order_zero) {
  v_floor_ = order_zero.floor();
  v_top_ = order_zero.top();
  d_floor_ = kNegInf;
  if (!order_zero.is_zero() || !order_zero.exact()) {
    coeffs_.emplace(0, std::move(order_zero));
    d_top_ = 0;
  }
  normalize();
}

PDO::PDO(std::map<int, VSeries> coeffs, int d_floor, int d_top)
    : coeffs_(std::move(coeffs)), d_floor_(d_floor), d_top_(d_top) {
  v_floor_ = kNegInf;
  v_top_ = kNegInf;
  for (const auto& [r, c] : coeffs_) {
    v_floor_ = std::max(v_floor_, c.floor());
    v_top_ = std::max(v_top_, c.top());
  }
  normalize();
}

void PDO::normalize() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->first < d_floor_) {
      it = coeffs_.erase(it);
      continue;
    }
    if (it->second.floor() < v_floor_) it->second = it->second.truncated(v_floor_);
    if (it->second.is_zero())
      it = coeffs_.erase(it);
    else
      ++it;
  }
  if (!coeffs_.empty()) d_top_ = std::max(d_top_, coeffs_.rbegin()->first);
  for (const auto& [r, c] : coeffs_) v_top_ = std::max(v_top_, c.top());
  if (coeffs_.empty() && exact()) v_top_ = d_top_ = kNegInf;
}

PDO PDO::monomial(VSeries c, int order) {
  std::map<int, VSeries> m;
  m.emplace(order, std::move(c));
  return PDO(std::move(m), kNegInf, order);
}

PDO PDO::del(int order) { return monomial(VSeries(NOElement(Rational(1))), order); }

PDO PDO::del_minus(const Rational& lambda) { return del(1) - PDO(lambda); }

std::optional<int> PDO::leading_order() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.rbegin()->first;
}

VSeries PDO::coeff(int order) const {
  auto it = coeffs_.find(order);
  if (it != coeffs_.end()) return it->second;
  return VSeries({}, v_floor_, kNegInf);
}

NOElement PDO::coeff(int v_degree, int order) const {
  auto it = coeffs_.find(order);
  return it == coeffs_.end() ? NOElement() : it->second.coeff(v_degree);
}

std::optional<int> PDO::parity() const {
  std::optional<int> acc;
  bool mixed = false;
  for (const auto& [r, c] : coeffs_)
    for (const auto& [d, e] : c.coeffs()) acc = combine_parity(acc, e.parity(), mixed);
  if (mixed) return std::nullopt;
  return acc.value_or(0);
}

Layout PDO::layout() const {
  Layout l;
  for (const auto& [r, c] : coeffs_) l = merge_layouts(l, c.layout());
  return l;
}

bool PDO::is_one() const {
  if (!exact() || coeffs_.size() != 1 || coeffs_.begin()->first != 0) return false;
  const VSeries& c = coeffs_.begin()->second;
  return c.coeffs().size() == 1 && c.coeffs().begin()->first == 0 &&
         c.coeffs().begin()->second == NOElement(Rational(1));
}

PDO PDO::with_caps(int v_cap, int d_cap) const {
  PDO r(*this);
  r.v_cap_ = std::max(r.v_cap_, v_cap);
  r.d_cap_ = std::max(r.d_cap_, d_cap);
  r.normalize();
  return r;
}

PDO& PDO::operator+=(const PDO& rhs) {
  v_cap_ = std::max(v_cap_, rhs.v_cap_);
  d_cap_ = std::max(d_cap_, rhs.d_cap_);
  v_floor_ = std::max(v_floor_, rhs.v_floor_);
  d_floor_ = std::max(d_floor_, rhs.d_floor_);
  v_top_ = std::max(v_top_, rhs.v_top_);
  d_top_ = std::max(d_top_, rhs.d_top_);
  for (const auto& [r, c] : rhs.coeffs_) {
    if (r < d_floor_) continue;
    auto [it, inserted] = coeffs_.try_emplace(r, c);
    if (!inserted) it->second += c;
  }
  normalize();
  return *this;
}

PDO& PDO::operator-=(const PDO& rhs) { return *this += -rhs; }

PDO PDO::operator-() const {
  PDO r(*this);
  for (auto& [o, c] : r.coeffs_) c = -c;
  return r;
}

PDO operator*(PDO a, const Rational& s) {
  for (auto& [o, c] : a.coeffs_) c = c * s;
  a.normalize();
  return a;
}

PDO operator*(const PDO& a, const PDO& b) {
  PDO out;
  out.v_cap_ = std::max(a.v_cap_, b.v_cap_);
  out.d_cap_ = std::max(a.d_cap_, b.d_cap_);
  const int v_formula = std::max(bound_add(a.v_floor_, b.v_top_), bound_add(a.v_top_, b.v_floor_));
  const int d_formula = std::max(bound_add(a.d_floor_, b.d_top_), bound_add(a.d_top_, b.d_floor_));
  const int v_limit = std::max(v_formula, out.v_cap_);
  const int d_limit = std::max(d_formula, out.d_cap_);
  bool v_dropped = false, d_dropped = false;
  out.v_floor_ = v_formula;
  out.d_floor_ = d_formula;
  out.v_top_ = bound_add(a.v_top_, b.v_top_);
  out.d_top_ = bound_add(a.d_top_, b.d_top_);
  if (a.coeffs_.empty() || b.coeffs_.empty()) {
    out.normalize();
    return out;
  }
  if (a.is_one()) return b.with_caps(out.v_cap_, out.d_cap_);
  if (b.is_one()) return a.with_caps(out.v_cap_, out.d_cap_);

  std::map<int, std::vector<VSeries>> derivatives;
  for (const auto& [s, c] : b.coeffs_) derivatives[s].push_back(c);

  std::map<int, std::map<int, TermBuffer>> acc;
  for (const auto& [r, ca] : a.coeffs_) {
    const int amax = *ca.leading_degree();
    for (const auto& [s, cb] : b.coeffs_) {
      const int bmax = *cb.leading_degree();
      const bool polynomial = cb.exact() && cb.coeffs().begin()->first >= 0;
      if (r < 0 && !polynomial && d_limit <= kNegInf && v_limit <= kNegInf)
        throw Error(ErrorCode::Unbounded, "pseudodifferential product needs a truncation");
      std::vector<VSeries>& ders = derivatives[s];
      for (int t = 0;; ++t) {
        const int order = r + s - t;
        if (r >= 0 && t > r) break;
        if (order < d_limit) {
          d_dropped = true;
          break;
        }
        if (v_limit > kNegInf && amax + bmax - t < v_limit) {
          v_dropped = true;
          break;
        }
        while (static_cast<int>(ders.size()) <= t) ders.push_back(ders.back().derivative(1));
        const VSeries& bt = ders[t];
        if (bt.is_zero()) break;
        if (VSeries::mul_accumulate(ca, bt, binomial(r, t), v_limit, acc[order])) v_dropped = true;
      }
    }
  }
  if (v_dropped) out.v_floor_ = v_limit;
  if (d_dropped) out.d_floor_ = d_limit;
  for (auto& [order, slots] : acc) {
    std::map<int, NOElement> series;
    for (auto& [deg, buf] : slots) series.emplace(deg, buf.finish());
    out.coeffs_.emplace(order, VSeries(std::move(series), out.v_floor_, out.v_top_));
  }
  out.normalize();
  return out;
}

std::string PDO::to_string(char var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << '[' << it->second.to_string(var) << ']';
    if (it->first != 0) os << " D^" << it->first;
  }
  if (d_floor_ > kNegInf) os << " + O(D^" << d_floor_ << ')';
  return os.str();
}

PDO PDO::bounded_above(int d_top) const {
  PDO r(*this);
  r.d_top_ = std::min(r.d_top_, d_top);
  r.normalize();
  return r;
}

PDO pdo_invert(const PDO& p, const Truncation& trunc) {
  auto lead = p.leading_order();
  if (!lead) throw Error(ErrorCode::NotInvertible, "inverting a zero pseudodifferential operator");
  const int order = *lead;
  VSeries c = p.coeff(order);
  VSeries cinv = series_invert(c, trunc.v_floor);
  PDO linv = PDO::del(-order).with_caps(trunc) * PDO(cinv).with_caps(trunc);
  PDO rest = p - PDO::monomial(c, order);
  rest = rest.bounded_above(order - 1);
  PDO tail = -(linv * rest);
  PDO result = linv;
  PDO term = linv;
  for (int j = 1;; ++j) {
    term = tail * term;
    if (term.is_zero() && term.exact()) break;
    if (term.d_top() < trunc.d_floor) {
      // The omitted tail lies entirely below the requested order.
      result.d_floor_ = std::max(result.d_floor_, trunc.d_floor);
      break;
    }
    result += term;
    if (j > 4096) throw Error(ErrorCode::Unbounded, "inverse series does not terminate");
  }
  result.d_top_ = -order;
  if (!tail.is_zero() && tail.v_top() > 0) result.v_top_ = kPosInf;
  result.normalize();
  return result;
}

bool equal_on_window(const PDO& a, const PDO& b) {
  const int vf = std::max(a.v_floor(), b.v_floor());
  const int df = std::max(a.d_floor(), b.d_floor());
  std::map<int, bool> orders;
  for (const auto& [r, c] : a.coeffs()) orders[r];
  for (const auto& [r, c] : b.coeffs()) orders[r];
  for (const auto& [r, unused] : orders) {
    if (r < df) continue;
    VSeries ca = a.coeff(r).truncated(vf);
    VSeries cb = b.coeff(r).truncated(vf);
    if (!equal_on_window(ca, cb)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// WSeries

WSeries::WSeries(const Rational& scalar) {
  if (!scalar.is_zero()) {
    coeffs_.emplace(0, PDO(scalar));
    w_low_ = 0;
  }
}

WSeries::WSeries(PDO constant) {
  coeffs_.emplace(0, std::move(constant));
  w_low_ = 0;
  normalize();
}

WSeries::WSeries(std::map<int, PDO> coeffs, int w_low, int w_top)
    : coeffs_(std::move(coeffs)), w_low_(w_low), w_top_(w_top) {
  normalize();
}

void WSeries::normalize() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->first > w_top_ || (it->second.is_zero() && it->second.exact()))
      it = coeffs_.erase(it);
    else
      ++it;
  }
  if (!coeffs_.empty()) w_low_ = std::min(w_low_, coeffs_.begin()->first);
}

WSeries WSeries::monomial(PDO c, int power) {
  std::map<int, PDO> m;
  m.emplace(power, std::move(c));
  return WSeries(std::move(m), power, kPosInf);
}

bool WSeries::is_zero() const {
  for (const auto& [p, c] : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool WSeries::is_one() const {
  return w_top_ >= kPosInf && coeffs_.size() == 1 && coeffs_.begin()->first == 0 &&
         coeffs_.begin()->second.is_one();
}

PDO WSeries::coeff(int power) const {
  auto it = coeffs_.find(power);
  return it == coeffs_.end() ? PDO() : it->second;
}

std::optional<int> WSeries::lowest_power() const {
  for (const auto& [p, c] : coeffs_)
    if (!c.is_zero()) return p;
  return std::nullopt;
}

std::optional<int> WSeries::parity() const {
  std::optional<int> acc;
  bool mixed = false;
  for (const auto& [p, c] : coeffs_) acc = combine_parity(acc, c.parity(), mixed);
  if (mixed) return std::nullopt;
  return acc.value_or(0);
}

WSeries WSeries::shifted(int power) const {
  std::map<int, PDO> m;
  for (const auto& [p, c] : coeffs_) m.emplace(p + power, c);
  WSeries r(std::move(m), bound_add(w_low_, power), bound_add(w_top_, power));
  r.w_cap_ = bound_add(w_cap_, power);
  return r;
}

WSeries WSeries::truncated(int w_top) const {
  WSeries r(*this);
  r.w_top_ = std::min(r.w_top_, w_top);
  r.normalize();
  return r;
}

WSeries WSeries::with_cap(int w_cap) const {
  WSeries r(*this);
  r.w_cap_ = std::min(r.w_cap_, w_cap);
  r.normalize();
  return r;
}

WSeries& WSeries::operator+=(const WSeries& rhs) {
  w_cap_ = std::min(w_cap_, rhs.w_cap_);
  w_top_ = std::min(w_top_, rhs.w_top_);
  w_low_ = std::min(w_low_, rhs.w_low_);
  for (const auto& [p, c] : rhs.coeffs_) {
    if (p > w_top_) continue;
    auto [it, inserted] = coeffs_.try_emplace(p, c);
    if (!inserted) it->second += c;
  }
  normalize();
  return *this;
}

WSeries& WSeries::operator-=(const WSeries& rhs) { return *this += -rhs; }

WSeries WSeries::operator-() const {
  WSeries r(*this);
  for (auto& [p, c] : r.coeffs_) c = -c;
  return r;
}

WSeries operator*(WSeries a, const Rational& s) {
  for (auto& [p, c] : a.coeffs_) c = c * s;
  a.normalize();
  return a;
}

WSeries operator*(const WSeries& a, const WSeries& b) {
  WSeries out;
  out.w_cap_ = std::min(a.w_cap_, b.w_cap_);
  const int formula = std::min(bound_add(a.w_top_, b.w_low_), bound_add(a.w_low_, b.w_top_));
  const int limit = std::min(formula, out.w_cap_);
  out.w_top_ = formula;
  out.w_low_ = bound_add(a.w_low_, b.w_low_);
  if (a.is_one()) {
    WSeries r = b.with_cap(out.w_cap_);
    return r;
  }
  if (b.is_one()) return a.with_cap(out.w_cap_);
  bool dropped = false;
  for (const auto& [i, ca] : a.coeffs_) {
    for (const auto& [j, cb] : b.coeffs_) {
      if (i + j > limit) {
        dropped = true;
        break;
      }
      PDO prod = ca * cb;
      auto [it, inserted] = out.coeffs_.try_emplace(i + j, prod);
      if (!inserted) it->second += prod;
    }
  }
  if (dropped) out.w_top_ = limit;
  out.normalize();
  return out;
}

std::string WSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : coeffs_) {
    if (!first) os << "\n + ";
    first = false;
    os << "w^" << p << " * {" << c.to_string() << '}';
  }
  if (first) os << '0';
  if (w_top_ < kPosInf) os << "\n + O(w^" << w_top_ + 1 << ')';
  return os.str();
}

WSeries ws_invert(const WSeries& s, const Truncation& trunc) {
  auto low = s.lowest_power();
  if (!low || *low > s.w_top()) throw Error(ErrorCode::NotInvertible, "inverting a zero w-series");
  const int p = *low;
  const PDO c = s.coeff(p);
  const PDO cinv = c.is_one() ? PDO(Rational(1)) : pdo_invert(c, trunc);
  const int cap = bound_add(trunc.w_top, p);
  std::map<int, PDO> rest;
  for (const auto& [j, cj] : s.coeffs())
    if (j > p) rest.emplace(j - p, cj);
  WSeries r(std::move(rest), 1, bound_add(s.w_top(), -p));
  WSeries tail = -(WSeries(cinv) * r).with_cap(cap);
  WSeries result = WSeries(cinv).with_cap(cap);
  WSeries term = result;
  for (int i = 1; i <= cap + 1; ++i) {
    term = tail * term;
    if (term.is_zero() && term.w_top() >= cap) break;
    result += term;
  }
  return result.truncated(cap).shifted(-p);
}

bool equal_on_window(const WSeries& a, const WSeries& b) {
  const int top = std::min(a.w_top(), b.w_top());
  std::map<int, bool> powers;
  for (const auto& [p, c] : a.coeffs()) powers[p];
  for (const auto& [p, c] : b.coeffs()) powers[p];
  for (const auto& [p, unused] : powers) {
    if (p > top) continue;
    if (!equal_on_window(a.coeff(p), b.coeff(p))) return false;
  }
  return true;
}

WSeries phi_map(const PDO& p, int w_cap) {
  const int top = std::min(w_cap, bound_neg(p.d_floor()));
  std::map<int, PDO> out;
  for (const auto& [r, a] : p.coeffs()) {
    // (w^{-1} + d)^r = sum_s C(r,s) d^s w^{s-r}
    for (int s = 0;; ++s) {
      const int power = s - r;
      if (power > top) break;
      Rational c = binomial(r, s);
      if (c.is_zero()) break;
      PDO term = PDO::monomial(a * c, s);
      auto [it, inserted] = out.try_emplace(power, term);
      if (!inserted) it->second += term;
    }
  }
  return WSeries(std::move(out), bound_neg(p.d_top()), top);
}

WSeries phi_hat_map(const PDO& p, int w_cap) {
  const int top = std::min({w_cap, bound_neg(bound_add(p.v_floor(), p.d_top())),
                            bound_neg(bound_add(p.d_floor(), p.v_top()))});
  std::map<int, std::map<int, std::map<int, TermBuffer>>> acc;  // power -> order -> degree
  for (const auto& [r, series] : p.coeffs()) {
    for (const auto& [d, c] : series.coeffs()) {
      // (v + w^{-1})^d (d_v + w^{-1})^r = sum C(d,s) C(r,t) v^s d_v^t w^{s+t-d-r}
      for (int s = 0;; ++s) {
        if (s - d - r > top) break;
        Rational cs = binomial(d, s);
        if (cs.is_zero()) break;
        for (int t = 0;; ++t) {
          const int power = s + t - d - r;
          if (power > top) break;
          Rational ct = binomial(r, t);
          if (ct.is_zero()) break;
          acc[power][t][s].add(c, cs * ct);
        }
      }
    }
  }
  std::map<int, PDO> out;
  for (auto& [power, orders] : acc) {
    std::map<int, VSeries> coeffs;
    for (auto& [t, degrees] : orders) {
      std::map<int, NOElement> series;
      for (auto& [s, buf] : degrees) series.emplace(s, buf.finish());
      coeffs.emplace(t, VSeries(std::move(series), kNegInf, kNegInf));
    }
    out.emplace(power, PDO(std::move(coeffs), kNegInf, kNegInf));
  }
  return WSeries(std::move(out), bound_neg(bound_add(p.v_top(), p.d_top())), top);
}

}  // namespace gaudin
