#include "gaudin/model.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace gaudin {

namespace {

// How far below degree 0 the shallow direction of a duality side is computed.
constexpr int kSupportMargin = 3;

int sign_of(int parity_bar) { return parity_bar ? -1 : 1; }

PDO pdo_of(const NOElement& e) { return PDO(VSeries(e)); }

// Coefficients of prod (t - roots_i) as a polynomial in t, lowest degree first.
std::vector<Rational> poly_from_roots(const std::vector<Rational>& roots) {
  std::vector<Rational> c{Rational(1)};
  for (const Rational& r : roots) {
    std::vector<Rational> next(c.size() + 1);
    for (std::size_t d = 0; d < c.size(); ++d) {
      next[d + 1] += c[d];
      next[d] -= c[d] * r;
    }
    c = std::move(next);
  }
  return c;
}

VSeries series_from_poly(const std::vector<Rational>& c) {
  std::map<int, NOElement> m;
  for (std::size_t d = 0; d < c.size(); ++d)
    if (!c[d].is_zero()) m[static_cast<int>(d)] = NOElement(c[d]);
  return VSeries(std::move(m), kNegInf, static_cast<int>(c.size()) - 1);
}

// prod (t - num_i) / prod (t - den_i) as a scalar series in t.
VSeries rational_function(const std::vector<Rational>& num, const std::vector<Rational>& den, int floor) {
  VSeries acc = series_from_poly(poly_from_roots(num));
  for (const Rational& r : den) acc = VSeries::mul(acc, VSeries::pole(r, floor), floor);
  return acc;
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<int> domain_of(unsigned mask, int k) {
  std::vector<int> d;
  for (int a = 1; a <= k; ++a)
    if (mask & (1u << (a - 1))) d.push_back(a);
  return d;
}

// Normal-ordered x_j = x_{j(a1),a1} ... x_{j(al),al} (or the derivations).
NOElement j_monomial(const Layout& l, const JFunction& j, Kind kind) {
  NOElement acc(Rational(1));
  for (int a = 1; a <= static_cast<int>(j.values.size()); ++a) {
    int i = j.values[a - 1];
    if (i == 0) continue;
    acc = acc * (kind == Kind::X ? NOElement::x(l, i, a) : NOElement::del(l, i, a));
  }
  return acc;
}

// Shared driver of both closed forms: calls emit(coefficient, j1, j2, domain mask)
// for every equivalent pair.
template <class F>
void for_each_capelli_term(const ModelParams& p, F&& emit) {
  const Layout l = p.layout();
  for (unsigned mask = 0; mask < (1u << p.k); ++mask) {
    std::vector<int> dom = domain_of(mask, p.k);
    std::vector<JFunction> js = enumerate_J(dom, p.m, p.n, p.k);
    for (const JFunction& j1 : js)
      for (const JFunction& j2 : js) {
        if (!equivalent(j1, j2, p.rows())) continue;
        CapelliSign cs = capelli_sign(j1, j2, dom, p.m, p.rows());
        long long mult = 1;
        for (int i = p.m + 1; i <= p.rows(); ++i)
          mult *= factorial(static_cast<int>(std::count(j2.values.begin(), j2.values.end(), i)));
        NOElement coeff = j_monomial(l, j1, Kind::X) * j_monomial(l, j2, Kind::Del);
        if (coeff.is_zero()) continue;
        emit(coeff * Rational(cs.sign * mult), j1, j2, mask);
      }
  }
}

// Adds coeff * left(t) * right(d) to acc, with left a series in the spectral
// variable and right a scalar series in the derivation.
void add_factored(std::map<int, VSeries>& acc, const NOElement& coeff, const VSeries& left,
                  const VSeries& right) {
  VSeries cl = VSeries::mul(VSeries(coeff), left, kNegInf);
  for (const auto& [order, c] : right.coeffs()) acc[order] += cl * c.scalar_part();
}

PDO assemble(std::map<int, VSeries> acc, int d_floor, int d_top, const Truncation& t) {
  return PDO(std::move(acc), d_floor, d_top).with_caps(t);
}

}  // namespace

void ModelParams::validate() const {
  if (m < 0 || n < 0 || k < 1 || m + n < 1)
    throw Error(ErrorCode::InvalidSizes, "sizes must satisfy m, n >= 0, m + n >= 1, k >= 1");
  if ((m + n) * k > kMaxGenerators)
    throw Error(ErrorCode::InvalidSizes, "at most 16 coordinates (m + n) * k are supported");
  if (static_cast<int>(z.size()) != k)
    throw Error(ErrorCode::InvalidSizes, "expected k = " + std::to_string(k) + " values of z");
  if (static_cast<int>(lambda.size()) != m + n)
    throw Error(ErrorCode::InvalidSizes, "expected m + n = " + std::to_string(m + n) + " values of lambda");
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (z[a] == z[b]) throw Error(ErrorCode::NonDistinctZ, "z must be pairwise distinct");
  if (trunc.w_top < 0) throw Error(ErrorCode::WindowTooShallow, "w-top must be non-negative");
  if (trunc.v_floor > 0 || trunc.d_floor > 0)
    throw Error(ErrorCode::WindowTooShallow, "truncation floors must be <= 0");
}

Truncation default_truncation(int m, int n, int) {
  const int deep = std::min(m - n, 0) - 9;
  return Truncation{deep, deep, 6};
}

NCMatrix<PDO> build_G(const ModelParams& p) {
  const Layout l = p.layout();
  const int F = p.trunc.v_floor;
  NCMatrix<PDO> g(p.k, ParitySequence::standard(p.k, 0));
  for (int a = 1; a <= p.k; ++a)
    for (int b = 1; b <= p.k; ++b) {
      PDO e;
      if (a == b) e = PDO::del_minus(p.z[a - 1]);
      for (int i = 1; i <= p.rows(); ++i) {
        NOElement xd = NOElement::x(l, i, a) * NOElement::del(l, i, b);
        e -= PDO(VSeries::mul(VSeries(xd), VSeries::pole(p.lambda[i - 1], F), F));
      }
      g(a - 1, b - 1) = e.with_caps(p.trunc);
    }
  return g;
}

NCMatrix<PDO> build_B(const ModelParams& p) {
  const Layout l = p.layout();
  const int F = p.trunc.v_floor;
  NCMatrix<PDO> b(p.rows(), ParitySequence::standard(p.m, p.n));
  for (int i = 1; i <= p.rows(); ++i)
    for (int j = 1; j <= p.rows(); ++j) {
      PDO e;
      if (i == j) e = PDO::del_minus(p.lambda[i - 1]);
      const Rational s(sign_of(i > p.m));
      for (int a = 1; a <= p.k; ++a) {
        NOElement xd = NOElement::x(l, i, a) * NOElement::del(l, j, a) * s;
        e -= PDO(VSeries::mul(VSeries(xd), VSeries::pole(p.z[a - 1], F), F));
      }
      b(i - 1, j - 1) = e.with_caps(p.trunc);
    }
  return b;
}

NCMatrix<PDO> build_Bhat(const ModelParams& p) {
  const Layout l = p.layout();
  const int k = p.k, N = p.rows();
  NCMatrix<PDO> b(k + N, ParitySequence::blocks({{k + p.m, 1}, {p.n, -1}}));
  for (int a = 1; a <= k; ++a) {
    b(a - 1, a - 1) = PDO(VSeries::linear(p.z[a - 1]));
    for (int i = 1; i <= N; ++i) {
      b(a - 1, k + i - 1) = pdo_of(NOElement::del(l, i, a));
      b(k + i - 1, a - 1) = pdo_of(NOElement::x(l, i, a) * Rational(sign_of(i > p.m)));
    }
  }
  for (int i = 1; i <= N; ++i) b(k + i - 1, k + i - 1) = PDO::del_minus(p.lambda[i - 1]);
  for (int i = 0; i < k + N; ++i)
    for (int j = 0; j < k + N; ++j) b(i, j) = b(i, j).with_caps(p.trunc);
  return b;
}

NCMatrix<PDO> build_Ghat(const ModelParams& p) {
  const Layout l = p.layout();
  const int k = p.k, N = p.rows();
  NCMatrix<PDO> g(k + N, ParitySequence::blocks({{p.m, 1}, {p.n, -1}, {k, 1}}));
  for (int i = 1; i <= N; ++i) {
    g(i - 1, i - 1) = PDO(VSeries::linear(p.lambda[i - 1]));
    for (int a = 1; a <= k; ++a) {
      g(i - 1, N + a - 1) = pdo_of(NOElement::del(l, i, a));
      g(N + a - 1, i - 1) = pdo_of(NOElement::x(l, i, a));
    }
  }
  for (int a = 1; a <= k; ++a) g(N + a - 1, N + a - 1) = PDO::del_minus(p.z[a - 1]);
  for (int i = 0; i < k + N; ++i)
    for (int j = 0; j < k + N; ++j) g(i, j) = g(i, j).with_caps(p.trunc);
  return g;
}

VSeries g_prefactor(const ModelParams& p) {
  std::vector<Rational> even(p.lambda.begin(), p.lambda.begin() + p.m);
  std::vector<Rational> odd(p.lambda.begin() + p.m, p.lambda.end());
  return rational_function(even, odd, p.trunc.v_floor);
}

VSeries b_prefactor(const ModelParams& p) { return series_from_poly(poly_from_roots(p.z)); }

// ---------------------------------------------------------------------------

std::vector<JFunction> enumerate_J(const std::vector<int>& domain, int m, int n, int k) {
  std::vector<JFunction> out;
  JFunction j{std::vector<int>(k, 0)};
  std::vector<bool> used(m + 1, false);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == domain.size()) {
      out.push_back(j);
      return;
    }
    const int a = domain[pos];
    for (int i = 1; i <= m + n; ++i) {
      if (i <= m && used[i]) continue;
      if (i <= m) used[i] = true;
      j.values[a - 1] = i;
      self(self, pos + 1);
      if (i <= m) used[i] = false;
    }
    j.values[a - 1] = 0;
  };
  rec(rec, 0);
  return out;
}

long long J_count_formula(int l, int m, int n) {
  long long total = 0;
  for (int s = 0; s <= std::min(l, m); ++s) {
    long long term = 1;
    for (int t = 0; t < s; ++t) term = term * (l - t) / (t + 1);  // C(l, s)
    long long cm = 1;
    for (int t = 0; t < s; ++t) cm = cm * (m - t) / (t + 1);
    term *= cm * factorial(s);
    for (int t = 0; t < l - s; ++t) term *= n;
    total += term;
  }
  return total;
}

bool equivalent(const JFunction& j1, const JFunction& j2, int rows) {
  if (j1.values.size() != j2.values.size()) return false;
  for (std::size_t a = 0; a < j1.values.size(); ++a)
    if ((j1.values[a] == 0) != (j2.values[a] == 0)) return false;
  for (int i = 1; i <= rows; ++i)
    if (std::count(j1.values.begin(), j1.values.end(), i) != std::count(j2.values.begin(), j2.values.end(), i))
      return false;
  return true;
}

CapelliSign capelli_sign(const JFunction& j1, const JFunction& j2, const std::vector<int>& domain, int m,
                         int rows) {
  if (!equivalent(j1, j2, rows))
    throw Error(ErrorCode::NotEquivalent, "capelli sign needs functions with equal fibre sizes");
  const int l = static_cast<int>(domain.size());
  CapelliSign out;
  out.sigma.assign(l, -1);
  for (int i = 1; i <= rows; ++i) {
    std::vector<int> from, to;
    for (int s = 0; s < l; ++s) {
      if (j2.values[domain[s] - 1] == i) from.push_back(s);
      if (j1.values[domain[s] - 1] == i) to.push_back(s);
    }
    for (std::size_t t = 0; t < from.size(); ++t) out.sigma[from[t]] = to[t];
  }
  for (int s = 0; s < l; ++s)
    for (int t = s + 1; t < l; ++t)
      if (out.sigma[s] < out.sigma[t] && j2.values[domain[s] - 1] > m && j2.values[domain[t] - 1] > m)
        ++out.pair_count;
  int inversions = 0;
  for (int s = 0; s < l; ++s)
    for (int t = s + 1; t < l; ++t)
      if (out.sigma[s] > out.sigma[t]) ++inversions;
  out.sign = ((out.pair_count + inversions + l) % 2) ? -1 : 1;
  return out;
}

PDO capelli_sum_G(const ModelParams& p) {
  const int F = p.trunc.v_floor;
  std::map<int, VSeries> acc;
  for_each_capelli_term(p, [&](const NOElement& coeff, const JFunction&, const JFunction& j2, unsigned mask) {
    std::vector<Rational> poles, roots;
    for (int a = 1; a <= p.k; ++a) {
      if (mask & (1u << (a - 1)))
        poles.push_back(p.lambda[j2.values[a - 1] - 1]);
      else
        roots.push_back(p.z[a - 1]);
    }
    add_factored(acc, coeff, rational_function({}, poles, F), series_from_poly(poly_from_roots(roots)));
  });
  return assemble(std::move(acc), kNegInf, p.k, p.trunc);
}

PDO capelli_sum_Bhat(const ModelParams& p) {
  const int D = p.trunc.d_floor;
  std::vector<Rational> even(p.lambda.begin(), p.lambda.begin() + p.m);
  std::vector<Rational> odd(p.lambda.begin() + p.m, p.lambda.end());
  std::map<int, VSeries> acc;
  for_each_capelli_term(p, [&](const NOElement& coeff, const JFunction& j1, const JFunction&, unsigned mask) {
    std::vector<Rational> poles = odd, roots;
    for (int a = 1; a <= p.k; ++a) {
      if (mask & (1u << (a - 1)))
        poles.push_back(p.lambda[j1.values[a - 1] - 1]);
      else
        roots.push_back(p.z[a - 1]);
    }
    add_factored(acc, coeff, series_from_poly(poly_from_roots(roots)), rational_function(even, poles, D));
  });
  return assemble(std::move(acc), D, p.m - p.n, p.trunc);
}

namespace {

// Column-determinant expansion with all generators supercommuting. entry(c, r, i)
// describes the i-th summand of entry (r, c): letters in written order, a scalar,
// and the spectral and derivation factors it contributes.
struct OracleFactor {
  std::vector<Letter> letters;
  Rational scalar;
  std::vector<Rational> left_roots, left_poles;    // spectral variable
  std::vector<Rational> right_roots, right_poles;  // derivation
};

template <class Entry>
PDO oracle_cdet(const ModelParams& p, Entry&& entry, const OracleFactor& prefactor, int d_floor, int d_top) {
  const Layout l = p.layout();
  const int k = p.k, N = p.rows();
  const int F = p.trunc.v_floor, D = p.trunc.d_floor;
  std::map<int, VSeries> acc;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (int s = 0; s < k; ++s)
      for (int t = s + 1; t < k; ++t)
        if (perm[s] > perm[t]) ++inversions;
    // choice[c] in 0..N: 0 is the diagonal scalar summand.
    std::vector<int> choice(k, 0);
    while (true) {
      bool valid = true;
      OracleFactor total = prefactor;
      total.scalar = Rational(inversions % 2 ? -1 : 1);
      for (int c = 0; c < k && valid; ++c) {
        auto f = entry(perm[c] + 1, c + 1, choice[c]);
        if (!f) {
          valid = false;
          break;
        }
        total.letters.insert(total.letters.end(), f->letters.begin(), f->letters.end());
        total.scalar *= f->scalar;
        auto append = [](std::vector<Rational>& to, const std::vector<Rational>& from) {
          to.insert(to.end(), from.begin(), from.end());
        };
        append(total.left_roots, f->left_roots);
        append(total.left_poles, f->left_poles);
        append(total.right_roots, f->right_roots);
        append(total.right_poles, f->right_poles);
      }
      if (valid) {
        OrderedSymbol sym = normal_order_symbol(l, total.letters);
        if (sym.word) {
          NOElement coeff(l, *sym.word, total.scalar * Rational(sym.sign));
          add_factored(acc, coeff, rational_function(total.left_roots, total.left_poles, F),
                       rational_function(total.right_roots, total.right_poles, D));
        }
      }
      int c = 0;
      while (c < k && ++choice[c] > N) choice[c++] = 0;
      if (c == k) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return assemble(std::move(acc), d_floor, d_top, p.trunc);
}

}  // namespace

PDO capelli_oracle_G(const ModelParams& p) {
  // Entry (a, b): delta_ab (d_u - z_a) - sum_i x_{i,a} d_{i,b} (u - lambda_i)^{-1}.
  auto entry = [&](int a, int b, int i) -> std::optional<OracleFactor> {
    if (i == 0) {
      if (a != b) return std::nullopt;
      return OracleFactor{{}, Rational(1), {}, {}, {p.z[a - 1]}, {}};
    }
    return OracleFactor{{{Kind::X, i, a}, {Kind::Del, i, b}}, Rational(-1), {}, {p.lambda[i - 1]}, {}, {}};
  };
  return oracle_cdet(p, entry, OracleFactor{}, kNegInf, p.k);
}

PDO capelli_oracle_Bhat(const ModelParams& p) {
  // prefactor(d_v) times cdet of
  // delta_ab (v - z_a) - sum_i (-1)^{bar i} d_{i,a} x_{i,b} (d_v - lambda_i)^{-1}.
  std::vector<Rational> even(p.lambda.begin(), p.lambda.begin() + p.m);
  std::vector<Rational> odd(p.lambda.begin() + p.m, p.lambda.end());
  auto entry = [&](int a, int b, int i) -> std::optional<OracleFactor> {
    if (i == 0) {
      if (a != b) return std::nullopt;
      return OracleFactor{{}, Rational(1), {p.z[a - 1]}, {}, {}, {}};
    }
    return OracleFactor{{{Kind::Del, i, a}, {Kind::X, i, b}},
                        Rational(-sign_of(i > p.m)),
                        {},
                        {},
                        {},
                        {p.lambda[i - 1]}};
  };
  OracleFactor prefactor{{}, Rational(1), {}, {}, even, odd};
  return oracle_cdet(p, entry, prefactor, p.trunc.d_floor, p.m - p.n);
}

// ---------------------------------------------------------------------------

PDO ber_B(const ModelParams& p) { return ber_parity(build_B(p), p.trunc); }
PDO ber_Bhat(const ModelParams& p) { return ber_parity(build_Bhat(p), p.trunc); }
PDO ber_Ghat(const ModelParams& p) { return ber_parity(build_Ghat(p), p.trunc); }
PDO cdet_G(const ModelParams& p) { return cdet(build_G(p)); }

NCMatrix<WSeries> affine_lift(const NCMatrix<PDO>& a, int w_top) {
  NCMatrix<WSeries> out(a.size(), a.parity());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      std::map<int, PDO> c;
      if (i == j) c[0] = PDO(Rational(1));
      if (!a(i, j).is_zero() || !a(i, j).exact()) c[1] = a(i, j);
      out(i, j) = WSeries(std::move(c), 0, kPosInf).with_cap(w_top);
    }
  return out;
}

WSeries expand_bethe(const ModelParams& p) {
  return ber_parity(affine_lift(build_B(p), p.trunc.w_top), p.trunc).truncated(p.trunc.w_top);
}

VSeries bethe_coefficient(const WSeries& expansion, int r, int s) { return expansion.coeff(r).coeff(r - s); }

// ---------------------------------------------------------------------------

NOElement CoeffTable::at(int r, int s) const {
  auto it = entries.find({r, s});
  return it == entries.end() ? NOElement() : it->second;
}

CoeffTable coeff_table(const PDO& p) {
  CoeffTable t;
  t.first_floor = p.v_floor();
  t.second_floor = p.d_floor();
  for (const auto& [order, series] : p.coeffs())
    for (const auto& [deg, c] : series.coeffs())
      if (!c.is_zero() && p.certified(deg, order)) t.entries[{deg, order}] = c;
  return t;
}

bool DualityResult::passed() const {
  if (slots.empty()) return false;
  return std::all_of(slots.begin(), slots.end(), [](const Slot& s) { return s.status == "pass"; });
}

DualityResult duality_check(const ModelParams& p, int depth) {
  p.validate();
  DualityResult out;
  // Each side is only compared near degrees 0..k in one direction, so that
  // direction is computed shallowly. The deep direction keeps the caller's floor.
  ModelParams pb = p, pg = p;
  pb.trunc.v_floor = std::max(p.trunc.v_floor, -kSupportMargin);
  pg.trunc.d_floor = std::max(p.trunc.d_floor, -kSupportMargin);
  PDO bside = ber_Bhat(pb);
  PDO gside = ber_Ghat(pg);
  out.b = coeff_table(bside);
  out.g = coeff_table(gside);
  out.s_max = p.m - p.n;
  out.s_min = out.s_max - depth;

  int certified = 0;
  for (int r = 0; r <= p.k; ++r)
    for (int s = out.s_min; s <= out.s_max; ++s) {
      Slot slot{"b[" + std::to_string(r) + "," + std::to_string(s) + "]=g[" + std::to_string(s) + "," +
                    std::to_string(r) + "]",
                ""};
      if (!out.b.certified(r, s) || !out.g.certified(s, r)) {
        slot.status = "uncertified";
      } else {
        ++certified;
        slot.status = out.b.at(r, s) == out.g.at(s, r) ? "pass" : "fail";
      }
      out.slots.push_back(std::move(slot));
    }
  if (certified == 0)
    throw Error(ErrorCode::WindowTooShallow,
                "truncation too shallow: no coefficient of the duality window is certified");

  // Every certified coefficient outside the support must vanish.
  auto support = [&](const CoeffTable& t, bool b_side, const char* name) {
    std::string bad;
    for (const auto& [idx, c] : t.entries) {
      const int deg = idx.first, order = idx.second;
      const bool inside = b_side ? (deg >= 0 && deg <= p.k && order <= out.s_max)
                                 : (order >= 0 && order <= p.k && deg <= out.s_max);
      if (!inside) bad = "[" + std::to_string(deg) + "," + std::to_string(order) + "]";
    }
    out.slots.push_back({std::string(name) + "-support" + bad, bad.empty() ? "pass" : "fail"});
  };
  support(out.b, true, "b");
  support(out.g, false, "g");
  return out;
}

}  // namespace gaudin
