#include "doctest.h"

#include <random>

#include "gaudin/model.hpp"
#include "gaudin/ncmatrix.hpp"

using namespace gaudin;

namespace {

const Truncation kTrunc{-10, -9, 6};

// Fraction-free determinant by Gaussian elimination with pivoting.
Rational gauss_det(std::vector<std::vector<Rational>> a) {
  const int n = static_cast<int>(a.size());
  Rational det(1);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      Rational f = a[r][c] / a[c][c];
      for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

NCMatrix<Rational> random_rational(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> c(-4, 4);
  NCMatrix<Rational> a(n, ParitySequence::standard(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Rational(c(rng));
  for (int i = 0; i < n; ++i) a(i, i) += Rational(9);  // keeps leading minors invertible
  return a;
}

ModelParams params(int m, int n, int k) {
  ModelParams p;
  p.m = m;
  p.n = n;
  p.k = k;
  for (int a = 1; a <= k; ++a) p.z.push_back(Rational(a));
  for (int i = 1; i <= m + n; ++i) p.lambda.push_back(Rational(2 * i + 1, 2));
  p.trunc = kTrunc;
  return p;
}

WSeries ws_poly(std::initializer_list<std::pair<int, PDO>> terms) {
  std::map<int, PDO> c;
  for (const auto& [k, v] : terms) c[k] = v;
  return WSeries(std::move(c), 0, kPosInf);
}

}  // namespace

TEST_CASE("column determinant") {
  CHECK(cdet(NCMatrix<Rational>::identity(3, ParitySequence::standard(3, 0))) == Rational(1));
  Layout l(1, 1, 1);
  NOElement a = NOElement::x(l, 1, 1), b = NOElement::del(l, 1, 1), c = NOElement::del(l, 2, 1),
            d = NOElement::x(l, 2, 1);
  NCMatrix<NOElement> m(2, ParitySequence::standard(2, 0));
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  CHECK(cdet(m) == a * d - c * b);
  CHECK(rdet(m) == a * d - b * c);

  std::mt19937 rng(7);
  for (int n = 1; n <= 4; ++n) {
    NCMatrix<Rational> r = random_rational(rng, n);
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rows[i][j] = r(i, j);
    CHECK(cdet(r) == gauss_det(rows));
  }
}

TEST_CASE("matrix product uses the plain row-by-column formula") {
  Layout l(0, 1, 1);
  NOElement x = NOElement::x(l, 1, 1), d = NOElement::del(l, 1, 1);
  NCMatrix<NOElement> a(2, ParitySequence::standard(1, 1)), b(2, ParitySequence::standard(1, 1));
  a(0, 1) = x;
  a(1, 0) = d;
  b(0, 1) = d;
  b(1, 0) = x;
  NCMatrix<NOElement> ab = a * b;
  CHECK(ab(0, 0) == x * x);
  CHECK(ab(1, 1) == d * d);
  CHECK(ab(0, 1).is_zero());
  NCMatrix<NOElement> ba = b * a;
  CHECK(ba(0, 0) == d * d);
  CHECK(ba(1, 1) == x * x);
}

TEST_CASE("quasi-minors") {
  NCMatrix<Rational> a(2, ParitySequence::standard(2, 0));
  a(0, 0) = Rational(3);
  a(0, 1) = Rational(5);
  a(1, 0) = Rational(7);
  a(1, 1) = Rational(11);
  auto d = quasi_minors(a, kTrunc);
  CHECK(d[0] == Rational(3));
  CHECK(d[1] == Rational(11) - Rational(7) * Rational(5) / Rational(3));
  CHECK(quasi_minor(a, 1, kTrunc) == Rational(3));

  std::mt19937 rng(13);
  NCMatrix<Rational> r = random_rational(rng, 4);
  auto elim = quasi_minors(r, kTrunc);
  for (int i = 1; i <= 4; ++i) CHECK(elim[i - 1] == quasi_minor(r, i, kTrunc));

  NCMatrix<PDO> bhat = build_Bhat(params(1, 1, 1));
  auto pd = quasi_minors(bhat, kTrunc);
  for (int i = 1; i <= bhat.size(); ++i) CHECK(equal_on_window(pd[i - 1], quasi_minor(bhat, i, kTrunc)));
}

TEST_CASE("inverse is two-sided") {
  std::mt19937 rng(19);
  NCMatrix<Rational> r = random_rational(rng, 4);
  NCMatrix<Rational> inv = inverse(r, kTrunc);
  NCMatrix<Rational> one = NCMatrix<Rational>::identity(4, r.parity());
  NCMatrix<Rational> left = inv * r, right = r * inv;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(left(i, j) == one(i, j));
      CHECK(right(i, j) == one(i, j));
    }
}

TEST_CASE("Berezinian of a diagonal matrix") {
  NCMatrix<Rational> a(2, ParitySequence({1, -1}));
  a(0, 0) = Rational(6);
  a(1, 1) = Rational(4);
  CHECK(ber_parity(a, kTrunc) == Rational(3, 2));
  CHECK(ber_parity(NCMatrix<Rational>::identity(3, ParitySequence({-1, 1, -1})), kTrunc) == Rational(1));
}

TEST_CASE("Manin checker") {
  CHECK_FALSE(is_manin(build_B(params(1, 1, 1))).has_value());
  CHECK_FALSE(is_manin(build_G(params(1, 1, 1))).has_value());

  Layout l(1, 0, 1);
  NOElement x = NOElement::x(l, 1, 1), d = NOElement::del(l, 1, 1);
  // Columns commute and [x, 1] = [1, d]: this one satisfies every relation.
  NCMatrix<NOElement> ok(2, ParitySequence::standard(2, 0));
  ok(0, 0) = x;
  ok(0, 1) = d;
  ok(1, 0) = NOElement(1);
  ok(1, 1) = NOElement(1);
  CHECK_FALSE(is_manin(ok).has_value());

  NCMatrix<NOElement> bad(2, ParitySequence::standard(2, 0));
  bad(0, 0) = x;
  bad(0, 1) = NOElement(1);
  bad(1, 0) = d;
  bad(1, 1) = NOElement(1);
  auto v = is_manin(bad);
  REQUIRE(v.has_value());
  CHECK(v->i == 1);
  CHECK(v->j == 1);
  CHECK(v->p == 2);
  CHECK(v->q == 1);
}

TEST_CASE("relabelling rows and columns") {
  Layout l(1, 1, 1);
  NCMatrix<NOElement> a(2, ParitySequence({1, -1}));
  a(0, 0) = NOElement(2);
  a(0, 1) = NOElement::x(l, 2, 1);
  a(1, 0) = NOElement::del(l, 2, 1);
  a(1, 1) = NOElement(5);
  NCMatrix<NOElement> same = permute(a, {0, 1});
  CHECK(same(0, 1) == a(0, 1));
  CHECK(same.parity() == a.parity());
  NCMatrix<NOElement> s = permute(a, {1, 0});
  CHECK(s(0, 0) == a(1, 1));
  CHECK(s(0, 1) == a(1, 0));
  CHECK(s(1, 0) == a(0, 1));
  CHECK(s(1, 1) == a(0, 0));
  CHECK(s.parity() == ParitySequence({-1, 1}));
}

TEST_CASE("block factorization") {
  NCMatrix<Rational> a(3, ParitySequence({1, -1, 1}));
  a(0, 0) = Rational(2);
  a(1, 1) = Rational(3);
  a(1, 2) = Rational(1);
  a(2, 1) = Rational(4);
  a(2, 2) = Rational(7);
  Rational whole = ber_parity(a, kTrunc);
  for (int r = 1; r <= 3; ++r) CHECK(block_ber(a, r, kTrunc) == whole);
  NCMatrix<PDO> bhat = build_Bhat(params(1, 1, 1));
  PDO ber = ber_parity(bhat, kTrunc);
  for (int r = 1; r <= bhat.size(); ++r) CHECK(equal_on_window(block_ber(bhat, r, kTrunc), ber));
}

TEST_CASE("affine inverse") {
  Layout l(1, 0, 1);
  PDO x(VSeries(NOElement::x(l, 1, 1)));
  NCMatrix<WSeries> a(2, ParitySequence::standard(2, 0));
  a(0, 0) = WSeries(Rational(1));
  a(1, 1) = WSeries(Rational(1));
  a(1, 0) = ws_poly({{1, x}});
  NCMatrix<WSeries> inv = affine_inverse(a, kTrunc);
  CHECK(equal_on_window(inv(1, 0), ws_poly({{1, -x}})));
  CHECK(equal_on_window(inv(0, 0), WSeries(Rational(1))));
  CHECK(inv(0, 1).is_zero());

  NCMatrix<WSeries> one = NCMatrix<WSeries>::identity(2, a.parity());
  NCMatrix<WSeries> one_inv = affine_inverse(one, kTrunc);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(equal_on_window(one_inv(i, j), one(i, j)));

  NCMatrix<WSeries> bad = one;
  bad(0, 1) = WSeries(Rational(3));
  CHECK_THROWS_AS(affine_inverse(bad, kTrunc), Error);

  NCMatrix<WSeries> lifted = affine_lift(build_B(params(1, 1, 1)), kTrunc.w_top);
  NCMatrix<WSeries> li = affine_inverse(lifted, kTrunc);
  NCMatrix<WSeries> left = li * lifted, right = lifted * li;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(equal_on_window(left(i, j), one(i, j)));
      CHECK(equal_on_window(right(i, j), one(i, j)));
      CHECK(left(i, j).w_top() >= kTrunc.w_top);
    }
  CHECK_FALSE(is_manin(li).has_value());
}

TEST_CASE("Berezinian formulas agree on affine model matrices") {
  for (auto [m, n, k] : {std::tuple{1, 1, 1}, std::tuple{2, 1, 1}}) {
    ModelParams p = params(m, n, k);
    NCMatrix<WSeries> a = affine_lift(build_B(p), p.trunc.w_top);
    WSeries quasi = ber_parity(a, p.trunc);
    WSeries classic = ber_cdet_rdet(a, p.trunc);
    CHECK(equal_on_window(quasi, classic));
    CHECK(quasi.w_top() >= p.trunc.w_top);
    for (int r = 1; r <= a.size(); ++r) CHECK(equal_on_window(block_ber(a, r, p.trunc), quasi));
    for (int i = 0; i + 1 < a.size(); ++i) {
      std::vector<int> sigma(a.size());
      std::iota(sigma.begin(), sigma.end(), 0);
      std::swap(sigma[i], sigma[i + 1]);
      CHECK(equal_on_window(ber_parity(permute(a, sigma), p.trunc), quasi));
    }
  }
}

TEST_CASE("quasi-minors commute with the shift map") {
  ModelParams p = params(1, 1, 1);
  NCMatrix<PDO> bhat = build_Bhat(p);
  auto native = quasi_minors(bhat, p.trunc);
  NCMatrix<WSeries> shifted = bhat.map([&](const PDO& e) { return phi_hat_map(e, p.trunc.w_top); });
  auto images = quasi_minors(shifted, p.trunc);
  for (int i = 0; i < bhat.size(); ++i) CHECK(equal_on_window(phi_hat_map(native[i], p.trunc.w_top), images[i]));
}
