#include "doctest.h"

#include <map>
#include <random>
#include <tuple>

#include "gaudin/error.hpp"
#include "gaudin/model.hpp"

using namespace gaudin;

namespace {

ModelParams params(int m, int n, int k, std::vector<Rational> z = {}, std::vector<Rational> lambda = {}) {
  ModelParams p;
  p.m = m;
  p.n = n;
  p.k = k;
  p.z = std::move(z);
  p.lambda = std::move(lambda);
  for (int a = static_cast<int>(p.z.size()) + 1; a <= k; ++a) p.z.push_back(Rational(a));
  for (int i = static_cast<int>(p.lambda.size()) + 1; i <= m + n; ++i)
    p.lambda.push_back(Rational(2 * i + 1, 3));
  p.trunc = Truncation{-8, -9, 6};
  return p;
}

PDO series_term(const NOElement& c, const VSeries& s) { return PDO(VSeries::mul(VSeries(c), s, kNegInf)); }

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(params(1, 1, 2).validate());
  ModelParams p = params(1, 1, 2, {Rational(1), Rational(1)});
  try {
    p.validate();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonDistinctZ);
    CHECK(std::string(e.what()) == "z must be pairwise distinct");
  }
  ModelParams bad = params(1, 1, 1);
  bad.k = 0;
  bad.z.clear();
  CHECK_THROWS_AS(bad.validate(), Error);
  ModelParams short_lambda = params(2, 1, 1);
  short_lambda.lambda.pop_back();
  CHECK_THROWS_AS(short_lambda.validate(), Error);
}

TEST_CASE("model matrices have the stated entries") {
  ModelParams p = params(1, 0, 1, {Rational(2)}, {Rational(5)});
  Layout l = p.layout();
  NOElement xd = NOElement::x(l, 1, 1) * NOElement::del(l, 1, 1);
  const int F = p.trunc.v_floor;

  NCMatrix<PDO> g = build_G(p);
  CHECK(equal_on_window(g(0, 0), PDO::del_minus(Rational(2)) - series_term(xd, VSeries::pole(Rational(5), F))));
  NCMatrix<PDO> b = build_B(p);
  CHECK(equal_on_window(b(0, 0), PDO::del_minus(Rational(5)) - series_term(xd, VSeries::pole(Rational(2), F))));

  NCMatrix<PDO> gh = build_Ghat(p);
  CHECK(equal_on_window(gh(0, 0), PDO(VSeries::linear(Rational(5)))));
  CHECK(equal_on_window(gh(0, 1), PDO(VSeries(NOElement::del(l, 1, 1)))));
  CHECK(equal_on_window(gh(1, 0), PDO(VSeries(NOElement::x(l, 1, 1)))));
  CHECK(equal_on_window(gh(1, 1), PDO::del_minus(Rational(2))));
}

TEST_CASE("bordered matrix at m = n = k = 1") {
  ModelParams p = params(1, 1, 1, {Rational(1)}, {Rational(2), Rational(3)});
  Layout l = p.layout();
  NCMatrix<PDO> bh = build_Bhat(p);
  CHECK(bh.parity() == ParitySequence({1, 1, -1}));
  CHECK(equal_on_window(bh(0, 0), PDO(VSeries::linear(Rational(1)))));
  CHECK(equal_on_window(bh(0, 1), PDO(VSeries(NOElement::del(l, 1, 1)))));
  CHECK(equal_on_window(bh(0, 2), PDO(VSeries(NOElement::del(l, 2, 1)))));
  CHECK(equal_on_window(bh(1, 0), PDO(VSeries(NOElement::x(l, 1, 1)))));
  CHECK(equal_on_window(bh(2, 0), PDO(VSeries(-NOElement::x(l, 2, 1)))));
  CHECK(equal_on_window(bh(1, 1), PDO::del_minus(Rational(2))));
  CHECK(equal_on_window(bh(2, 2), PDO::del_minus(Rational(3))));
  CHECK(bh(1, 2).is_zero());
  CHECK(bh(2, 1).is_zero());
  CHECK(build_Ghat(p).parity() == ParitySequence({1, -1, 1}));

  // Odd rows of the gl(m|n) matrix carry an extra sign.
  NCMatrix<PDO> b = build_B(p);
  NOElement odd = NOElement::x(l, 2, 1) * NOElement::del(l, 1, 1);
  CHECK(b(1, 0).coeff(-1, 0) == odd);
  CHECK(b(0, 1).coeff(-1, 0) == -(NOElement::x(l, 1, 1) * NOElement::del(l, 2, 1)));
}

TEST_CASE("model matrices are Manin") {
  for (auto [m, n, k] : {std::tuple{1, 1, 1}, std::tuple{1, 1, 2}, std::tuple{2, 1, 1}, std::tuple{0, 2, 1}}) {
    ModelParams p = params(m, n, k);
    CAPTURE(m);
    CAPTURE(n);
    CAPTURE(k);
    CHECK_FALSE(is_manin(build_G(p)).has_value());
    CHECK_FALSE(is_manin(build_B(p)).has_value());
    CHECK_FALSE(is_manin(build_Bhat(p)).has_value());
    CHECK_FALSE(is_manin(build_Ghat(p)).has_value());
  }
}

TEST_CASE("x -> 0 limit of the diagonal") {
  ModelParams p = params(2, 1, 2);
  NCMatrix<PDO> g = build_G(p);
  for (int a = 0; a < 2; ++a) {
    VSeries c0 = g(a, a).coeff(0);
    CHECK(c0.coeff(0) == NOElement(-p.z[a]));
    CHECK(g(a, a).coeff(0, 1) == NOElement(1));
  }
}

TEST_CASE("enumeration of j-functions") {
  CHECK(enumerate_J({1, 2}, 1, 1, 2).size() == 3);
  auto empty = enumerate_J({}, 2, 1, 3);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].values == std::vector<int>{0, 0, 0});
  CHECK(enumerate_J({1, 2, 3}, 0, 2, 3).size() == 8);
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      for (int l = 0; l <= 3; ++l) {
        std::vector<int> dom;
        for (int a = 1; a <= l; ++a) dom.push_back(a);
        CHECK(static_cast<long long>(enumerate_J(dom, m, n, l).size()) == J_count_formula(l, m, n));
      }
  // Domains that are not initial segments.
  auto js = enumerate_J({2}, 1, 1, 3);
  REQUIRE(js.size() == 2);
  CHECK(js[0].values == std::vector<int>{0, 1, 0});
}

TEST_CASE("capelli signs") {
  JFunction a{{2, 2}}, b{{2, 2}};
  // Identity permutation, one ordered odd pair, l = 2.
  auto s = capelli_sign(a, b, {1, 2}, 1, 2);
  CHECK(s.sigma == std::vector<int>{0, 1});
  CHECK(s.pair_count == 1);
  CHECK(s.sign == -1);
  for (int i = 1; i <= 3; ++i) {
    JFunction j{{0, i}};
    CHECK(capelli_sign(j, j, {2}, 2, 3).sign == -1);
  }
  JFunction c{{1, 2}}, d{{2, 1}};
  auto t = capelli_sign(c, d, {1, 2}, 1, 2);
  CHECK(t.sigma == std::vector<int>{1, 0});
  CHECK(t.sign == -1);
  CHECK_THROWS_AS(capelli_sign(JFunction{{1, 1}}, JFunction{{1, 2}}, {1, 2}, 1, 2), Error);
}

TEST_CASE("capelli signs match brute-force normal ordering") {
  // Group the all-off-diagonal-choice terms of cdet G at k = 2 by the x- and
  // derivation-functions they produce and compare each group with c(j1, j2).
  for (auto [m, n] : {std::pair{1, 1}, std::pair{0, 2}, std::pair{2, 0}, std::pair{1, 2}}) {
    Layout l(m, n, 2);
    const int rows = m + n;
    std::map<std::pair<std::vector<int>, std::vector<int>>, NOElement> groups;
    for (int swap = 0; swap < 2; ++swap)
      for (int i1 = 1; i1 <= rows; ++i1)
        for (int i2 = 1; i2 <= rows; ++i2) {
          int sigma[2] = {swap ? 1 : 0, swap ? 0 : 1};
          int i[2] = {i1, i2};
          std::vector<Letter> letters;
          std::vector<int> jx(2), jd(2);
          for (int c = 0; c < 2; ++c) {
            letters.push_back({Kind::X, i[c], sigma[c] + 1});
            letters.push_back({Kind::Del, i[c], c + 1});
            jx[sigma[c]] = i[c];
            jd[c] = i[c];
          }
          auto sym = normal_order_symbol(l, letters);
          if (!sym.word) continue;
          groups[{jx, jd}] += NOElement(l, *sym.word, Rational(sym.sign * (swap ? -1 : 1)));
        }
    for (const auto& j1 : enumerate_J({1, 2}, m, n, 2))
      for (const auto& j2 : enumerate_J({1, 2}, m, n, 2)) {
        if (!equivalent(j1, j2, rows)) continue;
        auto cs = capelli_sign(j1, j2, {1, 2}, m, rows);
        long long mult = 1;
        for (int i = m + 1; i <= rows; ++i)
          if (std::count(j2.values.begin(), j2.values.end(), i) == 2) mult = 2;
        NOElement closed = NOElement::x(l, j1.values[0], 1) * NOElement::x(l, j1.values[1], 2) *
                           NOElement::del(l, j2.values[0], 1) * NOElement::del(l, j2.values[1], 2) *
                           Rational(cs.sign * mult);
        // Each brute-force term carries (-1)^l = +1 from the two minus signs.
        NOElement brute = groups[{j1.values, j2.values}];
        CAPTURE(m);
        CAPTURE(n);
        CHECK(closed == brute);
      }
  }
}

TEST_CASE("capelli closed forms at m = 1, n = 0, k = 1") {
  ModelParams p = params(1, 0, 1, {Rational(2)}, {Rational(5)});
  Layout l = p.layout();
  NOElement xd = NOElement::x(l, 1, 1) * NOElement::del(l, 1, 1);
  PDO g = capelli_sum_G(p);
  CHECK(equal_on_window(
      g, PDO::del_minus(Rational(2)) - series_term(xd, VSeries::pole(Rational(5), p.trunc.v_floor))));
  PDO v(VSeries::monomial(NOElement(1), 1));
  PDO expect = (v - PDO(Rational(2))) * PDO::del_minus(Rational(5)) - PDO(VSeries(xd));
  PDO b = capelli_sum_Bhat(p);
  CHECK(equal_on_window(b, expect));
  CHECK(equal_on_window(ber_Bhat(p), expect));
  CHECK(equal_on_window(cdet_G(p), g));
}

TEST_CASE("capelli identities against native determinants and the oracle") {
  for (auto [m, n, k] : {std::tuple{1, 1, 1}, std::tuple{0, 1, 2}, std::tuple{1, 1, 2}, std::tuple{2, 1, 2},
                         std::tuple{0, 2, 2}}) {
    ModelParams p = params(m, n, k);
    p.trunc = Truncation{-4, -8, 6};
    CAPTURE(m);
    CAPTURE(n);
    CAPTURE(k);
    PDO g = capelli_sum_G(p);
    CHECK(equal_on_window(cdet_G(p), g));
    CHECK(equal_on_window(capelli_oracle_G(p), g));
    PDO b = capelli_sum_Bhat(p);
    PDO native = ber_Bhat(p);
    CHECK(native.d_floor() <= -6);
    CHECK(equal_on_window(native, b));
    CHECK(equal_on_window(capelli_oracle_Bhat(p), b));
  }
}

TEST_CASE("scalar part of the closed form is the x -> 0 limit") {
  ModelParams p = params(1, 1, 2);
  PDO b = capelli_sum_Bhat(p);
  VSeries vpart = b_prefactor(p);
  VSeries dpart = VSeries::linear(p.lambda[0]);
  dpart = VSeries::mul(dpart, VSeries::pole(p.lambda[1], p.trunc.d_floor), p.trunc.d_floor);
  for (const auto& [order, c] : dpart.coeffs())
    for (int deg = 0; deg <= 2; ++deg)
      CHECK(b.coeff(deg, order).scalar_part() == vpart.coeff(deg).scalar_part() * c.scalar_part());
}

TEST_CASE("bordered Berezinians factor through the square models") {
  for (auto [m, n, k] : {std::tuple{1, 0, 1}, std::tuple{1, 1, 1}, std::tuple{0, 1, 2}, std::tuple{2, 1, 1}}) {
    ModelParams p = params(m, n, k);
    CAPTURE(m);
    CAPTURE(n);
    CAPTURE(k);
    PDO lhs = PDO(b_prefactor(p)).with_caps(p.trunc) * ber_B(p);
    CHECK(equal_on_window(lhs, ber_Bhat(p)));
    PDO rhs = PDO(g_prefactor(p)).with_caps(p.trunc) * cdet_G(p);
    CHECK(equal_on_window(ber_Ghat(p), rhs));
  }
}

TEST_CASE("Bethe expansion") {
  ModelParams p = params(1, 1, 1, {Rational(1)}, {Rational(2), Rational(3)});
  p.trunc.w_top = 5;
  WSeries e = expand_bethe(p);
  CHECK(e.w_top() >= 5);
  CHECK(equal_on_window(e.coeff(0), PDO(Rational(1))));
  // First order: supertrace of the model matrix.
  NCMatrix<PDO> b = build_B(p);
  CHECK(equal_on_window(e.coeff(1), b(0, 0) - b(1, 1)));
  // Phi consistency.
  WSeries lhs = phi_map(ber_B(p), p.trunc.w_top).shifted(p.m - p.n);
  CHECK(equal_on_window(lhs.truncated(5), e));
  // Coefficient extraction.
  VSeries b10 = bethe_coefficient(e, 1, 0);
  CHECK(b10.coeff(0) == NOElement(0));
  VSeries b11 = bethe_coefficient(e, 1, 1);
  CHECK(b11.coeff(0) == NOElement(Rational(1)));
}

TEST_CASE("duality at m = 1, n = 0, k = 1") {
  ModelParams p = params(1, 0, 1, {Rational(2)}, {Rational(5)});
  Layout l = p.layout();
  DualityResult d = duality_check(p);
  CHECK(d.passed());
  CHECK(d.b.at(1, 1) == NOElement(1));
  CHECK(d.b.at(0, 1) == NOElement(-2));
  CHECK(d.b.at(1, 0) == NOElement(-5));
  CHECK(d.b.at(0, 0) == NOElement(10) - NOElement::x(l, 1, 1) * NOElement::del(l, 1, 1));
  for (int r = 0; r <= 1; ++r)
    for (int s = 0; s <= 1; ++s) CHECK(d.g.at(s, r) == d.b.at(r, s));
}

TEST_CASE("duality at m = n = k = 1") {
  ModelParams p = params(1, 1, 1, {Rational(1)}, {Rational(2), Rational(3)});
  DualityResult d = duality_check(p);
  CHECK(d.passed());
  CHECK(d.s_min == -6);
  int compared = 0;
  for (const Slot& s : d.slots)
    if (s.index.front() == 'b' && s.index.find('=') != std::string::npos) ++compared;
  CHECK(compared == 2 * 7);
}

TEST_CASE("duality refuses a truncation that certifies nothing") {
  ModelParams p = params(1, 1, 1);
  p.trunc.d_floor = 3;
  p.trunc.v_floor = 3;
  CHECK_THROWS_AS(duality_check(p), Error);
}
