#include "doctest.h"

#include "gaudin/checks.hpp"
#include "gaudin/error.hpp"
#include "gaudin/report.hpp"
#include "json.hpp"

using namespace gaudin;

namespace {

ModelParams params(int m, int n, int k) {
  ModelParams p;
  p.m = m;
  p.n = n;
  p.k = k;
  for (int a = 1; a <= k; ++a) p.z.push_back(Rational(a, 2));
  for (int i = 1; i <= m + n; ++i) p.lambda.push_back(Rational(i - 2));
  p.trunc = default_truncation(m, n, k);
  return p;
}

}  // namespace

TEST_CASE("compare reports every differing slot") {
  Layout l(1, 0, 1);
  PDO a = PDO::del_minus(Rational(2)) * PDO(VSeries::linear(Rational(1)));
  PDO b = a + PDO(VSeries(NOElement::x(l, 1, 1) * NOElement::del(l, 1, 1)));
  IdentityReport same = compare("same", a, a);
  CHECK(same.passed());
  IdentityReport diff = compare("diff", a, b);
  CHECK_FALSE(diff.passed());
  CHECK(diff.count("fail") == 1);
  CHECK(diff.slots.size() == same.slots.size());
}

TEST_CASE("an empty joint window is uncertified") {
  WSeries a = WSeries(PDO::del(1)).truncated(-1);
  REQUIRE(a.w_top() < 0);
  IdentityReport r = compare("nothing certified", a, WSeries(Rational(1)));
  CHECK(r.slots.size() == 1);
  CHECK(r.count("uncertified") == 1);
  CHECK_FALSE(r.passed());
}

TEST_CASE("a perturbed spectral point breaks the duality comparison") {
  ModelParams p = params(1, 1, 1);
  ModelParams q = p;
  q.z[0] = q.z[0] + Rational(1);
  IdentityReport r = compare("mismatched", ber_Bhat(p), ber_Bhat(q));
  CHECK(r.count("fail") > 0);
}

TEST_CASE("verify functions pass on a small instance") {
  ModelParams p = params(1, 1, 1);
  CHECK(all_passed(verify_duality(p)));
  CHECK(all_passed(verify_capelli_g(p)));
  CHECK(all_passed(verify_capelli_bhat(p)));
  CHECK(all_passed(verify_ber_invariance(p)));
  CHECK(all_passed(verify_manin(p)));
  CHECK(all_passed(verify_classical_duality(1, 1, 1)));
  CHECK(all_passed(verify_phi(p, 5, 4)));
  CHECK(all_passed(verify_commutativity(params(1, 1, 2), 2, 2, 4)));
}

TEST_CASE("duality report carries both tables") {
  ReportList r = verify_duality(params(1, 0, 1));
  REQUIRE(r.size() == 1);
  REQUIRE(r[0].tables.size() == 2);
  CHECK(r[0].tables[0].first == "b");
  CHECK(r[0].tables[1].first == "g");
  CHECK(r[0].tables[0].second.entries.size() == r[0].tables[1].second.entries.size());
}

TEST_CASE("json rendering is stable without timing") {
  ModelParams p = params(1, 0, 1);
  p.z = {Rational(2)};
  p.lambda = {Rational(5)};
  ReportList a = dump_coeffs(p), b = dump_coeffs(p);
  a[0].elapsed_ms = 3;
  const std::string ja = render_json("dump coeffs", p, a, {false, true});
  CHECK(ja == render_json("dump coeffs", p, b, {false, true}));
  auto doc = nlohmann::json::parse(ja);
  CHECK_FALSE(doc.contains("passed"));
  const auto& rep = doc["reports"][0];
  for (const char* key : {"identity", "window", "slots", "elapsed_ms"}) CHECK(rep.contains(key));
  CHECK(rep["elapsed_ms"] == 0);
  bool found = false;
  for (const auto& e : rep["tables"]["b"]["entries"]) {
    if (e["r"] != 0 || e["s"] != 0) continue;
    found = true;
    CHECK(e["text"] == "10 - x[1,1] d[1,1]");
    auto expected = nlohmann::json::parse(R"([{"word":[],"coeff":"10"},{"word":[["x",1,1,1],["d",1,1,1]],"coeff":"-1"}])");
    CHECK(e["value"] == expected);
  }
  CHECK(found);
}

TEST_CASE("text rendering lists failures") {
  IdentityReport r;
  r.identity = "toy";
  r.window = "exact";
  r.slots = {{"a", "pass"}, {"b", "fail"}};
  const std::string text = render_text("verify toy", params(1, 0, 1), {r}, {false, false});
  CHECK(text.find("[FAIL] toy") != std::string::npos);
  CHECK(text.find("fail: b") != std::string::npos);
  CHECK(text.rfind("FAIL\n") == text.size() - 5);
}

TEST_CASE("shallow truncations are rejected") {
  ModelParams p = params(1, 1, 1);
  p.trunc.v_floor = 0;
  p.trunc.d_floor = 0;
  CHECK_THROWS_AS(verify_duality(p), Error);
  p.trunc.v_floor = 2;
  try {
    p.validate();
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowTooShallow);
  }
}
