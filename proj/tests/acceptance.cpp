// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exits nonzero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gaudin/checks.hpp"
#include "gaudin/error.hpp"

using namespace gaudin;

namespace {

struct Size {
  int m, n, k;
};

const std::vector<Size> kDualitySizes = {{1, 0, 1}, {1, 0, 2}, {1, 1, 1}, {2, 1, 1}, {1, 1, 2}, {1, 2, 2}};

std::vector<Size> small_sizes() {
  std::vector<Size> out;
  for (int rows = 1; rows <= 3; ++rows)
    for (int n = 0; n <= rows; ++n)
      for (int k = 1; k <= 3; ++k) out.push_back({rows - n, n, k});
  return out;
}

// Small distinct rationals, a different pattern for each side.
ModelParams instance(const Size& s) {
  static const Rational zs[] = {Rational(1), Rational(-1, 2), Rational(2)};
  static const Rational ls[] = {Rational(1, 3), Rational(2), Rational(-3, 2)};
  ModelParams p;
  p.m = s.m;
  p.n = s.n;
  p.k = s.k;
  p.z.assign(zs, zs + s.k);
  p.lambda.assign(ls, ls + s.m + s.n);
  p.trunc = default_truncation(s.m, s.n, s.k);
  return p;
}

std::string name(const Size& s) {
  return "(" + std::to_string(s.m) + "," + std::to_string(s.n) + "," + std::to_string(s.k) + ")";
}

struct Tally {
  int identities = 0, slots = 0;
  std::vector<std::string> problems;

  void add(const std::string& where, const ReportList& reports) {
    for (const IdentityReport& r : reports) {
      ++identities;
      slots += static_cast<int>(r.slots.size());
      if (r.passed()) continue;
      std::string first;
      for (const Slot& s : r.slots)
        if (s.status != "pass") {
          first = s.status + " at " + s.index;
          break;
        }
      problems.push_back(where + " " + r.identity + ": " + (first.empty() ? "no slots" : first));
    }
  }
  void error(const std::string& where, const std::exception& e) { problems.push_back(where + ": " + e.what()); }
};

struct Criterion {
  int number;
  std::string title;
  std::function<void(Tally&)> body;
};

ReportList select(const ReportList& all, bool blocks) {
  ReportList out;
  for (const IdentityReport& r : all)
    if ((r.identity.rfind("block", 0) == 0) == blocks) out.push_back(r);
  return out;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "duality b[r,s] = g[s,r]",
       [](Tally& t) {
         for (const Size& s : kDualitySizes) t.add(name(s), verify_duality(instance(s)));
       }},
      {2, "Capelli expansion of cdet G",
       [](Tally& t) {
         for (const Size& s : small_sizes()) t.add(name(s), verify_capelli_g(instance(s)));
       }},
      {3, "Capelli expansion of Ber B-hat, d-window to -6",
       [](Tally& t) {
         for (const Size& s : small_sizes()) t.add(name(s), verify_capelli_bhat(instance(s)));
       }},
      {4, "Berezinian permutation invariance",
       [](Tally& t) {
         for (const Size& s : {Size{1, 1, 1}, Size{2, 1, 1}}) t.add(name(s), select(verify_ber_invariance(instance(s)), false));
       }},
      {5, "block factorization of the Berezinian",
       [](Tally& t) {
         for (const Size& s : {Size{1, 1, 1}, Size{2, 1, 1}}) t.add(name(s), select(verify_ber_invariance(instance(s)), true));
       }},
      {6, "Manin relations",
       [](Tally& t) {
         for (const Size& s : small_sizes()) t.add(name(s), verify_manin(instance(s), false));
         for (const Size& s : kDualitySizes) t.add(name(s), verify_manin(instance(s), true));
       }},
      {7, "classical duality",
       [](Tally& t) {
         for (const Size& s : small_sizes()) t.add(name(s), verify_classical_duality(s.m, s.n, s.k));
       }},
      {8, "Bethe coefficients commute",
       [](Tally& t) { t.add(name({1, 1, 2}), verify_commutativity(instance({1, 1, 2}), 3, 3, 6)); }},
      {9, "shift map consistency and multiplicativity",
       [](Tally& t) {
         ModelParams p = instance({1, 1, 1});
         p.trunc.w_top = 5;
         t.add(name({1, 1, 1}), verify_phi(p, 20240517u, 20));
       }},
      {10, "even case regression",
       [](Tally& t) {
         for (const Size& s : {Size{1, 0, 1}, Size{1, 0, 2}, Size{2, 0, 1}, Size{2, 0, 2}}) {
           ModelParams p = instance(s);
           ReportList dual = verify_duality(p);
           IdentityReport& d = dual.front();
           for (const auto& [side, table] : d.tables)
             for (const auto& [key, value] : table.entries)
               if (value.has_odd_generators())
                 d.slots.push_back({side + " table has odd generators", "fail"});
           t.add(name(s), dual);
           // Without odd rows the quasi-minor Berezinian is the column determinant.
           t.add(name(s), {compare("Ber B = cdet B", ber_B(p), cdet(build_B(p)))});
         }
       }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Tally tally;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(tally);
    } catch (const std::exception& e) {
      tally.error("aborted", e);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = tally.problems.empty() && tally.slots > 0;
    if (!ok) ++failed;
    std::printf("criterion %2d: %s  %s  [%d identities, %d slots, %.2f s]\n", c.number, ok ? "PASS" : "FAIL",
                c.title.c_str(), tally.identities, tally.slots, secs);
    for (const std::string& p : tally.problems) std::printf("    %s\n", p.c_str());
    std::fflush(stdout);
  }
  std::printf("%s: %d of %zu criteria passed\n", failed ? "FAIL" : "PASS", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed ? 1 : 0;
}
