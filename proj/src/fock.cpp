#include "gaudin/fock.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gaudin/error.hpp"

namespace gaudin {

int VMonomial::degree() const { return std::accumulate(exp.begin(), exp.end(), 0); }

namespace {

NOElement as_element(const Layout& layout, const VMonomial& mono) {
  NOWord w;
  w.x = mono.exp;
  return NOElement(layout, w, Rational(1));
}

}  // namespace

// V is the quotient of the Weyl superalgebra by the left ideal generated by the
// derivations, so p . m is the normal-ordered product with every word that still
// carries a derivation discarded.
VVector apply_to_v(const NOElement& p, const Layout& layout, const VMonomial& mono) {
  VVector out;
  NOElement prod = p * as_element(layout, mono);
  for (const Term& t : prod.terms()) {
    if (t.word.has_derivations()) continue;
    VMonomial m;
    m.exp = t.word.x;
    out[m] += t.coeff;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

VVector apply_to_v(const NOElement& p, const Layout& layout, const VVector& v) {
  VVector out;
  for (const auto& [mono, c] : v)
    for (const auto& [img, d] : apply_to_v(p, layout, mono)) out[img] += c * d;
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

std::string monomial_to_string(const Layout& layout, const VMonomial& mono) {
  NOWord w;
  w.x = mono.exp;
  return word_to_string(layout, w);
}

std::vector<VMonomial> weight_basis(const Layout& layout, const std::vector<int>& col_degrees,
                                    const std::vector<int>& row_degrees) {
  std::vector<VMonomial> out;
  const int rows = layout.rows(), k = layout.k();
  if (static_cast<int>(col_degrees.size()) != k || static_cast<int>(row_degrees.size()) != rows) return out;
  if (std::accumulate(col_degrees.begin(), col_degrees.end(), 0) !=
      std::accumulate(row_degrees.begin(), row_degrees.end(), 0))
    return out;
  for (int d : col_degrees)
    if (d < 0) return out;
  std::vector<int> remaining = row_degrees;
  for (int r : remaining)
    if (r < 0) return out;

  VMonomial cur;
  // Fill column a row by row; remaining[i] tracks the unused row degree.
  auto rec = [&](auto&& self, int a, int i, int left) -> void {
    if (a == k) {
      out.push_back(cur);
      return;
    }
    if (i == rows) {
      if (left == 0) self(self, a + 1, 0, a + 1 < k ? col_degrees[a + 1] : 0);
      return;
    }
    const int g = layout.index(i + 1, a + 1);
    const int cap = std::min({left, remaining[i], layout.odd(g) ? 1 : left});
    for (int e = 0; e <= cap; ++e) {
      cur.exp[g] = static_cast<std::uint8_t>(e);
      remaining[i] -= e;
      self(self, a, i + 1, left - e);
      remaining[i] += e;
    }
    cur.exp[g] = 0;
  };
  if (k > 0) rec(rec, 0, 0, col_degrees[0]);
  std::vector<VMonomial> valid;
  for (const VMonomial& m : out) {
    bool ok = true;
    for (int i = 0; i < rows && ok; ++i) {
      int sum = 0;
      for (int a = 0; a < k; ++a) sum += m.exp[layout.index(i + 1, a + 1)];
      ok = sum == row_degrees[i];
    }
    if (ok) valid.push_back(m);
  }
  std::sort(valid.begin(), valid.end());
  return valid;
}

RationalMatrix operator_matrix(const NOElement& p, const Layout& layout, const std::vector<VMonomial>& basis) {
  const std::size_t dim = basis.size();
  std::map<VMonomial, std::size_t> position;
  for (std::size_t i = 0; i < dim; ++i) position[basis[i]] = i;
  RationalMatrix out(dim, std::vector<Rational>(dim));
  for (std::size_t j = 0; j < dim; ++j)
    for (const auto& [img, c] : apply_to_v(p, layout, basis[j])) {
      auto it = position.find(img);
      if (it == position.end())
        throw Error(ErrorCode::OutsideWeightSpace,
                    "image " + monomial_to_string(layout, img) + " leaves the weight space");
      out[it->second][j] += c;
    }
  return out;
}

RationalMatrix matrix_product(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.empty() ? 0 : b[0].size();
  RationalMatrix out(n, std::vector<Rational>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < b.size(); ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

bool is_zero_matrix(const RationalMatrix& a) {
  for (const auto& row : a)
    for (const Rational& c : row)
      if (!c.is_zero()) return false;
  return true;
}

}  // namespace gaudin
