#ifndef GAUDIN_MODEL_HPP
#define GAUDIN_MODEL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gaudin/ncmatrix.hpp"
#include "gaudin/specseries.hpp"
#include "gaudin/superweyl.hpp"

namespace gaudin {

// Sizes, evaluation points z (one per column of x), shifts lambda (one per row)
// and the truncation used by every series computation.
struct ModelParams {
  int m = 1;
  int n = 0;
  int k = 1;
  std::vector<Rational> z;
  std::vector<Rational> lambda;
  Truncation trunc;

  // Throws InvalidSizes or NonDistinctZ.
  void validate() const;
  Layout layout() const { return Layout(m, n, k); }
  int rows() const { return m + n; }
};

// Default truncation for given sizes: deep enough that the duality window
// m-n-6..m-n is certified on both sides.
Truncation default_truncation(int m, int n, int k);

// k x k over PDO(u): delta_ab (d_u - z_a) - sum_i x_{i,a} d_{i,b} (u - lambda_i)^{-1}.
NCMatrix<PDO> build_G(const ModelParams& p);
// (m+n) x (m+n) over PDO(v), standard parity:
// delta_ij (d_v - lambda_i) - sum_a (-1)^{bar i} x_{i,a} d_{j,a} (v - z_a)^{-1}.
NCMatrix<PDO> build_B(const ModelParams& p);
// [[v - Z, D^t], [S X, d_v - Lambda]], parity (+1^{k+m}, -1^n).
NCMatrix<PDO> build_Bhat(const ModelParams& p);
// [[u - Lambda, D], [X^t, d_u - Z]], parity (+1^m, -1^n, +1^k).
NCMatrix<PDO> build_Ghat(const ModelParams& p);

// prod_{i<=m} (u - lambda_i) / prod_{i>m} (u - lambda_i) as a u-series.
VSeries g_prefactor(const ModelParams& p);
// prod_a (v - z_a), exact.
VSeries b_prefactor(const ModelParams& p);

// ---------------------------------------------------------------------------
// Capelli combinatorics. Column and row labels are 1-based.

// j: {1..k} -> {0..m+n}, values[a-1] = j(a); zero exactly off the domain.
struct JFunction {
  std::vector<int> values;
  friend bool operator==(const JFunction&, const JFunction&) = default;
};

// All j vanishing exactly off `domain` with |j^{-1}(i)| <= 1 for i <= m.
std::vector<JFunction> enumerate_J(const std::vector<int>& domain, int m, int n, int k);
// sum_s C(l,s) C(m,s) s! n^{l-s}.
long long J_count_formula(int l, int m, int n);
bool equivalent(const JFunction& j1, const JFunction& j2, int rows);

struct CapelliSign {
  int sign = 1;
  // sigma over positions 0..l-1 of the sorted domain: sigma maps the positions
  // where j2 = i increasingly onto those where j1 = i.
  std::vector<int> sigma;
  int pair_count = 0;
};
// c(j1, j2) = (-1)^# sgn(sigma) (-1)^l. Throws NotEquivalent unless j1 ~ j2.
CapelliSign capelli_sign(const JFunction& j1, const JFunction& j2, const std::vector<int>& domain, int m,
                         int rows);

// Closed forms, assembled directly in normal form without operator products.
PDO capelli_sum_G(const ModelParams& p);
PDO capelli_sum_Bhat(const ModelParams& p);

// Brute-force oracles: expand the column determinant term by term with every
// generator treated as supercommuting, then normal order each monomial.
PDO capelli_oracle_G(const ModelParams& p);
PDO capelli_oracle_Bhat(const ModelParams& p);

// ---------------------------------------------------------------------------
// Berezinians.

PDO ber_B(const ModelParams& p);
PDO ber_Bhat(const ModelParams& p);
PDO ber_Ghat(const ModelParams& p);
PDO cdet_G(const ModelParams& p);

// 1 + w A over w-series with PDO coefficients.
NCMatrix<WSeries> affine_lift(const NCMatrix<PDO>& a, int w_top);

// Ber(1 + w B) for the gl(m|n) model, exact through w_top.
WSeries expand_bethe(const ModelParams& p);
// Coefficient of d_v^{r-s} w^r in the expansion.
VSeries bethe_coefficient(const WSeries& expansion, int r, int s);

// ---------------------------------------------------------------------------
// Duality.

struct CoeffTable {
  std::map<std::pair<int, int>, NOElement> entries;
  // Certified region: first index >= first_floor, second >= second_floor.
  int first_floor = kNegInf;
  int second_floor = kNegInf;
  bool certified(int r, int s) const { return r >= first_floor && s >= second_floor; }
  NOElement at(int r, int s) const;
};

// Slot-wise table of a PDO: (v-degree, d-order) -> coefficient.
CoeffTable coeff_table(const PDO& p);

struct Slot {
  std::string index;
  std::string status;  // "pass", "fail" or "uncertified"
};

struct DualityResult {
  CoeffTable b;  // (v-degree r, d_v-order s)
  CoeffTable g;  // (u-degree r, d_u-order s)
  int s_min = 0, s_max = 0;  // b-side d_v orders compared
  std::vector<Slot> slots;
  bool passed() const;
};

// Compares b_{r,s} and g_{s,r} for r in 0..k and s in [s_min, m-n], plus the
// vanishing of every certified coefficient outside that support. Throws
// WindowTooShallow if no slot of the window is certified.
DualityResult duality_check(const ModelParams& p, int depth = 6);

}  // namespace gaudin

#endif  // GAUDIN_MODEL_HPP
