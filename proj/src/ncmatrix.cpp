#include "gaudin/ncmatrix.hpp"

namespace gaudin {

NCMatrix<WSeries> affine_inverse(const NCMatrix<WSeries>& a, const Truncation& t) {
  const int n = a.size();
  NCMatrix<WSeries> tail(n, a.parity());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const WSeries& e = a(i, j);
      std::map<int, PDO> rest;
      for (const auto& [power, c] : e.coeffs()) {
        if (power < 0 && !c.is_zero()) throw Error(ErrorCode::NotAffine, "entry has a pole in w");
        if (power == 0) {
          bool ok = i == j ? c.is_one() : c.is_zero();
          if (!ok) throw Error(ErrorCode::NotAffine, "constant term is not the identity");
          continue;
        }
        rest.emplace(power, -c);
      }
      tail(i, j) = WSeries(std::move(rest), 1, e.w_top()).with_cap(t.w_top);
    }
  NCMatrix<WSeries> result = NCMatrix<WSeries>::identity(n, a.parity());
  for (int i = 0; i < n; ++i) result(i, i) = result(i, i).with_cap(t.w_top);
  NCMatrix<WSeries> term = result;
  for (int power = 1; power <= t.w_top; ++power) {
    term = tail * term;
    result = result + term;
  }
  // Terms beyond w_top start at w^{w_top+1}; certify only through w_top.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) result(i, j) = result(i, j).truncated(t.w_top);
  return result;
}

}  // namespace gaudin
