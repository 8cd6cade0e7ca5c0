#ifndef GAUDIN_BOUNDS_HPP
#define GAUDIN_BOUNDS_HPP

#include <algorithm>
#include <climits>

namespace gaudin {

// Degree bounds use sentinels for "no bound". kNegInf as a floor means the object
// is exact in that direction; kPosInf as a top means no upper bound is known.
inline constexpr int kNegInf = INT_MIN / 4;
inline constexpr int kPosInf = INT_MAX / 4;

inline bool is_finite_bound(int b) { return b > kNegInf && b < kPosInf; }

// Sum of bounds. A -inf operand dominates: a floor term with nothing unknown
// contributes nothing unknown, however large the other factor.
inline int bound_add(int a, int b) {
  if (a <= kNegInf || b <= kNegInf) return kNegInf;
  if (a >= kPosInf || b >= kPosInf) return kPosInf;
  return std::clamp(a + b, kNegInf, kPosInf);
}

inline int bound_neg(int a) {
  if (a <= kNegInf) return kPosInf;
  if (a >= kPosInf) return kNegInf;
  return -a;
}

// Truncation orders shared by every computation that creates an infinite series.
// v_floor applies to the spectral variable (v or u), d_floor to its derivation,
// w_top is the ceiling in positive powers of w.
struct Truncation {
  int v_floor = -10;
  int d_floor = -9;
  int w_top = 6;
};

}  // namespace gaudin

#endif  // GAUDIN_BOUNDS_HPP
