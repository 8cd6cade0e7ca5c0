#ifndef GAUDIN_FOCK_HPP
#define GAUDIN_FOCK_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "gaudin/superweyl.hpp"

namespace gaudin {

// Monomial of the bosonic-fermionic space: exponents of x_{i,a} indexed like the
// Weyl generators. Odd variables appear at most once and are ordered by
// generator index, the same order as in normal-ordered words.
struct VMonomial {
  std::array<std::uint8_t, kMaxGenerators> exp{};

  static VMonomial one() { return {}; }
  int degree() const;
  friend auto operator<=>(const VMonomial&, const VMonomial&) = default;
};

using VVector = std::map<VMonomial, Rational>;

// Action of p on a monomial: x's multiply, derivations act as superderivations.
VVector apply_to_v(const NOElement& p, const Layout& layout, const VMonomial& mono);
VVector apply_to_v(const NOElement& p, const Layout& layout, const VVector& v);

std::string monomial_to_string(const Layout& layout, const VMonomial& mono);

// Monomials with total degree col_degrees[a-1] in x_{.,a} and row_degrees[i-1] in
// x_{i,.}. Empty when the degrees are inconsistent.
std::vector<VMonomial> weight_basis(const Layout& layout, const std::vector<int>& col_degrees,
                                    const std::vector<int>& row_degrees);

using RationalMatrix = std::vector<std::vector<Rational>>;

// Matrix of p on the span of basis (columns are images). Throws
// OutsideWeightSpace if some image leaves the span.
RationalMatrix operator_matrix(const NOElement& p, const Layout& layout, const std::vector<VMonomial>& basis);

RationalMatrix matrix_product(const RationalMatrix& a, const RationalMatrix& b);
bool is_zero_matrix(const RationalMatrix& a);

}  // namespace gaudin

#endif  // GAUDIN_FOCK_HPP
