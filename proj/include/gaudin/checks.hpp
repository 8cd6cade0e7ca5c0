#ifndef GAUDIN_CHECKS_HPP
#define GAUDIN_CHECKS_HPP

#include <string>
#include <utility>
#include <vector>

#include "gaudin/model.hpp"

namespace gaudin {

// Outcome of one identity: every compared coefficient is a slot.
struct IdentityReport {
  std::string identity;
  std::string window;
  std::vector<Slot> slots;
  double elapsed_ms = 0;
  std::vector<std::pair<std::string, CoeffTable>> tables;

  bool passed() const;
  int count(const std::string& status) const;
};

using ReportList = std::vector<IdentityReport>;

bool all_passed(const ReportList& reports);

// Slot-wise comparison on the joint certified window. A comparison whose
// joint window is empty yields a single "uncertified" slot.
IdentityReport compare(const std::string& identity, const PDO& lhs, const PDO& rhs);
IdentityReport compare(const std::string& identity, const WSeries& lhs, const WSeries& rhs);

// b_{r,s} = g_{s,r}; carries both coefficient tables.
ReportList verify_duality(const ModelParams& p);
// cdet G against the closed form and against the supercommutative expansion.
ReportList verify_capelli_g(const ModelParams& p);
// Ber B-hat against the closed form and the expansion, d_v-window down to -6.
ReportList verify_capelli_bhat(const ModelParams& p);
// Permutation invariance of Ber B-hat (native and through the shift image) and
// the block factorization at every split.
ReportList verify_ber_invariance(const ModelParams& p);
// Manin relations of G, B, B-hat, G-hat and optionally of the inverse of 1 + wB
// (the expensive part).
ReportList verify_manin(const ModelParams& p, bool with_affine_inverse = true);
// Bethe coefficients commute on every bi-weight space of degree <= max_degree,
// and b_{r,s}, g_{s,r} act identically there.
ReportList verify_commutativity(const ModelParams& p, int max_degree = 3, int max_w = 3, int v_depth = 6);
// [pi_{m|n}(e_ij), pi_k(e_ab)] = 0 in the Weyl superalgebra.
ReportList verify_classical_duality(int m, int n, int k);
// w^{m-n} Phi(Ber B) = Ber(1 + wB) and Phi multiplicativity on random pairs.
ReportList verify_phi(const ModelParams& p, unsigned seed, int pairs = 20);
// Coefficient tables of both sides of the duality, no comparison.
ReportList dump_coeffs(const ModelParams& p);

}  // namespace gaudin

#endif  // GAUDIN_CHECKS_HPP
