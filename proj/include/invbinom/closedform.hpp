#pragma once

// Closed-form right-hand sides of the inverse binomial identities, the
// matching left-hand sides (series, integrals or functional equations), and
// per-identity domains, default grids and tolerances.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "invbinom/binom.hpp"
#include "invbinom/error.hpp"
#include "invbinom/numkit.hpp"

namespace invbinom::closedform {

enum class Identity {
  thm11,
  thm12,
  thm13a,
  thm13b,
  thm14,
  t15_hk_h2k_3k1,
  t15_hk_h3k_3k1,
  t15_hk_h2k_3k2,
  t15_hk_h2k_2k1,
  t15_hk_h3k_2k1,
  t16_hk_4k1,
  t16_hk_4k3,
  r_1k,
  r_h2k_h3k,
  r_hk1_h2k,
  eq_kp1_half,
  eq_kp1_83,
  eq_4k_kp1,
  ck2k_kp2,
  arcsin_sq,
  x2k_k2_c4,
  loglog_tau,
  newman_sum,
  landen,
  // S_{3,r}(1; 1/2) for r = 2..5
  cor_w2,
  cor_w3,
  cor_w4,
  cor_w5,
  // S_{3,0}(1/k; r_nu) at tabulated nu
  table_s30,
  // (H_k - H_{3k+1})/(3k+1) and (H_k - H_{3k-1})/(2k-1) sums at r_{m/N}
  table7_l4_3k1,
  table7_l4_2k1,
  table7_l5m1_3k1,
  table7_l5m1_2k1,
  table7_l5m2_3k1,
  table7_l5m2_2k1,
  table7_l6_3k1,
  table7_l6_2k1,
  // H_k/((4k+1)C4) and H_k/((4k+3)C4) at z = 4
  rem_z4_4k1,
  rem_z4_4k3,
  // S_{4,1}(H_k; 4) and S_{4,1}(H_k; 16)
  table_s41_hk_4,
  table_s41_hk_16,
  // S_{3,0}(1/k; +-27/4) on the rim of convergence
  boundary_s30,
  mezo_hk,
};

struct IdentityInfo {
  Identity id;
  std::string_view name;
  std::string_view domain;      // human-readable description
  bool takes_param;             // false for fixed-point evaluations
  std::vector<Complex> grid;    // default verification points
  double tol;                   // default acceptance tolerance
};

std::span<const IdentityInfo> catalog();
const IdentityInfo& info(Identity id);
std::string_view to_string(Identity id);
std::optional<Identity> parse_identity(std::string_view name);

/// Throws DOMAIN when `param` lies outside the identity's region.
void check_domain(Identity id, Complex param);

/// The series behind a series-backed identity at `param`; nullopt for the
/// integral and functional-equation identities.
std::optional<binom::SumSpec> series_for(Identity id, Complex param);

/// Right-hand side. GPL-backed forms (the T16 pair, weight >= 3 examples and
/// the level-5/6/8/12 rows) call gpl::gpl_eval / gpl::mpl_eval.
Complex closed_eval(Identity id, Complex param);

/// Left-hand side: the series by binom::sum_family, the log-log integral by
/// quadrature, the functional equations from specfun.
numkit::EvalResult lhs_eval(Identity id, Complex param, double tol);

/// |x(1-x)/(3-2x) d/dx S(x) - S'(x)| where S and S' are the r = 1 and r = 0
/// sums of a_k = 1/k over C(3k,k) at z = x^3/(x-1), with the derivative as a
/// central difference of step h. Only n = 1 is supported.
double deriv_relation_check(int n, double x, double h);

}  // namespace invbinom::closedform
