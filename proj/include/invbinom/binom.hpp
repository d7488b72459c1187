#pragma once

// Inverse binomial series: summands for the C(3k,k), C(4k,2k) and C(2k,k)
// families, their direct or boundary-accelerated sums, the Beta-integral
// representations of single summands, and harmonic-product generating
// functions.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "invbinom/error.hpp"
#include "invbinom/numkit.hpp"

namespace invbinom::binom {

enum class Family { c3, c4, c2 };

/// Numerator sequences a_k. Offsets are spelled out in the tag:
/// hk_minus_h3k_plus_1 is H_k - H_{3k+1}, hk1_minus_h2k is H_{k-1} - H_{2k}.
enum class Sequence {
  one,
  one_over_k,
  hk,
  hk_minus_h2k,
  hk_minus_h2k_minus_2,
  hk_minus_h3k,
  hk_minus_h3k_plus_1,
  hk_minus_h3k_minus_1,
  h2k_minus_h3k,
  hk1_minus_h2k,
};

/// Extra linear factor in the denominator.
enum class Weighting {
  plain,
  k_plus_1,
  k_plus_2,
  three_k_plus_1,
  three_k_plus_2,
  two_k_minus_1,
  four_k_plus_1,
  four_k_plus_3,
};

std::string_view to_string(Family f);
std::string_view to_string(Sequence s);
std::string_view to_string(Weighting w);

/// Case-insensitive tag lookup; nullopt for unknown names.
std::optional<Family> parse_family(std::string_view name);
std::optional<Sequence> parse_sequence(std::string_view name);
std::optional<Weighting> parse_weighting(std::string_view name);

/// sum_k a_k z^k / (k^r * w(k) * C_k), where C_k is the family's binomial and
/// w(k) the weighting factor. k starts at 0 when the k = 0 summand is defined
/// (r <= 0, a weighting other than plain or 2k-1, a_0 defined), else at 1.
struct SumSpec {
  Family family = Family::c3;
  int r = 0;  // >= -1
  Sequence numerator = Sequence::one;
  Weighting weighting = Weighting::plain;
  Complex z{};
  bool boundary = false;  // permit |z| equal to the radius
};

/// Radius of convergence: 27/4, 16 and 4 for C3, C4 and C2.
double radius(Family f);

/// C_k / radius^k, which behaves like k^{-1/2}. Exact products up to k = 300,
/// Stirling's series beyond.
double normalized_binomial(Family f, std::int64_t k);

std::int64_t first_index(const SumSpec& spec);

/// The k-th summand, computed from scratch.
Complex summand(const SumSpec& spec, std::int64_t k);

/// Interior points are summed directly with a geometric tail bound.
/// Points on |z| = radius need spec.boundary and go through the Levin
/// transform of 200 partial sums, or a log-aware tail fit for H_k numerators
/// at z = radius (boundary_slow is then set). DOMAIN when z
/// lies outside the disk, on its rim without the flag, or on the rim where
/// the summands do not decay.
numkit::EvalResult sum_family(const SumSpec& spec, double tol);

/// Beta-integral representations of single summands.
enum class Rep {
  c3_a,          // 1/((3k+1)C3)                 = int [t^2(1-t)]^k
  c3_log_t,      // (H_2k - H_3k+1)/((3k+1)C3)    = int [t^2(1-t)]^k log t
  c3_log_1mt,    // (H_k - H_3k+1)/((3k+1)C3)     = int [t^2(1-t)]^k log(1-t)
  c4_a,          // 1/((4k+1)C4)                 = int [t(1-t)]^2k
  c4_log_t,      // (H_2k - H_4k+1)/((4k+1)C4)
  c4_log_1mt,    // same numerator, log(1-t)
  c3_k,          // 1/(k C3)                     = int [t^2(1-t)]^k /(1-t)
  c3_k_log_t,    // (H_2k - H_3k)/(k C3)
  c3_k_log_1mt,  // (H_k-1 - H_3k)/(k C3)
  c4_k,          // 1/(k C4)                     = 2 int [t(1-t)]^2k /(1-t)
  c4_k_log_t,    // (H_2k - H_4k)/(k C4)
  c4_k_log_1mt,  // (H_2k-1 - H_4k)/(k C4)
  c3_pair,       // (1/(3k+1) + 1/(3k+2))/C3     = (9/2) int [t^2(1-t)]^(k+1) /(1-t)
  c3_pair_log_t,
  c3_pair_log_1mt,
  c3_odd,        // 1/((2k-1)C3)                 = (2/3) int [t^2(1-t)]^k /t^2
  c3_odd_log_t,
  c3_odd_log_1mt,
  c2_k,          // 1/(k C2)                     = (1/2) int [t(1-t)]^(k-1)
};

inline constexpr int kRepCount = 19;

std::span<const Rep> all_reps();
std::string_view to_string(Rep rep);
std::optional<Rep> parse_rep(std::string_view name);

/// Smallest k the representation holds for (0 or 1).
int rep_min_k(Rep rep);

/// Closed binomial/harmonic left-hand side.
double rep_lhs(Rep rep, std::int64_t k);

/// Quadrature of the right-hand side integral.
numkit::EvalResult term_oracle_integral(Rep rep, std::int64_t k, double tol);

/// sum_{k>=1} prod_j H_k^{(powers_j)} z^k / k^r for |z| < 1.
numkit::EvalResult hprod_gf(std::span<const int> powers, int r, Complex z, double tol);

}  // namespace invbinom::binom
