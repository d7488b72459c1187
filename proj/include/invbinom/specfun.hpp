#pragma once

// Scalar special functions used by the sums and closed forms: harmonic
// numbers, the constants and parameter maps attached to the C(3k,k) and
// C(4k,2k) families, and classical polylogarithms of order 1 to 5.

#include <cstdint>
#include <utility>

#include "invbinom/error.hpp"

namespace invbinom::specfun {

/// H_m^{(r)} = sum_{k=1}^m k^{-r}, summed from k = 1 upwards.
double harmonic(std::int64_t m, int r = 1);

/// c = (3/2)[(1+sqrt2)^{1/3} - (1+sqrt2)^{-1/3}], the real root of 4x^3 + 27x - 27,
/// i.e. the point where x^3/(x-1) reaches -27/4.
double c_const();

/// q(x) on (-3, 1): the continuous branch of
/// arctan((x/(x+2)) sqrt((3+x)/(1-x))), equal to -pi/2 at x = -2.
double q_of(double x);

/// tau^{+/-}(x) = (1 - x +/- i sqrt((1-x)(3+x))) / (2x).
std::pair<Complex, Complex> tau_pm(double x);

/// Principal square root, arg in (-pi, pi]; a signed-zero imaginary part is
/// read as +0 so that sqrt(-1) = +i.
Complex branched_sqrt(Complex z);

/// xi_{l,m}(x) = (1 + (-1)^l sqrt(x) + (-1)^m sqrt(1-x)) / 2, l, m in {0, 1}.
Complex xi(int l, int m, Complex x);

/// r_nu = (1 - 4cos^2(nu pi))^3 / (-4 cos^2(nu pi)).
double r_frak(double nu);

/// x^3/(x-1) and 4/(x(1-x)): the series arguments attached to x.
double z3_of_x(double x);
double z4_of_x(double x);

/// Root in [-3, c] of x^3 - z3 x + z3 for z3 in (-27/4, 27/4].
double solve_x_from_z3(double z3);

/// Larger root of x(1-x) = 4/z4 for z4 in (-16, 0); always > (1+sqrt2)/2.
double solve_x_from_z4(double z4);

/// Riemann zeta at real s > 1.
double zeta(double s);

/// Principal-branch Li_n(z) for n = 1..5. Li_1(z) = -log(1-z) everywhere;
/// for n >= 2 a point on the real ray (1, inf) raises Errc::branch_cut.
Complex li_n(int n, Complex z);

/// Catalan's constant, Im Li_2(i).
inline constexpr double catalan = 0.915965594177219015054603514932384;

}  // namespace invbinom::specfun
