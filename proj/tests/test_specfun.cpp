#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "invbinom/numkit.hpp"
#include "invbinom/specfun.hpp"

using invbinom::Complex;
using invbinom::Errc;
using invbinom::Error;
using namespace invbinom::specfun;

namespace {

constexpr double pi = std::numbers::pi;
const double ln2 = std::log(2.0);
constexpr double zeta3 = 1.2020569031595942853997381615114;

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an invbinom::Error");
  return Errc::parse;
}

// Li_n(z) = int_0^1 Li_{n-1}(s z) ds / s. The inner order comes from li_n itself,
// so this checks each order against the one below it.
Complex li_by_quadrature(int n, Complex z) {
  if (n == 2)
    return invbinom::numkit::adaptive_quad(
               [&](double s) { return s == 0 ? z : -std::log(1.0 - s * z) / s; }, 0, 1, 1e-15)
        .value;
  return invbinom::numkit::adaptive_quad(
             [&](double s) { return s == 0 ? z : invbinom::specfun::li_n(n - 1, s * z) / s; }, 0,
             1, 1e-13)
      .value;
}

}  // namespace

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(0, 1) == 0.0);
  CHECK(harmonic(5, 1) == doctest::Approx(137.0 / 60).epsilon(1e-15));
  CHECK(harmonic(2, 2) == 1.25);
  CHECK(code_of([] { harmonic(-1, 1); }) == Errc::domain);
  CHECK(code_of([] { harmonic(3, 0); }) == Errc::domain);
}

TEST_CASE("the constant c") {
  const double c = c_const();
  CHECK(std::abs(c - 0.8941) < 1e-4);
  // c is the real root of 4c^3 + 27c - 27, so c^3/(c-1) = -27/4
  CHECK(std::abs(4 * c * c * c + 27 * c - 27) < 1e-13);
  CHECK(std::abs(z3_of_x(c) + 6.75) < 1e-12);
}

TEST_CASE("q on its domain") {
  CHECK(q_of(0.0) == 0.0);
  CHECK(std::abs(q_of(-2.0) + pi / 2) < 1e-15);
  CHECK(std::abs(q_of(-1.0) + pi / 4) < 1e-15);
  for (double x : {-2.9, -2.5, -2.1}) {
    const double direct = std::atan((x / (x + 2)) * std::sqrt((3 + x) / (1 - x))) - pi;
    CHECK(std::abs(q_of(x) - direct) < 1e-14);
  }
  for (double x : {-1.9, -0.5, 0.3, 0.89}) {
    const double direct = std::atan((x / (x + 2)) * std::sqrt((3 + x) / (1 - x)));
    CHECK(std::abs(q_of(x) - direct) < 1e-14);
  }
  for (double h : {1e-3, 1e-6}) {
    CHECK(std::abs(q_of(-2 + h) + pi / 2) < 2 * h);
    CHECK(std::abs(q_of(-2 - h) + pi / 2) < 2 * h);
  }
  CHECK(code_of([] { q_of(1.0); }) == Errc::domain);
  CHECK(code_of([] { q_of(-3.0); }) == Errc::domain);
}

TEST_CASE("tau pair") {
  auto [tp, tm] = tau_pm(-1.0);
  CHECK(std::abs(tp - Complex(-1, -1)) < 1e-15);
  CHECK(std::abs(tm - Complex(-1, 1)) < 1e-15);
  auto [ap, am] = tau_pm(1.0 - 1e-12);
  CHECK(std::abs(ap) < 1e-5);
  CHECK(std::abs(am) < 1e-5);
  CHECK(code_of([] { tau_pm(0.0); }) == Errc::domain);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 1);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    if (std::abs(x) < 1e-3) continue;
    auto [p, m] = tau_pm(x);
    const double scale = 1 + 1 / (x * x);
    CHECK(std::abs(1 / x - p - m - 1.0) < 1e-13 * scale);
    CHECK(std::abs(p * m - (1 - x) / (x * x)) < 1e-13 * scale);
    // each ratio pairs with the tau in its own numerator
    CHECK(std::abs(-x * p / m - 1.0 / (1.0 + p)) < 1e-13 * scale);
    CHECK(std::abs(-x * m / p - 1.0 / (1.0 + m)) < 1e-13 * scale);
    CHECK(std::abs(-1.0 / (x * p * m) - 1.0 / (1.0 - 1.0 / x)) < 1e-13 * scale);
  }
}

TEST_CASE("principal square root and xi") {
  CHECK(branched_sqrt(Complex(-1, -0.0)) == Complex(0, 1));
  CHECK(std::abs(branched_sqrt(Complex(-4, 0)) - Complex(0, 2)) < 1e-15);
  CHECK(std::abs(xi(0, 0, 0.5) - (1 + std::sqrt(2.0)) / 2) < 1e-15);
  const double s2 = std::sqrt(2.0);
  CHECK(std::abs(xi(0, 0, 2.0) - Complex((1 + s2) / 2, 0.5)) < 1e-15);
  CHECK(std::abs(xi(1, 0, 2.0) - Complex((1 - s2) / 2, 0.5)) < 1e-15);
  CHECK(std::abs(xi(0, 1, 2.0) - Complex((1 + s2) / 2, -0.5)) < 1e-15);
  CHECK(std::abs(xi(1, 1, 2.0) - Complex((1 - s2) / 2, -0.5)) < 1e-15);
  for (Complex x : {Complex(0.3, 0.1), Complex(-2, 0), Complex(5, -1)}) {
    CHECK(std::abs(xi(0, 0, x) + xi(1, 1, x) - 1.0) < 1e-14);
    CHECK(std::abs(xi(0, 1, x) + xi(1, 0, x) - 1.0) < 1e-14);
  }
}

TEST_CASE("r_nu") {
  CHECK(std::abs(r_frak(0.0) - 6.75) < 1e-14);
  CHECK(std::abs(r_frak(1.0 / 6) - 8.0 / 3) < 1e-13);
  CHECK(std::abs(r_frak(0.2) - (1 + std::sqrt(5.0)) / 2) < 1e-13);
  CHECK(code_of([] { r_frak(0.5); }) == Errc::domain);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 500; ++i) {
    const double nu = u(rng);
    const double c = std::cos(nu * pi);
    if (std::abs(c) < 0.05) continue;
    const double product = 16 * std::pow(std::cos(nu * pi + pi / 6), 3) *
                           std::pow(std::cos(nu * pi - pi / 6), 3) / (c * c);
    CHECK(std::abs(r_frak(nu) - product) < 1e-12 * std::max(1.0, std::abs(product)));
  }
}

TEST_CASE("parameter maps") {
  CHECK(std::abs(solve_x_from_z3(0.5) + 1) < 1e-14);
  CHECK(std::abs(solve_x_from_z3(8.0 / 3) + 2) < 1e-14);
  CHECK(solve_x_from_z3(0.0) == 0.0);
  CHECK(solve_x_from_z3(6.75) == -3.0);
  CHECK(code_of([] { solve_x_from_z3(7.0); }) == Errc::domain);
  CHECK(code_of([] { solve_x_from_z3(-6.75); }) == Errc::domain);

  for (int i = 0; i < 1000; ++i) {
    const double z3 = -6.75 + 13.5 * (i + 0.5) / 1000;
    const double x = solve_x_from_z3(z3);
    CHECK(x >= -3.0);
    CHECK(x <= c_const());
    CHECK(std::abs(z3_of_x(x) - z3) < 1e-12 * std::max(1.0, std::abs(z3)));
  }

  CHECK(std::abs(solve_x_from_z4(-2) - 2) < 1e-15);
  CHECK(std::abs(solve_x_from_z4(-8) - (1 + std::sqrt(3.0)) / 2) < 1e-15);
  CHECK(code_of([] { solve_x_from_z4(-16); }) == Errc::domain);
  CHECK(code_of([] { solve_x_from_z4(0); }) == Errc::domain);
  double prev = 0;
  for (double z4 = -15.9; z4 < 0; z4 += 0.1) {
    const double x = solve_x_from_z4(z4);
    CHECK(x > (1 + std::sqrt(2.0)) / 2);
    CHECK(x > prev);
    CHECK(std::abs(z4_of_x(x) - z4) < 1e-12 * std::abs(z4));
    prev = x;
  }
}

TEST_CASE("zeta values") {
  CHECK(std::abs(zeta(2) - pi * pi / 6) < 1e-15);
  CHECK(std::abs(zeta(3) - zeta3) < 1e-15);
  CHECK(std::abs(zeta(4) - std::pow(pi, 4) / 90) < 1e-15);
  CHECK(std::abs(zeta(5) - 1.0369277551433699263) < 1e-15);
}

TEST_CASE("dilogarithm special values") {
  CHECK(std::abs(li_n(2, 1.0) - pi * pi / 6) < 1e-15);
  CHECK(std::abs(li_n(2, -1.0) + pi * pi / 12) < 1e-15);
  CHECK(std::abs(li_n(2, 0.5) - (pi * pi / 12 - ln2 * ln2 / 2)) < 1e-15);
  CHECK(std::abs(li_n(2, Complex(0, 1)) - Complex(-pi * pi / 48, catalan)) < 1e-15);
  CHECK(std::abs(li_n(2, 2.0 + Complex(0, 1e-300)).real() - pi * pi / 4) < 1e-14);
  CHECK(code_of([] { li_n(2, 2.0); }) == Errc::branch_cut);
  CHECK(code_of([] { li_n(6, 0.5); }) == Errc::domain);
}

TEST_CASE("higher polylog special values") {
  CHECK(std::abs(li_n(3, 1.0) - zeta3) < 1e-15);
  CHECK(std::abs(li_n(3, -1.0) + 0.75 * zeta3) < 1e-15);
  const double li3_half = 7 * zeta3 / 8 - pi * pi * ln2 / 12 + ln2 * ln2 * ln2 / 6;
  CHECK(std::abs(li_n(3, 0.5) - li3_half) < 1e-15);
  CHECK(std::abs(li_n(4, -1.0) + 7 * std::pow(pi, 4) / 720) < 1e-15);
  CHECK(std::abs(li_n(5, -1.0) + 15.0 / 16 * 1.0369277551433699263) < 4e-15);
  CHECK(std::abs(li_n(3, Complex(0, 1)).imag() - std::pow(pi, 3) / 32) < 1e-15);
  CHECK(std::abs(li_n(1, 0.5) - ln2) < 1e-15);
}

TEST_CASE("polylogs agree with the integral recursion") {
  const Complex points[] = {{0.3, 0.2}, {-0.9, 0.4}, {0.8, -0.5}, {1.1, 0.3},
                            {-2.5, 0.0}, {3.0, -1.0}, {0.6, 0.7}, {-1.2, -0.1}};
  for (int n = 2; n <= 5; ++n) {
    for (Complex z : points) {
      CAPTURE(n);
      CAPTURE(z);
      CHECK(std::abs(li_n(n, z) - li_by_quadrature(n, z)) < 1e-12);
    }
  }
}

TEST_CASE("duplication formula across the method boundaries") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> rad(0.2, 2.5), ang(-pi, pi);
  for (int i = 0; i < 200; ++i) {
    const Complex z = std::polar(rad(rng), ang(rng));
    for (int n = 2; n <= 5; ++n) {
      // Li_n(z) + Li_n(-z) = 2^{1-n} Li_n(z^2)
      const Complex lhs = li_n(n, z) + li_n(n, -z);
      const Complex rhs = std::pow(2.0, 1 - n) * li_n(n, z * z);
      CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("Landen's identity on random points") {
  CHECK(std::abs(li_n(2, 0.3) + li_n(2, 1.0 / (1.0 - 1.0 / 0.3)) +
                 std::pow(std::log(0.7), 2) / 2) < 1e-14);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> rad(0.05, 1.0), ang(-pi, pi);
  for (int i = 0; i < 100; ++i) {
    const Complex z = std::polar(rad(rng), ang(rng));
    const Complex l = std::log(1.0 - z);
    CHECK(std::abs(li_n(2, z) + li_n(2, 1.0 / (1.0 - 1.0 / z)) + l * l / 2.0) < 1e-12);
  }
}

TEST_CASE("Newman's reduction with the tau pair") {
  for (double x = -2.95; x < c_const(); x += 0.05) {
    if (std::abs(x) < 1e-9) continue;
    auto [p, m] = tau_pm(x);
    const Complex lhs = li_n(2, x) + li_n(2, -1.0 / p) + li_n(2, -1.0 / m);
    const Complex a = std::log(1.0 - x), b = std::log(1.0 + 1.0 / p), c = std::log(1.0 + 1.0 / m);
    const Complex rhs = -(a * a + b * b + c * c) / 6.0;
    CHECK(std::abs(lhs - rhs) < 1e-11);
  }
}
