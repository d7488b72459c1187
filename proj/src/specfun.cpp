#include "invbinom/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "invbinom/numkit.hpp"

namespace invbinom::specfun {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kBernoulliCount = 40;  // B_0 .. B_79 through the even-index table

// B_{2j} for j = 0 .. kBernoulliCount-1. Small indices are exact rationals;
// the rest follow from B_{2j} = (-1)^{j+1} 2 (2j)! zeta(2j) / (2 pi)^{2j},
// where zeta(2j) with 2j >= 16 is summed directly.
const std::array<double, kBernoulliCount>& bernoulli_even() {
  static const std::array<double, kBernoulliCount> table = [] {
    std::array<double, kBernoulliCount> b{};
    const double exact[] = {1.0,           1.0 / 6,        -1.0 / 30,  1.0 / 42,
                            -1.0 / 30,     5.0 / 66,       -691.0 / 2730, 7.0 / 6};
    for (int j = 0; j < 8; ++j) b[j] = exact[j];
    for (int j = 8; j < kBernoulliCount; ++j) {
      const int n = 2 * j;
      long double z = 0;
      for (int k = 30; k >= 1; --k) z += std::pow(static_cast<long double>(k), -n);
      long double v = 2 * z;
      for (int k = 1; k <= n; ++k) v *= k / (2 * std::numbers::pi_v<long double>);
      b[j] = static_cast<double>(j % 2 == 1 ? v : -v);
    }
    return b;
  }();
  return table;
}

double bernoulli(int n) {
  if (n == 0) return 1.0;
  if (n == 1) return -0.5;
  if (n % 2 == 1) return 0.0;
  return bernoulli_even().at(n / 2);
}

// reads a zero imaginary part as +0, fixing the side of every branch cut
Complex upper_side(Complex z) { return z.imag() == 0.0 ? Complex(z.real(), 0.0) : z; }

Complex one_minus(Complex z) { return upper_side(Complex(1.0 - z.real(), -z.imag())); }

Complex li2_bernoulli(Complex z) {
  const Complex u = -std::log(one_minus(z));
  const Complex u2 = u * u;
  Complex sum = u - u2 / 4.0;
  Complex power = u;  // u^{2j+1} / (2j+1)!
  for (int j = 1; j < kBernoulliCount; ++j) {
    power *= u2 / (double(2 * j) * double(2 * j + 1));
    const Complex term = bernoulli(2 * j) * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

Complex li2(Complex z) {
  if (z == Complex(0.0)) return 0.0;
  if (z == Complex(1.0)) return pi * pi / 6;
  const double r = std::abs(z);
  if (r > 1.0) {
    // Li2(z) = -pi^2/6 - log^2(-z)/2 - Li2(1/z)
    const Complex l = std::log(upper_side(-z));
    return -pi * pi / 6 - l * l / 2.0 - li2(1.0 / z);
  }
  if (z.real() > 0.5) {
    // Li2(z) = pi^2/6 - log z log(1-z) - Li2(1-z)
    const Complex w = one_minus(z);
    return pi * pi / 6 - std::log(z) * std::log(w) - li2_bernoulli(w);
  }
  return li2_bernoulli(z);
}

Complex li_direct(int n, Complex z) {
  Complex sum = 0.0;
  Complex power = 1.0;
  for (int k = 1; k < 2000; ++k) {
    power *= z;
    const Complex term = power / std::pow(double(k), n);
    sum += term;
    if (std::abs(power) < 1e-18 * std::max(1e-300, std::abs(sum))) break;
  }
  return sum;
}

// zeta(s) at integer s <= 1 excluding the pole, for the log expansion
double zeta_nonpositive(int s) {
  if (s == 0) return -0.5;
  const int m = -s;
  return -bernoulli(m + 1) / (m + 1);
}

// Li_n(z) = sum_{k != n-1} zeta(n-k) mu^k/k! + mu^{n-1}/(n-1)! (H_{n-1} - log(-mu)),
// mu = log z, valid for |mu| < 2 pi.
Complex li_log_series(int n, Complex z) {
  const Complex mu = std::log(z);
  Complex sum = 0.0;
  Complex power = 1.0;  // mu^k / k!
  for (int k = 0; k < 2 * kBernoulliCount - 2; ++k) {
    if (k > 0) power *= mu / double(k);
    const int s = n - k;
    if (s == 1) {
      sum += power * (harmonic(n - 1) - std::log(upper_side(-mu)));
      continue;
    }
    const double zs = s >= 2 ? zeta(s) : zeta_nonpositive(s);
    const Complex term = zs * power;
    sum += term;
    if (k > n && zs != 0.0 && std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

Complex bernoulli_poly(int n, Complex x) {
  switch (n) {
    case 1: return x - 0.5;
    case 2: return x * x - x + 1.0 / 6;
    case 3: return x * x * x - 1.5 * x * x + 0.5 * x;
    case 4: return x * x * x * x - 2.0 * x * x * x + x * x - 1.0 / 30;
    case 5: return std::pow(x, 5) - 2.5 * std::pow(x, 4) + (5.0 / 3) * x * x * x - x / 6.0;
  }
  throw Error(Errc::domain, "bernoulli_poly: order " + std::to_string(n));
}

Complex li_higher(int n, Complex z) {
  if (z == Complex(0.0)) return 0.0;
  if (z == Complex(1.0)) return zeta(n);
  const double r = std::abs(z);
  if (r <= 0.75) return li_direct(n, z);
  if (r >= 4.0 / 3) {
    // Li_n(z) + (-1)^n Li_n(1/z) = -(2 pi i)^n / n! B_n(1/2 + log(-z)/(2 pi i))
    const Complex two_pi_i(0.0, 2 * pi);
    const Complex arg = 0.5 + std::log(upper_side(-z)) / two_pi_i;
    double fact = 1;
    for (int k = 2; k <= n; ++k) fact *= k;
    const Complex rhs = -std::pow(two_pi_i, n) / fact * bernoulli_poly(n, arg);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    return rhs - sign * li_direct(n, 1.0 / z);
  }
  return li_log_series(n, z);
}

}  // namespace

double harmonic(std::int64_t m, int r) {
  if (m < 0 || r < 1) throw Error(Errc::domain, "harmonic: need m >= 0 and r >= 1");
  double s = 0.0;
  for (std::int64_t k = 1; k <= m; ++k) s += std::pow(static_cast<double>(k), -r);
  return s;
}

double c_const() {
  const double a = std::cbrt(1.0 + std::numbers::sqrt2);
  return 1.5 * (a - 1.0 / a);
}

double q_of(double x) {
  if (!(x > -3.0 && x < 1.0)) throw Error(Errc::domain, "q_of: x outside (-3, 1)");
  const double s = std::sqrt((1.0 - x) * (3.0 + x));
  return std::atan2(x * s, (1.0 - x) * (2.0 + x));
}

std::pair<Complex, Complex> tau_pm(double x) {
  if (x == 0.0) throw Error(Errc::domain, "tau_pm: pole at x = 0");
  const double d = (1.0 - x) * (3.0 + x);
  if (d < 0.0) throw Error(Errc::domain, "tau_pm: (1-x)(3+x) < 0");
  const double s = std::sqrt(d);
  return {Complex(1.0 - x, s) / (2.0 * x), Complex(1.0 - x, -s) / (2.0 * x)};
}

Complex branched_sqrt(Complex z) { return std::sqrt(upper_side(z)); }

Complex xi(int l, int m, Complex x) {
  if ((l != 0 && l != 1) || (m != 0 && m != 1))
    throw Error(Errc::domain, "xi: indices must be 0 or 1");
  const Complex a = branched_sqrt(x);
  const Complex b = branched_sqrt(one_minus(x));
  return (1.0 + (l ? -a : a) + (m ? -b : b)) / 2.0;
}

double r_frak(double nu) {
  const double c = std::cos(nu * pi);
  if (std::abs(c) < 1e-12) throw Error(Errc::domain, "r_frak: cos(nu pi) = 0");
  const double c2 = 4.0 * c * c;
  const double t = 1.0 - c2;
  return t * t * t / -c2;
}

double z3_of_x(double x) {
  if (x == 1.0) throw Error(Errc::domain, "z3_of_x: pole at x = 1");
  return x * x * x / (x - 1.0);
}

double z4_of_x(double x) {
  if (x == 0.0 || x == 1.0) throw Error(Errc::domain, "z4_of_x: pole");
  return 4.0 / (x * (1.0 - x));
}

double solve_x_from_z3(double z3) {
  if (!(z3 > -6.75 && z3 <= 6.75)) throw Error(Errc::domain, "solve_x_from_z3: z3 outside (-27/4, 27/4]");
  if (z3 == 0.0) return 0.0;
  if (z3 == 6.75) return -3.0;
  auto f = [z3](double x) { return x * x * x - z3 * x + z3; };
  return numkit::solve_bracketed(f, -3.0, c_const(), 1e-16);
}

double solve_x_from_z4(double z4) {
  if (!(z4 > -16.0 && z4 < 0.0)) throw Error(Errc::domain, "solve_x_from_z4: z4 outside (-16, 0)");
  return 0.5 * (1.0 + std::sqrt(1.0 - 16.0 / z4));
}

double zeta(double s) {
  if (!(s > 1.0)) throw Error(Errc::domain, "zeta: need s > 1");
  // Euler-Maclaurin with the head summed up to N - 1
  constexpr int N = 12;
  double sum = 0.0;
  for (int k = N - 1; k >= 1; --k) sum += std::pow(double(k), -s);
  sum += std::pow(double(N), 1.0 - s) / (s - 1.0) + 0.5 * std::pow(double(N), -s);
  double rising = s;  // s (s+1) ... (s + 2j - 2)
  double fact = 2.0;  // (2j)!
  double npow = std::pow(double(N), -s - 1.0);
  for (int j = 1; j <= 10; ++j) {
    sum += bernoulli(2 * j) / fact * rising * npow;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= double(2 * j + 1) * double(2 * j + 2);
    npow /= double(N) * N;
  }
  return sum;
}

Complex li_n(int n, Complex z) {
  if (n < 1 || n > 5) throw Error(Errc::domain, "li_n: order must be in 1..5");
  if (n == 1) return -std::log(one_minus(z));
  if (z.imag() == 0.0 && z.real() > 1.0)
    throw Error(Errc::branch_cut, "li_n: argument on the cut (1, inf)");
  if (n == 2) return li2(z);
  return li_higher(n, z);
}

}  // namespace invbinom::specfun
