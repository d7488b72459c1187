#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "invbinom/gpl.hpp"
#include "invbinom/numkit.hpp"
#include "invbinom/specfun.hpp"

using invbinom::Complex;
using invbinom::Errc;
using invbinom::Error;
using namespace invbinom::gpl;
using invbinom::specfun::li_n;

namespace {

constexpr double pi = std::numbers::pi;
const double ln2 = std::log(2.0);

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an invbinom::Error");
  return Errc::parse;
}

Complex G(std::vector<Complex> letters, Complex z) { return gpl_eval({letters, z}).value; }

// Weight-2 oracle by direct quadrature of the recursion:
// G(a, b; z) = int_0^1 z dt / (t z - a) * log(1 - t z / b).
Complex weight2_by_quadrature(Complex a, Complex b, Complex z) {
  return invbinom::numkit::adaptive_quad(
             [&](double t) { return z / (t * z - a) * std::log(1.0 - t * z / b); }, 0, 1, 1e-13)
      .value;
}

Complex random_letter_off_path(std::mt19937_64& rng, Complex z) {
  std::uniform_real_distribution<double> u(-2, 2);
  while (true) {
    Complex a(u(rng), u(rng));
    const Complex s = a / z;
    const double dist = (s.real() > 0 && s.real() < 1) ? std::abs(s.imag())
                                                      : std::min(std::abs(s), std::abs(s - 1.0));
    if (dist > 0.2) return a;
  }
}

}  // namespace

TEST_CASE("empty and pure-zero words") {
  CHECK(G({}, 0.7) == Complex(1.0));
  CHECK(std::abs(G({0, 0}, std::exp(1.0)) - 0.5) < 1e-15);
  const Complex z(0.3, -1.2);
  const Complex l = std::log(z);
  CHECK(G({0, 0, 0}, z) == l * l * l / 6.0);
  CHECK(gpl_eval({{0, 0, 0}, z}).method == invbinom::numkit::Method::closed);
}

TEST_CASE("simple values") {
  CHECK(std::abs(G({2}, 1) + ln2) < 1e-14);
  CHECK(std::abs(G({0, 2}, 1) + (pi * pi / 12 - ln2 * ln2 / 2)) < 1e-14);
}

TEST_CASE("weight one is a logarithm") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    const Complex z(u(rng), u(rng));
    const Complex a = random_letter_off_path(rng, z);
    CHECK(std::abs(G({a}, z) - std::log(1.0 - z / a)) < 1e-13);
  }
}

TEST_CASE("dilogarithm bridge") {
  for (Complex z : {Complex(-2), Complex(-0.5), Complex(0.3), Complex(0.9), Complex(0, 1)}) {
    CHECK(std::abs(G({0, 1.0 / z}, 1) + li_n(2, z)) < 1e-12);
  }
}

TEST_CASE("weight two against nested quadrature") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 30; ++i) {
    const Complex z(u(rng), u(rng));
    const Complex a = random_letter_off_path(rng, z);
    const Complex b = random_letter_off_path(rng, z);
    CHECK(std::abs(G({a, b}, z) - weight2_by_quadrature(a, b, z)) < 1e-11);
  }
}

TEST_CASE("classical polylogarithms as words") {
  // Li_n(x) = -G(0^{n-1}, 1/x; 1)
  for (int n = 2; n <= 5; ++n) {
    for (Complex x : {Complex(0.5), Complex(-1), Complex(0.3, 0.8), Complex(2.5, -1)}) {
      std::vector<Complex> w(n - 1, 0.0);
      w.push_back(1.0 / x);
      CHECK(std::abs(G(w, 1) + li_n(n, x)) < 1e-12);
    }
  }
}

TEST_CASE("endpoint letter inside the word") {
  // G(0,1,1;1) = Li_{2,1}(1,1) = zeta(3)
  CHECK(std::abs(G({0, 1, 1}, 1) - 1.2020569031595942) < 1e-12);
  // G(0,0,1;1) = -Li_3(1)
  CHECK(std::abs(G({0, 0, 1}, 1) + 1.2020569031595942) < 1e-12);
}

TEST_CASE("shuffle expansion lists every insertion") {
  const Complex a(5), b1(7), b2(9);
  auto one = shuffle_expand(a, std::vector<Complex>{b1});
  REQUIRE(one.size() == 2);
  CHECK(one[0] == std::vector<Complex>{a, b1});
  CHECK(one[1] == std::vector<Complex>{b1, a});
  auto none = shuffle_expand(a, std::vector<Complex>{});
  REQUIRE(none.size() == 1);
  CHECK(none[0] == std::vector<Complex>{a});
  auto two = shuffle_expand(a, std::vector<Complex>{b1, b2});
  REQUIRE(two.size() == 3);
  CHECK(two[0] == std::vector<Complex>{a, b1, b2});
  CHECK(two[1] == std::vector<Complex>{b1, a, b2});
  CHECK(two[2] == std::vector<Complex>{b1, b2, a});
}

TEST_CASE("shuffle identity holds numerically") {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(-2, 2);
  std::uniform_int_distribution<int> len(1, 2);
  for (int i = 0; i < 50; ++i) {
    const Complex z(u(rng), u(rng));
    const Complex a = random_letter_off_path(rng, z);
    std::vector<Complex> beta(len(rng));
    for (auto& x : beta) x = random_letter_off_path(rng, z);
    Complex sum = 0.0;
    for (const auto& w : shuffle_expand(a, beta)) sum += G(w, z);
    CHECK(std::abs(G({a}, z) * G(beta, z) - sum) < 1e-9);
  }
}

TEST_CASE("word errors") {
  CHECK(code_of([] { G({1.0, 2.0}, 1.0); }) == Errc::divergent_word);
  CHECK(code_of([] { G({2.0, 0.0}, 1.0); }) == Errc::divergent_word);
  CHECK(code_of([] { G({0.5, 2.0}, 1.0); }) == Errc::letter_on_path);
  CHECK(code_of([] { G({2.0, Complex(0.5, 1e-11)}, 1.0); }) == Errc::letter_on_path);
  CHECK(code_of([] { G({2, 2, 2, 2, 2, 2}, 1.0); }) == Errc::domain);
}

TEST_CASE("MPL through the GPL correspondence") {
  auto r = mpl_eval({{2}, {0.5}});
  CHECK(std::abs(r.value - (pi * pi / 12 - ln2 * ln2 / 2)) < 1e-13);

  const MplSpec s11{{1, 1}, {1.0 / 3, 0.5}};
  CHECK(std::abs(mpl_eval(s11).value - mpl_series_oracle(s11).value) < 1e-10);

  const MplSpec h{{1, 1}, {0.5, 0.5}};
  CHECK(std::abs(mpl_eval(h).value - mpl_series_oracle(h).value) < 1e-10);

  // Li_{2,1}(1,1) = zeta(3)
  CHECK(std::abs(mpl_eval({{2, 1}, {1, 1}}).value - 1.2020569031595942) < 1e-12);
  CHECK(code_of([] { mpl_eval({{1, 2}, {1, 0.5}}); }) == Errc::divergent_word);
}

TEST_CASE("nested series oracle") {
  CHECK(std::abs(mpl_series_oracle({{1}, {0.5}}).value - ln2) < 1e-14);
  double li2_quarter = 0;
  for (int k = 60; k >= 1; --k) li2_quarter += std::pow(0.25, k) / (double(k) * k);
  CHECK(std::abs(mpl_series_oracle({{2}, {0.25}}).value - li2_quarter) < 1e-15);
  CHECK(code_of([] { mpl_series_oracle({{2, 1}, {-1, 1}}); }) == Errc::not_abs_convergent);
  CHECK(code_of([] { mpl_series_oracle({{2, 1}, {0.5, 2.5}}); }) == Errc::not_abs_convergent);
}

TEST_CASE("oracle equivalence on random specs") {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> depth(1, 3);
  std::uniform_real_distribution<double> rad(0.1, 0.95), ang(-pi, pi);
  int done = 0;
  while (done < 30) {
    MplSpec s;
    int weight = 0;
    const int n = depth(rng);
    for (int j = 0; j < n; ++j) {
      const int a = std::uniform_int_distribution<int>(1, 3 - (n - 1 - j) - weight)(rng);
      weight += a;
      s.depths.push_back(a);
      s.args.push_back(std::polar(rad(rng), ang(rng)));
    }
    double prod = 1, rho = 0;
    for (auto z : s.args) rho = std::max(rho, prod *= std::abs(z));
    if (rho > 0.9) continue;
    CHECK(std::abs(mpl_eval(s).value - mpl_series_oracle(s).value) < 1e-9);
    ++done;
  }
}
