// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 only when
// every line passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "invbinom/binom.hpp"
#include "invbinom/closedform.hpp"
#include "invbinom/gpl.hpp"
#include "invbinom/specfun.hpp"

using namespace invbinom;
using binom::Family;
using binom::Sequence;
using binom::SumSpec;
using binom::Weighting;
using closedform::Identity;

namespace {

constexpr double pi = std::numbers::pi;
const double ln2 = std::log(2.0);
const double ln3 = std::log(3.0);
const double sqrt3 = std::sqrt(3.0);
const double log_phi = std::log(std::numbers::phi);

constexpr double kTolInvSquare = 1e-11;
constexpr double kTolKPlus1 = 1e-10;
constexpr double kTolCentral4 = 1e-10;
constexpr double kTolSymmetry = 1e-12;
constexpr double kTolHalfAndEightThirds = 1e-11;
constexpr double kTolHarmonicC3 = 1e-9;
constexpr double kTolHarmonicC4 = 1e-8;
constexpr double kTolHarmonicC4Imag = 1e-9;
constexpr double kTolReps = 1e-11;
constexpr double kTolWeight3 = 1e-11;
constexpr double kTolWeight4 = 1e-8;
constexpr double kTolTables = 1e-10;
constexpr double kTolBoundary = 1e-6;
constexpr double kTolShuffle = 1e-9;
constexpr double kTolFunctional = 1e-11;
constexpr double kTolMpl = 1e-9;
constexpr double kTolDeriv = 1e-7;
constexpr double kTolRoundTrip = 1e-12;

constexpr double kTimeInvSquare = 1.0;
constexpr double kTimeBoundary = 5.0;
constexpr double kTimeTotal = 120.0;

constexpr double kSeriesTol = 1e-14;
constexpr std::uint64_t kSeed = 20240917;

const std::vector<double> kC3Grid{-2.9, -2.5, -2, -1.5, -1, -0.5, 0.3, 0.5, 0.8};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Worst |lhs - rhs| over the points, or infinity when something throws.
struct Tally {
  double worst = 0.0;
  int checks = 0;
  std::string error;

  void add(Complex lhs, Complex rhs) { add(std::abs(lhs - rhs)); }
  void add(double diff) {
    ++checks;
    if (!(diff <= worst)) worst = std::isnan(diff) ? INFINITY : diff;
  }
  bool within(double tol) const { return error.empty() && worst < tol; }
};

template <typename F>
void guarded(Tally& t, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    t.error = e.what();
    t.worst = INFINITY;
  }
}

double series(Family f, int r, Sequence s, Weighting w, Complex z, bool boundary = false) {
  return binom::sum_family(SumSpec{f, r, s, w, z, boundary}, kSeriesTol).value.real();
}

void identity_points(Tally& t, Identity id, const std::vector<double>& points) {
  guarded(t, [&] {
    for (double p : points)
      t.add(closedform::lhs_eval(id, p, kSeriesTol).value, closedform::closed_eval(id, p));
  });
}

int failures = 0;

void report(int n, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("AC%-2d %s  %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

std::string with_error(const Tally& t, std::string detail) {
  return t.error.empty() ? detail : detail + " error: " + t.error;
}

void ac1() {
  Tally t;
  const auto start = Clock::now();
  guarded(t, [&] {
    for (double x : kC3Grid) {
      const double q = specfun::q_of(x);
      const double l = std::log1p(-x);
      t.add(series(Family::c3, 2, Sequence::one, Weighting::plain, specfun::z3_of_x(x)),
            2.0 / 3 * q * q - l * l / 2);
    }
  });
  const double secs = seconds_since(start);
  report(1, t.within(kTolInvSquare) && secs < kTimeInvSquare,
         with_error(t, fmt("1/(k^2 C(3k,k)) grid: max diff %.3g (tol %.0e), %.3f s", t.worst, kTolInvSquare,
                           secs)));
}

void ac2() {
  Tally t;
  identity_points(t, Identity::thm11, kC3Grid);
  report(2, t.within(kTolKPlus1),
         with_error(t, fmt("1/((k+1) C(3k,k)) grid: max diff %.3g (tol %.0e)", t.worst, kTolKPlus1)));
}

void ac3() {
  Tally t;
  identity_points(t, Identity::thm13a, {0.3, 0.5, 1, 2, 5});
  Tally d;
  guarded(d, [&] {
    const double lq = std::log((sqrt3 + 1) / (sqrt3 - 1));
    const double display = (20 * pi - 3 * pi * pi) / 8 - 7 / sqrt3 * lq + 1.5 * lq * lq;
    d.add(series(Family::c4, 0, Sequence::one, Weighting::k_plus_1, 4.0), display);
  });
  report(3, t.within(kTolCentral4) && d.within(kTolCentral4),
         with_error(t.error.empty() ? d : t,
                    fmt("1/((k+1) C(4k,2k)) X grid: max diff %.3g; X=1/2 display: diff %.3g (tol %.0e)",
                        t.worst, d.worst, kTolCentral4)));
}

void ac4() {
  Tally t, sym;
  std::vector<double> points;
  for (double x : {1.3, 1.5, 2.0, 3.0}) {
    points.push_back(x);
    points.push_back(1 - x);
  }
  identity_points(t, Identity::thm13b, points);
  identity_points(t, Identity::thm14, points);
  guarded(sym, [&] {
    for (double x : {1.3, 1.5, 2.0, 3.0})
      for (Identity id : {Identity::thm13b, Identity::thm14})
        sym.add(closedform::closed_eval(id, x), closedform::closed_eval(id, 1 - x));
  });
  report(4, t.within(kTolCentral4) && sym.within(kTolSymmetry),
         with_error(t.error.empty() ? sym : t,
                    fmt("C(4k,2k) x grid: max diff %.3g (tol %.0e); x<->1-x: %.3g", t.worst,
                        kTolCentral4, sym.worst)));
}

void ac5() {
  Tally t;
  guarded(t, [&] {
    t.add(series(Family::c3, 0, Sequence::one, Weighting::k_plus_1, 0.5),
          3 * ln2 * ln2 - pi * pi / 4 + (8 * pi - 21 * ln2) / 5);
    t.add(series(Family::c3, 0, Sequence::one, Weighting::k_plus_1, 8.0 / 3),
          (9 * ln3 * ln3 - 3 * pi * pi) / 16 + 11 * sqrt3 * pi / 14 - 9 * ln3 / 7);
  });
  report(5, t.within(kTolHalfAndEightThirds),
         with_error(t, fmt("two (k+1) sums: max diff %.3g (tol %.0e)", t.worst, kTolHalfAndEightThirds)));
}

void ac6() {
  Tally t;
  for (Identity id : {Identity::t15_hk_h2k_3k1, Identity::t15_hk_h3k_3k1, Identity::t15_hk_h2k_3k2,
                      Identity::t15_hk_h2k_2k1, Identity::t15_hk_h3k_2k1})
    identity_points(t, id, {-2, -1, -0.5, 0.5});
  report(6, t.within(kTolHarmonicC3) && t.checks == 20,
         with_error(t, fmt("harmonic C(3k,k) sums, %g checks: max diff %.3g (tol %.0e)", t.checks, t.worst,
                           kTolHarmonicC3)));
}

void ac7() {
  Tally t, im;
  guarded(t, [&] {
    for (Identity id : {Identity::t16_hk_4k1, Identity::t16_hk_4k3}) {
      const Complex rhs = closedform::closed_eval(id, 2.0);
      t.add(closedform::lhs_eval(id, 2.0, kSeriesTol).value, rhs);
      im.add(std::abs(rhs.imag()));
    }
  });
  report(7, t.within(kTolHarmonicC4) && im.within(kTolHarmonicC4Imag),
         with_error(t, fmt("harmonic C(4k,2k) sums at x=2: max diff %.3g (tol %.0e), |Im rhs| %.3g", t.worst,
                           kTolHarmonicC4, im.worst)));
}

void ac8() {
  Tally t;
  guarded(t, [&] {
    for (binom::Rep rep : binom::all_reps())
      for (int k = binom::rep_min_k(rep); k <= 8; ++k)
        t.add(binom::rep_lhs(rep, k), binom::term_oracle_integral(rep, k, 1e-13).value);
  });
  report(8, t.within(kTolReps) && t.checks >= 104,
         with_error(t, fmt("integral representations, %g checks: max diff %.3g (tol %.0e)",
                           t.checks, t.worst, kTolReps)));
}

void ac9() {
  Tally w3, w4;
  guarded(w3, [&] {
    const double catalan = gpl::mpl_eval({{2}, {Complex(0, 1)}}).value.imag();
    const double zeta3 = specfun::li_n(3, 1.0).real();
    const double rhs = -33 * zeta3 / 16 + pi * catalan + std::pow(ln2, 3) / 6 -
                       pi * pi * ln2 / 24;
    w3.add(series(Family::c3, 3, Sequence::one, Weighting::plain, 0.5), rhs);
  });
  guarded(w4, [&] {
    w4.add(series(Family::c3, 4, Sequence::one, Weighting::plain, 0.5),
           closedform::closed_eval(Identity::cor_w4, 0.0));
  });
  report(9, w3.within(kTolWeight3) && w4.within(kTolWeight4),
         with_error(w3.error.empty() ? w4 : w3,
                    fmt("weight 3: diff %.3g (tol 1e-11); weight 4: diff %.3g (tol 1e-8)",
                        w3.worst, w4.worst)));
}

void ac10() {
  Tally t;
  guarded(t, [&] {
    auto s30 = [](double z) {
      return series(Family::c3, 1, Sequence::one_over_k, Weighting::plain, z);
    };
    const double lc = std::log(2 * std::cos(pi / 9));
    t.add(s30(specfun::r_frak(0.2)), 8 * pi * pi / 75 - 2 * log_phi * log_phi);
    t.add(s30(specfun::r_frak(0.4)), 2 * pi * pi / 75 - 2 * log_phi * log_phi);
    t.add(s30(8.0 / 3), pi * pi / 6 - ln3 * ln3 / 2);
    t.add(s30(specfun::r_frak(1.0 / 9)), 8 * pi * pi / 27 - 2 * lc * lc);
  });
  report(10, t.within(kTolTables),
         with_error(t, fmt("four pure-log table rows: max diff %.3g (tol %.0e)", t.worst,
                           kTolTables)));
}

void ac11() {
  Tally t;
  bool levin = false;
  const auto start = Clock::now();
  guarded(t, [&] {
    const auto r = binom::sum_family(
        SumSpec{Family::c3, 1, Sequence::one_over_k, Weighting::plain, 6.75, true}, 1e-7);
    levin = r.method == numkit::Method::levin && r.boundary_slow;
    t.add(r.value.real(), 2 * pi * pi / 3 - 2 * ln2 * ln2);
  });
  const double secs = seconds_since(start);
  report(11, t.within(kTolBoundary) && levin && secs < kTimeBoundary,
         with_error(t, fmt("z = 27/4 by Levin: diff %.3g (tol %.0e), %.3f s", t.worst, kTolBoundary,
                           secs)));
}

Tally shuffle_property(std::mt19937_64& rng) {
  Tally t;
  std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.3, 1.5);
  std::uniform_int_distribution<int> len(1, 3), sign(0, 1);
  auto letter = [&] { return Complex(re(rng), sign(rng) ? im(rng) : -im(rng)); };
  guarded(t, [&] {
    for (int c = 0; c < 50; ++c) {
      const Complex a = letter();
      std::vector<Complex> word(len(rng));
      for (auto& l : word) l = letter();
      const Complex z = 1.0;
      const Complex product = gpl::gpl_eval({{a}, z}).value * gpl::gpl_eval({word, z}).value;
      Complex sum = 0.0;
      for (const auto& w : gpl::shuffle_expand(a, word)) sum += gpl::gpl_eval({w, z}).value;
      t.add(product, sum);
    }
  });
  return t;
}

Tally functional_property(std::mt19937_64& rng) {
  Tally t;
  guarded(t, [&] {
    std::uniform_real_distribution<double> xs(-2.99, specfun::c_const() - 0.01);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const double x = xs(rng);
      if (std::abs(x) < 1e-3) continue;
      const auto [tp, tm] = specfun::tau_pm(x);
      t.add(1.0 / x - tp - tm, 1.0);
      const double product = (1 - x) / (x * x);
      t.add(std::abs(tp * tm - product) / std::max(1.0, product));
      const Complex lhs = specfun::li_n(2, x) + specfun::li_n(2, -1.0 / tp) +
                          specfun::li_n(2, -1.0 / tm);
      const Complex a = std::log(1.0 + 1.0 / tp), b = std::log(1.0 + 1.0 / tm);
      const double l = std::log1p(-x);
      t.add(lhs, -(l * l + a * a + b * b) / 6.0);
    }
    for (int i = 0; i < 100; ++i) {
      const Complex z = std::polar(0.98 * std::sqrt(unit(rng)), 2 * pi * unit(rng));
      const Complex l = std::log(1.0 - z);
      t.add(specfun::li_n(2, z) + specfun::li_n(2, 1.0 / (1.0 - 1.0 / z)), -l * l / 2.0);
    }
  });
  return t;
}

Tally mpl_property(std::mt19937_64& rng) {
  Tally t;
  std::uniform_int_distribution<int> depth_count(1, 3), depth(1, 2);
  std::uniform_real_distribution<double> radius(0.2, 0.7), angle(-pi, pi);
  guarded(t, [&] {
    for (int c = 0; c < 30; ++c) {
      gpl::MplSpec spec;
      const int n = depth_count(rng);
      int weight = 0;
      for (int j = 0; j < n; ++j) {
        const int d = weight + 2 + (n - j - 1) <= gpl::kMaxWeight ? depth(rng) : 1;
        weight += d;
        spec.depths.push_back(d);
        spec.args.push_back(std::polar(radius(rng), angle(rng)));
      }
      t.add(gpl::mpl_eval(spec).value, gpl::mpl_series_oracle(spec).value);
    }
  });
  return t;
}

Tally deriv_property() {
  Tally t;
  guarded(t, [&] {
    for (double x : {-1.0, 0.5}) t.add(closedform::deriv_relation_check(1, x, 1e-5));
  });
  return t;
}

Tally round_trip_property() {
  Tally t;
  guarded(t, [&] {
    const double lo = -3.0, hi = specfun::c_const();
    for (int i = 0; i < 1000; ++i) {
      const double x = lo + (hi - lo) * (i + 0.5) / 1000;
      t.add(specfun::solve_x_from_z3(specfun::z3_of_x(x)) - x);
    }
  });
  return t;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  ac1();
  ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  ac8();
  ac9();
  ac10();
  ac11();

  std::mt19937_64 rng(kSeed);
  const Tally shuffle = shuffle_property(rng);
  const Tally functional = functional_property(rng);
  const Tally mpl = mpl_property(rng);
  const Tally deriv = deriv_property();
  const Tally trip = round_trip_property();
  const double secs = seconds_since(start);
  const bool pass = shuffle.within(kTolShuffle) && shuffle.checks == 50 &&
                    functional.within(kTolFunctional) && mpl.within(kTolMpl) &&
                    mpl.checks == 30 && deriv.within(kTolDeriv) && deriv.checks == 2 &&
                    trip.within(kTolRoundTrip) && trip.checks == 1000 && secs < kTimeTotal;
  std::string detail = fmt("shuffle %.3g, tau/Newman/Landen %.3g, ", shuffle.worst,
                           functional.worst) +
                       fmt("mpl %.3g, derivative %.3g, round trip %.3g, ", mpl.worst, deriv.worst,
                           trip.worst) +
                       fmt("total %.2f s", secs);
  for (const Tally* t : {&shuffle, &functional, &mpl, &deriv, &trip})
    if (!t->error.empty()) detail += " error: " + t->error;
  report(12, pass, detail);

  std::printf("%s\n", failures == 0 ? "ALL ACCEPTANCE CRITERIA PASS"
                                    : (std::to_string(failures) + " CRITERIA FAIL").c_str());
  return failures == 0 ? 0 : 1;
}
