#include "invbinom/closedform.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "invbinom/gpl.hpp"
#include "invbinom/specfun.hpp"

namespace invbinom::closedform {

using binom::Family;
using binom::Sequence;
using binom::SumSpec;
using binom::Weighting;
using numkit::EvalResult;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt3 = std::numbers::sqrt3;
const Complex I(0.0, 1.0);

const double ln2 = std::log(2.0);
const double ln3 = std::log(3.0);
const double ln5 = std::log(5.0);
const double log_phi = std::log(std::numbers::phi);
const double log_2p3 = std::log(2.0 + sqrt3);
const double log_1p2 = std::log(1.0 + std::numbers::sqrt2);

constexpr double kGplTol = 1e-13;

struct TableRow {
  double nu;
  double value;
};

// S_{3,0}(1/k; r_nu) at the tabulated nu
const std::array<TableRow, 11>& s30_rows() {
  static const std::array<TableRow, 11> rows = [] {
    auto lc = [](double a) { return std::log(2.0 * std::cos(a * pi)); };
    return std::array<TableRow, 11>{{
        {1.0 / 4, pi * pi / 24 - ln2 * ln2 / 2},
        {1.0 / 5, 8 * pi * pi / 75 - 2 * log_phi * log_phi},
        {2.0 / 5, 2 * pi * pi / 75 - 2 * log_phi * log_phi},
        {1.0 / 6, pi * pi / 6 - ln3 * ln3 / 2},
        {1.0 / 9, 8 * pi * pi / 27 - 2 * lc(1.0 / 9) * lc(1.0 / 9)},
        {2.0 / 9, 2 * pi * pi / 27 - 2 * lc(2.0 / 9) * lc(2.0 / 9)},
        {4.0 / 9, 2 * pi * pi / 27 - 2 * lc(4.0 / 9) * lc(4.0 / 9)},
        {1.0 / 10, 49 * pi * pi / 150 - std::pow(2 * log_phi + ln5, 2) / 8},
        {3.0 / 10, pi * pi / 150 - std::pow(2 * log_phi - ln5, 2) / 8},
        {1.0 / 12, 3 * pi * pi / 8 - log_2p3 * log_2p3 / 2},
        {5.0 / 12, pi * pi / 24 - log_2p3 * log_2p3 / 2},
    }};
  }();
  return rows;
}

const TableRow* find_s30_row(double nu) {
  for (const auto& row : s30_rows())
    if (std::abs(row.nu - nu) < 1e-12) return &row;
  return nullptr;
}

std::vector<Complex> reals(std::initializer_list<double> xs) {
  return {xs.begin(), xs.end()};
}

std::vector<IdentityInfo> build_catalog() {
  const auto c3_grid = reals({-2.9, -2.5, -2.0, -1.5, -1.0, -0.5, 0.3, 0.5, 0.8});
  const auto x_grid = reals({0.3, 0.5, 1.0, 2.0, 5.0});
  const auto c4_grid = reals({1.3, 1.5, 2.0, 3.0, -0.3, -0.5, -1.0, -2.0});
  const std::vector<Complex> fixed = {0.0};
  std::vector<Complex> nus;
  for (const auto& row : s30_rows()) nus.emplace_back(row.nu);

  const std::string_view c3_dom = "real x in (-3, c), x != 0";
  const std::string_view c4_dom = "real x > (1+sqrt2)/2 or x < (1-sqrt2)/2";
  const std::string_view none = "no parameter";

  return {
      {Identity::thm11, "THM11", c3_dom, true, c3_grid, 1e-10},
      {Identity::thm12, "THM12", "real x in (-3, c)", true, c3_grid, 1e-11},
      {Identity::thm13a, "THM13A", "real X > 1/4", true, x_grid, 1e-10},
      {Identity::thm13b, "THM13B", c4_dom, true, c4_grid, 1e-10},
      {Identity::thm14, "THM14", c4_dom, true, c4_grid, 1e-10},
      {Identity::t15_hk_h2k_3k1, "T15_HK_H2K_3K1", c3_dom, true, c3_grid, 1e-9},
      {Identity::t15_hk_h3k_3k1, "T15_HK_H3K_3K1", c3_dom, true, c3_grid, 1e-9},
      {Identity::t15_hk_h2k_3k2, "T15_HK_H2K_3K2", c3_dom, true, c3_grid, 1e-9},
      {Identity::t15_hk_h2k_2k1, "T15_HK_H2K_2K1", c3_dom, true, c3_grid, 1e-9},
      {Identity::t15_hk_h3k_2k1, "T15_HK_H3K_2K1", c3_dom, true, c3_grid, 1e-9},
      {Identity::t16_hk_4k1, "T16_HK_4K1", "complex x with |4x(1-x)| > 1", true, c4_grid, 1e-8},
      {Identity::t16_hk_4k3, "T16_HK_4K3", "complex x with |4x(1-x)| > 1", true, c4_grid, 1e-8},
      {Identity::r_1k, "R_1K", c3_dom, true, c3_grid, 1e-10},
      {Identity::r_h2k_h3k, "R_H2K_H3K", c3_dom, true, c3_grid, 1e-10},
      {Identity::r_hk1_h2k, "R_HK1_H2K", c3_dom, true, c3_grid, 1e-10},
      {Identity::eq_kp1_half, "EQ_KP1_HALF", none, false, fixed, 1e-11},
      {Identity::eq_kp1_83, "EQ_KP1_83", none, false, fixed, 1e-11},
      {Identity::eq_4k_kp1, "EQ_4K_KP1", none, false, fixed, 1e-10},
      {Identity::ck2k_kp2, "CK2K_KP2", "real X > 1/4", true, x_grid, 1e-10},
      {Identity::arcsin_sq, "ARCSIN_SQ", "real z with |z| < 2", true,
       reals({0.5, 1.0, 1.9, -1.0}), 1e-10},
      {Identity::x2k_k2_c4, "X2K_K2_C4", "real X > 1/4", true, x_grid, 1e-10},
      {Identity::loglog_tau, "LOGLOG_TAU", "complex tau off [-1, 0]", true,
       {0.5, 2.0, Complex(1, 1), -2.0, Complex(-0.5, 0.3), Complex(-0.5, -0.3)}, 1e-10},
      {Identity::newman_sum, "NEWMAN_SUM", "real x in (-3, 1), x != 0", true,
       reals({-2.5, -1.0, -0.5, 0.3, 0.8}), 1e-11},
      {Identity::landen, "LANDEN", "complex z off [1, inf)", true,
       {0.3, -0.5, -3.0, Complex(0.2, 0.7), Complex(-1, -2)}, 1e-11},
      {Identity::cor_w2, "COR_W2", none, false, fixed, 1e-11},
      {Identity::cor_w3, "COR_W3", none, false, fixed, 1e-11},
      {Identity::cor_w4, "COR_W4", none, false, fixed, 1e-8},
      {Identity::cor_w5, "COR_W5", none, false, fixed, 1e-8},
      {Identity::table_s30, "TABLE_S30", "tabulated nu", true, nus, 1e-10},
      {Identity::table7_l4_3k1, "TABLE7_L4_3K1", none, false, fixed, 1e-10},
      {Identity::table7_l4_2k1, "TABLE7_L4_2K1", none, false, fixed, 1e-10},
      {Identity::table7_l5m1_3k1, "TABLE7_L5M1_3K1", none, false, fixed, 1e-10},
      {Identity::table7_l5m1_2k1, "TABLE7_L5M1_2K1", none, false, fixed, 1e-10},
      {Identity::table7_l5m2_3k1, "TABLE7_L5M2_3K1", none, false, fixed, 1e-10},
      {Identity::table7_l5m2_2k1, "TABLE7_L5M2_2K1", none, false, fixed, 1e-10},
      {Identity::table7_l6_3k1, "TABLE7_L6_3K1", none, false, fixed, 1e-10},
      {Identity::table7_l6_2k1, "TABLE7_L6_2K1", none, false, fixed, 1e-10},
      {Identity::rem_z4_4k1, "REM_Z4_4K1", none, false, fixed, 1e-8},
      {Identity::rem_z4_4k3, "REM_Z4_4K3", none, false, fixed, 1e-8},
      {Identity::table_s41_hk_4, "TABLE_S41_HK_4", none, false, fixed, 1e-8},
      {Identity::table_s41_hk_16, "TABLE_S41_HK_16", none, false, fixed, 1e-6},
      {Identity::boundary_s30, "BOUNDARY_S30", "z = +-27/4", true, reals({6.75, -6.75}), 1e-6},
      {Identity::mezo_hk, "MEZO_HK", "complex z with |z| < 1", true,
       {0.5, -0.5, Complex(0.3, 0.4), 0.9}, 1e-11},
  };
}

double real_param(Identity id, Complex p) {
  if (p.imag() != 0.0)
    throw Error(Errc::domain, std::string(to_string(id)) + ": parameter must be real");
  return p.real();
}

Complex atanh_principal(Complex w) { return 0.5 * (std::log(1.0 + w) - std::log(1.0 - w)); }

Complex li2(Complex z) { return specfun::li_n(2, z); }

Complex mpl(std::vector<int> depths, std::vector<Complex> args) {
  return gpl::mpl_eval({std::move(depths), std::move(args)}, kGplTol).value;
}

double catalan_gpl() { return mpl({2}, {I}).imag(); }

// Quantities shared by the C(3k,k) closed forms at x.
struct C3Point {
  double x, s, w, L, Q;
  double li2x;
  Complex D;  // Li_2(-1/tau+) - Li_2(-1/tau-)

  explicit C3Point(double x_) : x(x_) {
    s = std::sqrt((1 - x) / (3 + x));
    w = std::sqrt((1 - x) * (3 + x));
    L = std::log1p(-x);
    Q = specfun::q_of(x);
    li2x = li2(x).real();
    const auto [tp, tm] = specfun::tau_pm(x);
    D = li2(-1.0 / tp) - li2(-1.0 / tm);
  }
};

double distance_to_unit_segment(Complex a) {
  if (a.real() < 0) return std::abs(a);
  if (a.real() > 1) return std::abs(a - 1.0);
  return std::abs(a.imag());
}

// The two GPL combinations over the xi letters.
Complex t16_rhs(Complex x, bool three) {
  const Complex sx = specfun::branched_sqrt(x);
  const Complex s1 = specfun::branched_sqrt(1.0 - x);
  const Complex sp = specfun::branched_sqrt((1.0 - x) * x);
  std::array<Complex, 4> letters;
  std::array<int, 4> ls{}, ms{};
  for (int l = 0, i = 0; l < 2; ++l)
    for (int m = 0; m < 2; ++m, ++i) {
      letters[i] = specfun::xi(l, m, x);
      ls[i] = l;
      ms[i] = m;
      if (distance_to_unit_segment(letters[i]) <= 1e-6)
        throw Error(Errc::letter_on_path, "T16: xi letter within 1e-6 of [0, 1]");
    }
  Complex total{};
  for (int i = 0; i < 4; ++i) {
    const double sl = ls[i] ? -1.0 : 1.0;
    const double sm = ms[i] ? -1.0 : 1.0;
    const Complex c = sp * (sl * s1 - sm * sx) / (4.0 * (2.0 * x - 1.0));
    for (int j = 0; j < 4; ++j) {
      const Complex g = gpl::gpl_eval({{letters[i], letters[j]}, 1.0}, kGplTol).value;
      if (!three) {
        total -= c * g;
      } else {
        const Complex pole = sl * s1 + sm * sx - 2.0 * sp - sl * sm;
        total += 2.0 * sp * sp * sp * g / pole + c * g;
      }
    }
  }
  return total;
}

Complex c3_rhs(Identity id, const C3Point& p) {
  const double x = p.x, s = p.s, w = p.w, L = p.L, Q = p.Q;
  const double d = 3 - 2 * x;
  switch (id) {
    case Identity::thm11:
      return 2 * (1 - x) * Q * Q / (x * x * x) -
             (x * x + 15 * x - 18) / (x * x * (2 * x - 3)) * s * Q -
             3 * (1 - x) * L * L / (2 * x * x * x) +
             3 * (x - 6) * (x - 1) * L / (2 * x * x * (2 * x - 3));
    case Identity::thm12:
      return 2 * Q * Q / 3 - L * L / 2;
    case Identity::t15_hk_h2k_3k1:
      return -(1 - x) / (2 * x * d) * (Q * Q + 3 * L * L / 4) - (3 - x) / (2 * x * d) * s * Q * L;
    case Identity::t15_hk_h3k_3k1:
      return -(1 - x) / (2 * x * d) * (3 * p.li2x + 2 * Q * Q / 3 + L * L) +
             I * (3 - x) / (2 * x * d) * s * p.D - (3 - x) / (2 * x * d) * s * Q * L;
    case Identity::t15_hk_h2k_3k2:
      return -(3 - x) * (1 - x) / (2 * x * x * d) * Q * Q + 3 * (3 + x) / (x * x) * s * Q +
             (9 - 6 * x - x * x) / (2 * x * x * d) * s * Q * L + 9 * (1 - x) / (2 * x * x) * L -
             3 * (3 - x) * (1 - x) / (8 * x * x * d) * L * L;
    case Identity::t15_hk_h2k_2k1:
      return -(1 - x) * x / (3 * d) * (Q * Q + 3 * L * L / 4) +
             x * (3 - x * x) / (3 * w * d) * Q * L;
    case Identity::t15_hk_h3k_2k1:
      return -(1 - x) * x / (3 * d) * (3 * p.li2x + 2 * Q * Q / 3 + L * L) -
             I * x * (3 - x * x) / (3 * w * d) * p.D + x * (3 - x * x) / (3 * w * d) * Q * L;
    case Identity::r_1k:
      return 2 * x / d * s * Q + x * L / d;
    case Identity::r_h2k_h3k:
      return x * p.li2x / d + I * x / d * s * p.D + (1 - x) / d * (Q * Q / 3 - L * L / 4);
    case Identity::r_hk1_h2k:
      return -(1 - x) * Q * Q / d - x / d * s * Q * L + (3 - x) * L * L / (4 * d);
    default:
      break;
  }
  throw Error(Errc::domain, "c3_rhs: not a C(3k,k) parameter identity");
}

Complex table7_rhs(Identity id) {
  switch (id) {
    case Identity::table7_l4_3k1:
    case Identity::table7_l4_2k1: {
      const double G = catalan_gpl();
      const double base = ln2 * ln2 - 5 * pi * pi / 24;
      return id == Identity::table7_l4_3k1 ? base / 5 - 4 * G / 5 : 2 * base / 15 + 2 * G / 15;
    }
    case Identity::table7_l5m1_3k1:
    case Identity::table7_l5m1_2k1:
    case Identity::table7_l5m2_3k1:
    case Identity::table7_l5m2_2k1: {
      const double r5 = std::sqrt(5.0);
      const Complex vs = std::polar(1.0, 2 * pi / 5);
      const double a = mpl({2}, {vs}).imag();
      const double b = mpl({2}, {vs * vs}).imag();
      const double lp2 = log_phi * log_phi;
      switch (id) {
        case Identity::table7_l5m1_3k1:
          return (3 * r5 - 1) * (lp2 - 29 * pi * pi / 150) / 44 -
                 std::sqrt(2.0) * (5 * r5 + 2) * (a + 2 * b + 4 * pi * log_phi / 5) /
                     (22 * std::sqrt(5 + r5));
        case Identity::table7_l5m1_2k1:
          return (2 * r5 + 3) * (lp2 - 29 * pi * pi / 150) / 33 +
                 std::sqrt(2.0) * (5 * r5 - 9) * (a + 2 * b + 4 * pi * log_phi / 5) /
                     (66 * std::sqrt(5 + r5));
        case Identity::table7_l5m2_3k1:
          return -(3 * r5 + 1) * (lp2 + 49 * pi * pi / 150) / 44 +
                 std::sqrt(2.0) * (5 * r5 - 2) * (-(2 * a - b) + 2 * pi * log_phi / 5) /
                     (22 * std::sqrt(5 - r5));
        default:
          return -(2 * r5 - 3) * (lp2 + 49 * pi * pi / 150) / 33 -
                 std::sqrt(2.0) * (5 * r5 + 9) * (-(2 * a - b) + 2 * pi * log_phi / 5) /
                     (66 * std::sqrt(5 - r5));
      }
    }
    case Identity::table7_l6_3k1:
    case Identity::table7_l6_2k1: {
      const Complex omega = std::polar(1.0, 2 * pi / 3);
      const Complex rho = std::polar(1.0, pi / 3);
      const double core = 6 * mpl({1, 1}, {omega, rho}).real() - 3 * ln2 * ln3 + ln3 * ln3 -
                          pi * pi / 6;
      const double im = mpl({2}, {omega}).imag();
      return id == Identity::table7_l6_3k1
                 ? 3 * core / 28 - 5 * sqrt3 * (5 * im / 2 + pi * ln2) / 28
                 : 2 * core / 7 - 2 * (5 * im / 2 + pi * ln2) / (21 * sqrt3);
    }
    default:
      break;
  }
  throw Error(Errc::domain, "table7_rhs: not a table row");
}

Complex corollary_rhs(Identity id) {
  const double z3 = specfun::zeta(3);
  const double lam = ln2;
  switch (id) {
    case Identity::cor_w2:
      return pi * pi / 24 - lam * lam / 2;
    case Identity::cor_w3: {
      const double G = catalan_gpl();
      return -33 * z3 / 16 + pi * G + lam * lam * lam / 6 - pi * pi * lam / 24;
    }
    case Identity::cor_w4: {
      const double G = catalan_gpl();
      const double l31 = mpl({3, 1}, {-1.0, 1.0}).real();
      const double l21 = mpl({2, 1}, {1.0, I}).imag();
      return -21 * l31 / 4 - pi * l21 + 33 * z3 * lam / 16 - pi * G * lam / 2 -
             std::pow(lam, 4) / 24 + pi * pi * lam * lam / 48 + std::pow(pi, 4) / 60;
    }
    case Identity::cor_w5: {
      const double G = catalan_gpl();
      const double z5 = specfun::zeta(5);
      const double l311 = mpl({3, 1, 1}, {-1.0, 1.0, 1.0}).real();
      const double l31 = mpl({3, 1}, {-1.0, 1.0}).real();
      const double l211 = mpl({2, 1, 1}, {1.0, 1.0, I}).imag();
      const double l4 = mpl({4}, {I}).imag();
      const double l21 = mpl({2, 1}, {1.0, I}).imag();
      return 51 * l311 / 4 - 1107 * z5 / 128 + 21 * l31 * lam / 4 + 4 * pi * l211 / 3 +
             13 * pi * l4 / 3 + pi * lam * l21 / 3 - 33 * lam * lam * z3 / 32 -
             191 * pi * pi * z3 / 192 + pi * G * lam * lam / 6 + 2 * std::pow(pi, 3) * G / 9 +
             std::pow(lam, 5) / 120 - pi * pi * std::pow(lam, 3) / 144 - std::pow(pi, 4) * lam / 60;
    }
    default:
      break;
  }
  throw Error(Errc::domain, "corollary_rhs: not a corollary example");
}

Complex s41_rhs(Identity id) {
  const double z3 = specfun::zeta(3);
  const double G = catalan_gpl();
  if (id == Identity::table_s41_hk_16) {
    const Complex theta = std::polar(1.0, pi / 4);
    const double lt = log_1p2;
    const double l111 = (mpl({1, 1, 1}, {I, 1.0, theta}) + mpl({1, 1, 1}, {I, 1.0, -theta})).real();
    const double l11 = mpl({1, 1}, {I, theta}).real();
    return -384 * l111 - 196 * z3 - 256 * lt * l11 + 48 * pi * G +
           2 * (12 * ln2 * ln2 * lt - 4 * ln2 * lt * lt + 16 * lt * lt * lt - 7 * std::pow(ln2, 3)) -
           pi * pi * (4 * lt - 63 * ln2) / 6;
  }
  const Complex omega = std::polar(1.0, 2 * pi / 3);
  const Complex rho = std::polar(1.0, pi / 3);
  const Complex ir = I / rho;
  const double lt = log_2p3;
  const double a = (mpl({1, 1, 1}, {rho, 1.0, ir}) + mpl({1, 1, 1}, {rho, 1.0, -ir})).real();
  const double b = (mpl({1, 1, 1}, {omega, 1.0, ir}) + mpl({1, 1, 1}, {omega, 1.0, -ir})).real();
  const double c = mpl({1, 1}, {rho, ir}).real();
  const double e = mpl({1, 1}, {omega, ir}).real();
  const double im = mpl({2}, {omega}).imag();
  return 48 * a - 8 * b + 383 * z3 / 9 + 32 * lt * c - 4 * lt * e - 11 * pi * im + 4 * pi * G / 3 -
         lt * lt * (4 * ln2 - lt) / 2 + pi * pi * (-109 * lt + 36 * ln2 + 10 * ln3) / 72;
}

Complex rem_z4_rhs(Identity id) {
  const Complex omega = std::polar(1.0, 2 * pi / 3);
  const Complex rho = std::polar(1.0, pi / 3);
  const Complex ir = I / rho;
  const double M = (4.0 * mpl({1, 1}, {rho, ir}) - mpl({1, 1}, {omega, ir})).real();
  const double G = catalan_gpl();
  const double lt = log_2p3;
  if (id == Identity::rem_z4_4k1)
    return M / sqrt3 + 4 * G / 3 - ln2 * lt / sqrt3 + lt * lt / (8 * sqrt3) -
           ln3 * lt / (4 * sqrt3) - pi * ln2 / 2 + 29 * pi * pi / (96 * sqrt3);
  return -5 * M / sqrt3 + 4 * G + 5 * ln2 * lt / sqrt3 - 5 * lt * lt / (8 * sqrt3) +
         5 * ln3 * lt / (4 * sqrt3) - 3 * pi * ln2 / 2 - 145 * pi * pi / (96 * sqrt3);
}

}  // namespace

std::span<const IdentityInfo> catalog() {
  static const std::vector<IdentityInfo> table = build_catalog();
  return table;
}

const IdentityInfo& info(Identity id) {
  for (const auto& entry : catalog())
    if (entry.id == id) return entry;
  throw Error(Errc::domain, "info: identity missing from the catalog");
}

std::string_view to_string(Identity id) { return info(id).name; }

std::optional<Identity> parse_identity(std::string_view name) {
  for (const auto& entry : catalog()) {
    if (entry.name.size() != name.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < name.size() && same; ++i)
      same = std::toupper(static_cast<unsigned char>(name[i])) == entry.name[i];
    if (same) return entry.id;
  }
  return std::nullopt;
}

void check_domain(Identity id, Complex p) {
  const std::string name(to_string(id));
  auto fail = [&](const std::string& why) { throw Error(Errc::domain, name + ": " + why); };
  if (!info(id).takes_param) return;
  if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) fail("parameter is not finite");

  switch (id) {
    case Identity::thm12: {
      const double x = real_param(id, p);
      if (!(x > -3 && x < specfun::c_const())) fail("x outside (-3, c)");
      return;
    }
    case Identity::thm11:
    case Identity::t15_hk_h2k_3k1:
    case Identity::t15_hk_h3k_3k1:
    case Identity::t15_hk_h2k_3k2:
    case Identity::t15_hk_h2k_2k1:
    case Identity::t15_hk_h3k_2k1:
    case Identity::r_1k:
    case Identity::r_h2k_h3k:
    case Identity::r_hk1_h2k: {
      const double x = real_param(id, p);
      if (!(x > -3 && x < specfun::c_const()) || x == 0.0) fail("x outside (-3, c) minus {0}");
      return;
    }
    case Identity::thm13a:
    case Identity::ck2k_kp2:
    case Identity::x2k_k2_c4:
      if (!(real_param(id, p) > 0.25)) fail("X must exceed 1/4");
      return;
    case Identity::thm13b:
    case Identity::thm14: {
      const double x = real_param(id, p);
      if (!(x > (1 + std::numbers::sqrt2) / 2 || x < (1 - std::numbers::sqrt2) / 2))
        fail("x inside [(1-sqrt2)/2, (1+sqrt2)/2]");
      return;
    }
    case Identity::t16_hk_4k1:
    case Identity::t16_hk_4k3:
      if (!(std::abs(4.0 * p * (1.0 - p)) > 1.0)) fail("|4x(1-x)| must exceed 1");
      return;
    case Identity::arcsin_sq:
      if (!(std::abs(real_param(id, p)) < 2.0)) fail("|z| must be below 2");
      return;
    case Identity::loglog_tau:
      if (p.real() >= -1 && p.real() <= 0 && std::abs(p.imag()) < 1e-9)
        fail("tau on the segment [-1, 0]");
      return;
    case Identity::newman_sum: {
      const double x = real_param(id, p);
      if (!(x > -3 && x < 1) || x == 0.0) fail("x outside (-3, 1) minus {0}");
      return;
    }
    case Identity::landen:
      if (p.imag() == 0.0 && p.real() >= 1.0) fail("z on the cut [1, inf)");
      return;
    case Identity::table_s30:
      if (p.imag() != 0.0 || !find_s30_row(p.real())) fail("nu is not a tabulated value");
      return;
    case Identity::mezo_hk:
      if (!(std::abs(p) < 1.0)) fail("|z| must be below 1");
      return;
    case Identity::boundary_s30:
      if (p.imag() != 0.0 || std::abs(p.real()) != 6.75) fail("z must be +27/4 or -27/4");
      return;
    default:
      return;
  }
}

std::optional<SumSpec> series_for(Identity id, Complex p) {
  check_domain(id, p);
  auto c3 = [&](int r, Sequence s, Weighting w) {
    return SumSpec{Family::c3, r, s, w, specfun::z3_of_x(p.real())};
  };
  auto c4 = [&](int r, Sequence s, Weighting w, Complex z) { return SumSpec{Family::c4, r, s, w, z}; };
  const Complex z4 = 4.0 / (p * (1.0 - p));
  switch (id) {
    case Identity::thm11: return c3(0, Sequence::one, Weighting::k_plus_1);
    case Identity::thm12: return c3(2, Sequence::one, Weighting::plain);
    case Identity::t15_hk_h2k_3k1: return c3(0, Sequence::hk_minus_h2k, Weighting::three_k_plus_1);
    case Identity::t15_hk_h3k_3k1:
      return c3(0, Sequence::hk_minus_h3k_plus_1, Weighting::three_k_plus_1);
    case Identity::t15_hk_h2k_3k2: return c3(0, Sequence::hk_minus_h2k, Weighting::three_k_plus_2);
    case Identity::t15_hk_h2k_2k1:
      return c3(0, Sequence::hk_minus_h2k_minus_2, Weighting::two_k_minus_1);
    case Identity::t15_hk_h3k_2k1:
      return c3(0, Sequence::hk_minus_h3k_minus_1, Weighting::two_k_minus_1);
    case Identity::r_1k: return c3(1, Sequence::one, Weighting::plain);
    case Identity::r_h2k_h3k: return c3(1, Sequence::h2k_minus_h3k, Weighting::plain);
    case Identity::r_hk1_h2k: return c3(1, Sequence::hk1_minus_h2k, Weighting::plain);
    case Identity::thm13a: {
      const double X = p.real();
      return c4(0, Sequence::one, Weighting::k_plus_1, 1.0 / (X * X));
    }
    case Identity::x2k_k2_c4: {
      const double X = p.real();
      return c4(2, Sequence::one, Weighting::plain, 1.0 / (X * X));
    }
    case Identity::ck2k_kp2:
      return SumSpec{Family::c2, 0, Sequence::one, Weighting::k_plus_2, 1.0 / p.real()};
    case Identity::thm13b: return c4(0, Sequence::one, Weighting::k_plus_1, z4.real());
    case Identity::thm14: return c4(2, Sequence::one, Weighting::plain, z4.real());
    case Identity::t16_hk_4k1: return c4(0, Sequence::hk, Weighting::four_k_plus_1, z4);
    case Identity::t16_hk_4k3: return c4(0, Sequence::hk, Weighting::four_k_plus_3, z4);
    case Identity::arcsin_sq:
      return SumSpec{Family::c2, 2, Sequence::one, Weighting::plain, p.real() * p.real()};
    case Identity::eq_kp1_half:
      return SumSpec{Family::c3, 0, Sequence::one, Weighting::k_plus_1, 0.5};
    case Identity::eq_kp1_83:
      return SumSpec{Family::c3, 0, Sequence::one, Weighting::k_plus_1, 8.0 / 3.0};
    case Identity::eq_4k_kp1: return c4(0, Sequence::one, Weighting::k_plus_1, 4.0);
    case Identity::cor_w2:
    case Identity::cor_w3:
    case Identity::cor_w4:
    case Identity::cor_w5: {
      const int r = 2 + static_cast<int>(id) - static_cast<int>(Identity::cor_w2);
      return SumSpec{Family::c3, r, Sequence::one, Weighting::plain, 0.5};
    }
    case Identity::table_s30:
      return SumSpec{Family::c3, 2, Sequence::one, Weighting::plain, specfun::r_frak(p.real())};
    case Identity::table7_l4_3k1:
    case Identity::table7_l5m1_3k1:
    case Identity::table7_l5m2_3k1:
    case Identity::table7_l6_3k1:
    case Identity::table7_l4_2k1:
    case Identity::table7_l5m1_2k1:
    case Identity::table7_l5m2_2k1:
    case Identity::table7_l6_2k1: {
      double nu = 1.0 / 4;
      if (id == Identity::table7_l5m1_3k1 || id == Identity::table7_l5m1_2k1) nu = 1.0 / 5;
      if (id == Identity::table7_l5m2_3k1 || id == Identity::table7_l5m2_2k1) nu = 2.0 / 5;
      if (id == Identity::table7_l6_3k1 || id == Identity::table7_l6_2k1) nu = 1.0 / 6;
      const bool odd = id == Identity::table7_l4_2k1 || id == Identity::table7_l5m1_2k1 ||
                       id == Identity::table7_l5m2_2k1 || id == Identity::table7_l6_2k1;
      const double z = nu == 1.0 / 4 ? 0.5 : nu == 1.0 / 6 ? 8.0 / 3.0 : specfun::r_frak(nu);
      return odd ? SumSpec{Family::c3, 0, Sequence::hk_minus_h3k_minus_1, Weighting::two_k_minus_1, z}
                 : SumSpec{Family::c3, 0, Sequence::hk_minus_h3k_plus_1, Weighting::three_k_plus_1, z};
    }
    case Identity::rem_z4_4k1: return c4(0, Sequence::hk, Weighting::four_k_plus_1, 4.0);
    case Identity::rem_z4_4k3: return c4(0, Sequence::hk, Weighting::four_k_plus_3, 4.0);
    case Identity::table_s41_hk_4: return c4(2, Sequence::hk, Weighting::plain, 4.0);
    case Identity::table_s41_hk_16: {
      SumSpec spec = c4(2, Sequence::hk, Weighting::plain, 16.0);
      spec.boundary = true;
      return spec;
    }
    case Identity::boundary_s30: {
      SumSpec spec{Family::c3, 2, Sequence::one, Weighting::plain, p.real()};
      spec.boundary = true;
      return spec;
    }
    default:
      return std::nullopt;
  }
}

Complex closed_eval(Identity id, Complex p) {
  check_domain(id, p);
  switch (id) {
    case Identity::thm11:
    case Identity::thm12:
    case Identity::t15_hk_h2k_3k1:
    case Identity::t15_hk_h3k_3k1:
    case Identity::t15_hk_h2k_3k2:
    case Identity::t15_hk_h2k_2k1:
    case Identity::t15_hk_h3k_2k1:
    case Identity::r_1k:
    case Identity::r_h2k_h3k:
    case Identity::r_hk1_h2k:
      if (id == Identity::thm12 && p.real() == 0.0) return 0.0;
      return c3_rhs(id, C3Point(p.real()));

    case Identity::thm13a:
    case Identity::ck2k_kp2:
    case Identity::x2k_k2_c4: {
      const double X = p.real();
      const double r_m = std::sqrt(4 * X - 1);
      const double r_p = std::sqrt(4 * X + 1);
      const double a = std::atan(1.0 / r_m);
      const double b = std::atanh(1.0 / r_p);
      const double head = 4 * X * (12 * X - 1) * a / r_m - 24 * X * X * a * a;
      if (id == Identity::ck2k_kp2) return head - 6 * X;
      if (id == Identity::x2k_k2_c4) {
        const double lg = std::log((r_p + 1) / (r_p - 1));
        return 4 * a * a - lg * lg;
      }
      return head - 4 * X * (12 * X + 1) * b / r_p + 24 * X * X * b * b;
    }

    case Identity::thm13b:
    case Identity::thm14: {
      const double x = p.real();
      const Complex sx = specfun::branched_sqrt(x);
      const Complex s1 = specfun::branched_sqrt(1.0 - x);
      const Complex A = atanh_principal(1.0 / sx);
      const Complex B = atanh_principal(1.0 / s1);
      if (id == Identity::thm14) return -2.0 * A * A - 2.0 * B * B;
      return 2 * (1 - x) * (6 * x - 1) / (1 - 2 * x) * sx * A +
             2 * x * (6 * x - 5) / (1 - 2 * x) * s1 * B + 3 * x * (1 - x) * (A * A + B * B);
    }

    case Identity::t16_hk_4k1: return t16_rhs(p, false);
    case Identity::t16_hk_4k3: return t16_rhs(p, true);

    case Identity::eq_kp1_half:
      return 3 * ln2 * ln2 - pi * pi / 4 + (8 * pi - 21 * ln2) / 5;
    case Identity::eq_kp1_83:
      return (9 * ln3 * ln3 - 3 * pi * pi) / 16 + 11 * sqrt3 * pi / 14 - 9 * ln3 / 7;
    case Identity::eq_4k_kp1: {
      const double lq = std::log((sqrt3 + 1) / (sqrt3 - 1));
      return (20 * pi - 3 * pi * pi) / 8 - 7 / sqrt3 * lq + 1.5 * lq * lq;
    }
    case Identity::arcsin_sq: {
      const double a = std::asin(p.real() / 2);
      return 2 * a * a;
    }
    case Identity::loglog_tau: {
      const Complex l1 = std::log(1.0 + p);
      const Complex l0 = std::log(p);
      return 0.5 * l1 * l1 + 0.5 * l0 * l0 - l0 * l1;
    }
    case Identity::newman_sum: {
      const double x = p.real();
      const auto [tp, tm] = specfun::tau_pm(x);
      const double L = std::log1p(-x);
      const Complex a = std::log(1.0 + 1.0 / tp);
      const Complex b = std::log(1.0 + 1.0 / tm);
      return -(L * L + a * a + b * b) / 6.0;
    }
    case Identity::landen: {
      const Complex l = std::log(1.0 - p);
      return -0.5 * l * l;
    }
    case Identity::mezo_hk: {
      const Complex l = std::log(1.0 - p);
      return li2(p) + 0.5 * l * l;
    }
    case Identity::cor_w2:
    case Identity::cor_w3:
    case Identity::cor_w4:
    case Identity::cor_w5:
      return corollary_rhs(id);
    case Identity::table_s30:
      return find_s30_row(p.real())->value;
    case Identity::table7_l4_3k1:
    case Identity::table7_l4_2k1:
    case Identity::table7_l5m1_3k1:
    case Identity::table7_l5m1_2k1:
    case Identity::table7_l5m2_3k1:
    case Identity::table7_l5m2_2k1:
    case Identity::table7_l6_3k1:
    case Identity::table7_l6_2k1:
      return table7_rhs(id);
    case Identity::rem_z4_4k1:
    case Identity::rem_z4_4k3:
      return rem_z4_rhs(id);
    case Identity::table_s41_hk_4:
    case Identity::table_s41_hk_16:
      return s41_rhs(id);
    case Identity::boundary_s30:
      if (p.real() > 0) return 2 * pi * pi / 3 - 2 * ln2 * ln2;
      return c3_rhs(Identity::thm12, C3Point(specfun::c_const()));
  }
  throw Error(Errc::domain, "closed_eval: unknown identity");
}

EvalResult lhs_eval(Identity id, Complex p, double tol) {
  if (auto spec = series_for(id, p)) return binom::sum_family(*spec, tol);

  EvalResult out;
  out.method = numkit::Method::closed;
  switch (id) {
    case Identity::loglog_tau: {
      const numkit::Integrand f = [p](double t) {
        return std::log((1.0 - t) / t) / (t + p);
      };
      numkit::QuadOptions opts;
      opts.singular_lo = opts.singular_hi = true;
      return numkit::adaptive_quad(f, 0.0, 1.0, tol, opts);
    }
    case Identity::newman_sum: {
      const double x = p.real();
      const auto [tp, tm] = specfun::tau_pm(x);
      out.value = li2(x) + li2(-1.0 / tp) + li2(-1.0 / tm);
      break;
    }
    case Identity::landen:
      out.value = li2(p) + li2(p / (p - 1.0));
      break;
    case Identity::mezo_hk: {
      const std::array<int, 1> one = {1};
      return binom::hprod_gf(one, 1, p, tol);
    }
    default:
      throw Error(Errc::domain, "lhs_eval: identity has no left-hand side");
  }
  out.abs_err = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(out.value));
  return out;
}

double deriv_relation_check(int n, double x, double h) {
  if (n != 1) throw Error(Errc::domain, "deriv_relation_check: only n = 1 is supported");
  if (!(x > -3 && x < specfun::c_const()) || x == 0.0)
    throw Error(Errc::domain, "deriv_relation_check: x outside (-3, c) minus {0}");
  auto sum_at = [](double xx, int r) {
    const SumSpec spec{Family::c3, r, Sequence::one_over_k, Weighting::plain,
                       specfun::z3_of_x(xx)};
    return binom::sum_family(spec, 1e-15).value.real();
  };
  const double derivative = (sum_at(x + h, 1) - sum_at(x - h, 1)) / (2 * h);
  return std::abs(x * (1 - x) / (3 - 2 * x) * derivative - sum_at(x, 0));
}

}  // namespace invbinom::closedform
