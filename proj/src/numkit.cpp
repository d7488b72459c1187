#include "invbinom/numkit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <queue>

#include <Eigen/Dense>
#include <string>

namespace invbinom::numkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  Complex result{};
  double err = 0.0;
  double resabs = 0.0;

  bool operator<(const Segment& o) const { return err < o.err; }
};

Segment gk15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<Complex, 7> f1{}, f2{};
  const Complex fc = f(center);
  Complex resk = fc * kWgk[7];
  Complex resg = fc * kWg[3];
  double resabs = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    resk += (f1[j] + f2[j]) * kWgk[j];
    resabs += (std::abs(f1[j]) + std::abs(f2[j])) * kWgk[j];
    if (j % 2 == 1) resg += (f1[j] + f2[j]) * kWg[j / 2];
  }
  Segment s{a, b, resk * half, 0.0, resabs * std::abs(half)};
  double err = std::abs((resk - resg) * half);
  // QUADPACK's sharpening of the raw Kronrod-Gauss difference.
  const Complex mean = resk * 0.5;
  double resasc = std::abs(fc - mean) * kWgk[7];
  for (int j = 0; j < 7; ++j) resasc += (std::abs(f1[j] - mean) + std::abs(f2[j] - mean)) * kWgk[j];
  resasc *= std::abs(half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (s.resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(50.0 * kEps * s.resabs, err);
  s.err = err;
  return s;
}

EvalResult integrate_plain(const Integrand& f, double a, double b, double tol,
                           std::int64_t max_nodes) {
  std::int64_t nodes = 0;
  auto eval = [&](double lo, double hi) {
    nodes += 15;
    return gk15(f, lo, hi);
  };
  std::priority_queue<Segment> heap;
  Segment first = eval(a, b);
  Complex total = first.result;
  double total_err = first.err;
  double total_abs = first.resabs;
  heap.push(first);

  while (true) {
    const double floor = 50.0 * kEps * total_abs * (1.0 + 1e-6);
    if (total_err <= std::max(tol, floor)) break;
    if (nodes + 30 > max_nodes) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "adaptive_quad: node budget exhausted at error estimate %.3g",
                    total_err);
      throw Error(Errc::non_converged, msg);
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval can no longer be split in double precision; accept what we have
      heap.push(worst);
      break;
    }
    Segment left = eval(worst.a, mid);
    Segment right = eval(mid, worst.b);
    total += left.result + right.result - worst.result;
    total_err += left.err + right.err - worst.err;
    total_abs += left.resabs + right.resabs - worst.resabs;
    heap.push(left);
    heap.push(right);
  }

  // recompute the totals from the segments to shed accumulated drift
  CompensatedSum sum;
  double err = 0.0;
  while (!heap.empty()) {
    sum.add(heap.top().result);
    err += heap.top().err;
    heap.pop();
  }
  EvalResult out;
  out.value = sum.value();
  out.abs_err = err;
  out.work = nodes;
  out.method = Method::quad;
  return out;
}

// Integral over [a, b] of f with a log-type singularity at `anchor` (either a
// or b), via t = anchor + (other - anchor) e^{-u}, u = v/(1-v), v in [0, 1].
EvalResult integrate_from_singular(const Integrand& f, double anchor, double other, double tol,
                                   std::int64_t max_nodes) {
  const double len = other - anchor;  // may be negative
  Integrand g = [&f, anchor, len](double v) -> Complex {
    if (v >= 1.0) return 0.0;
    const double u = v / (1.0 - v);
    const double w = std::exp(-u);
    if (w == 0.0) return 0.0;
    const double t = anchor + len * w;
    if (t == anchor) return 0.0;
    return f(t) * (len * w / ((1.0 - v) * (1.0 - v)));
  };
  EvalResult r = integrate_plain(g, 0.0, 1.0, tol, max_nodes);
  // dt = -len e^{-u} du, and v = 0 sits at t = other, so the orientation flips
  // exactly when anchor is the upper limit.
  if (len < 0) r.value = -r.value;
  return r;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::direct: return "DIRECT";
    case Method::levin: return "LEVIN";
    case Method::quad: return "QUAD";
    case Method::closed: return "CLOSED";
    case Method::tail_fit: return "TAIL_FIT";
  }
  return "?";
}

void CompensatedSum::add(Complex v) {
  auto step = [](double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  };
  double sr = sum_.real(), si = sum_.imag(), cr = comp_.real(), ci = comp_.imag();
  step(sr, cr, v.real());
  step(si, ci, v.imag());
  sum_ = {sr, si};
  comp_ = {cr, ci};
}

EvalResult adaptive_quad(const Integrand& f, double a, double b, double tol,
                         const QuadOptions& opts) {
  if (!(a < b)) throw Error(Errc::domain, "adaptive_quad: need a < b");
  if (!(tol > 0)) throw Error(Errc::domain, "adaptive_quad: tol must be positive");

  if (!opts.singular_lo && !opts.singular_hi) return integrate_plain(f, a, b, tol, opts.max_nodes);
  if (opts.singular_lo && !opts.singular_hi)
    return integrate_from_singular(f, a, b, tol, opts.max_nodes);
  if (!opts.singular_lo && opts.singular_hi)
    return integrate_from_singular(f, b, a, tol, opts.max_nodes);

  const double mid = 0.5 * (a + b);
  EvalResult left = integrate_from_singular(f, a, mid, 0.5 * tol, opts.max_nodes / 2);
  EvalResult right = integrate_from_singular(f, b, mid, 0.5 * tol, opts.max_nodes / 2);
  EvalResult out;
  out.value = left.value + right.value;
  out.abs_err = left.abs_err + right.abs_err;
  out.work = left.work + right.work;
  out.method = Method::quad;
  return out;
}

std::int64_t term_budget() {
  if (const char* env = std::getenv("INVBINOM_MAX_TERMS")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 2'000'000;
}

EvalResult sum_series(const Term& term, std::int64_t start_k, TailModel tail, double tol,
                      const SumOptions& opts) {
  using Kind = TailModel::Kind;
  if (tail.kind == Kind::power && !(tail.parameter < -1.0))
    throw Error(Errc::tail_unbounded,
                "sum_series: power-law tail with exponent " + std::to_string(tail.parameter));
  if (tail.kind == Kind::geometric && !(tail.parameter > 0.0 && tail.parameter < 1.0)) {
    if (tail.parameter == 0.0) {
      // a zero ratio means only the first term survives
    } else {
      throw Error(Errc::tail_unbounded,
                  "sum_series: geometric ratio " + std::to_string(tail.parameter) + " not in (0,1)");
    }
  }

  CompensatedSum sum;
  double abs_mass = 0.0;
  double prev_mag = 0.0;
  int quiet_run = 0;
  std::int64_t n = 0;
  double bound = std::numeric_limits<double>::infinity();

  for (std::int64_t k = start_k;; ++k) {
    if (n >= opts.max_terms)
      throw Error(Errc::budget_exceeded, "sum_series: " + std::to_string(n) +
                                             " terms summed without reaching tolerance");
    const Complex t = term(k);
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
      throw Error(Errc::non_converged, "sum_series: non-finite term at k=" + std::to_string(k));
    sum.add(t);
    ++n;
    const double mag = std::abs(t);
    abs_mass += mag;

    switch (tail.kind) {
      case Kind::geometric: {
        const double r = tail.parameter;
        const double lead = std::max(mag, prev_mag * r);
        bound = r == 0.0 ? 0.0 : lead * r / (1.0 - r);
        break;
      }
      case Kind::power: {
        const double p = tail.parameter;
        const double kk = static_cast<double>(std::max<std::int64_t>(k, 1));
        bound = mag * kk / (-p - 1.0) + mag;
        break;
      }
      case Kind::none: {
        quiet_run = mag <= 0.1 * tol ? quiet_run + 1 : 0;
        bound = quiet_run >= 8 ? 8.0 * 0.1 * tol : std::numeric_limits<double>::infinity();
        break;
      }
    }
    prev_mag = mag;
    if (n >= opts.min_terms && bound <= tol) break;
  }

  EvalResult out;
  out.value = sum.value();
  out.abs_err = bound + 4.0 * kEps * abs_mass;
  out.work = n;
  out.method = Method::direct;
  return out;
}

std::vector<Complex> partial_sums(const Term& term, std::int64_t start_k, std::size_t count) {
  std::vector<Complex> out;
  out.reserve(count);
  CompensatedSum sum;
  for (std::size_t i = 0; i < count; ++i) {
    sum.add(term(start_k + static_cast<std::int64_t>(i)));
    out.push_back(sum.value());
  }
  return out;
}

namespace {

// Levin u-transform L_k^{(n)} with beta = 1 and remainder estimate
// omega_m = (m + beta) a_m.
bool levin_u(std::span<const Complex> s, std::size_t n, std::size_t k, Complex& value) {
  constexpr double beta = 1.0;
  Complex num{}, den{};
  double binom = 1.0;
  const double base = static_cast<double>(n + k) + beta;
  for (std::size_t j = 0; j <= k; ++j) {
    const std::size_t m = n + j;
    const Complex a = m == 0 ? s[0] : s[m] - s[m - 1];
    if (a == Complex{}) return false;
    const Complex omega = (static_cast<double>(m) + beta) * a;
    const double scale = std::pow((static_cast<double>(m) + beta) / base, static_cast<double>(k) - 1.0);
    const double c = ((j % 2) ? -binom : binom) * scale;
    num += c * s[m] / omega;
    den += c / omega;
    binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
  }
  if (den == Complex{}) return false;
  value = num / den;
  return std::isfinite(value.real()) && std::isfinite(value.imag());
}

}  // namespace

EvalResult levin_accelerate(std::span<const Complex> s) {
  if (s.size() < 8) throw Error(Errc::domain, "levin_accelerate: need at least 8 partial sums");

  // constant tail: the limit is already there
  const Complex last = s.back();
  bool constant = true;
  for (std::size_t i = s.size() - 4; i < s.size(); ++i) constant = constant && s[i] == last;
  if (constant) {
    EvalResult out;
    out.value = last;
    out.work = static_cast<std::int64_t>(s.size());
    out.method = Method::levin;
    return out;
  }

  // Orders are capped where the alternating binomial weights begin to cost
  // more digits than they gain. Among the candidates (anchored at the start
  // and at the end of the data) the pair of consecutive orders that agree
  // best is taken as the estimate.
  const std::size_t kmax = std::min<std::size_t>(s.size() - 1, 30);
  double best_diff = std::numeric_limits<double>::infinity();
  Complex best{};
  for (const bool anchor_end : {false, true}) {
    Complex prev{};
    bool have_prev = false;
    for (std::size_t k = 2; k <= kmax; ++k) {
      const std::size_t n = anchor_end ? s.size() - 1 - k : 0;
      Complex v;
      if (!levin_u(s, n, k, v)) {
        have_prev = false;
        continue;
      }
      if (have_prev) {
        const double d = std::abs(v - prev);
        if (d < best_diff) {
          best_diff = d;
          best = v;
        }
      }
      prev = v;
      have_prev = true;
    }
  }
  if (!std::isfinite(best_diff))
    throw Error(Errc::unstable, "levin_accelerate: no usable extrapolation order");
  const double scale = std::max(1.0, std::abs(best));
  if (best_diff > 1e-2 * scale)
    throw Error(Errc::unstable, "levin_accelerate: successive orders disagree by " +
                                    std::to_string(best_diff));

  EvalResult out;
  out.value = best;
  out.abs_err = best_diff + 16.0 * kEps * scale;
  out.work = static_cast<std::int64_t>(s.size());
  out.method = Method::levin;
  return out;
}

EvalResult tail_fit_extrapolate(const Term& term, std::int64_t start_k, double exponent,
                                int log_power, std::int64_t max_terms) {
  if (!(exponent < -1.0)) throw Error(Errc::domain, "tail_fit_extrapolate: exponent must be < -1");
  if (log_power < 0 || log_power > 2)
    throw Error(Errc::domain, "tail_fit_extrapolate: log_power must be 0, 1 or 2");
  if (max_terms < 4096) throw Error(Errc::domain, "tail_fit_extrapolate: need at least 4096 terms");

  std::vector<std::int64_t> grid;
  for (double n = 1024; n <= static_cast<double>(max_terms); n *= 1.5)
    grid.push_back(static_cast<std::int64_t>(n));

  std::vector<Complex> sums;
  CompensatedSum acc;
  std::size_t next = 0;
  for (std::int64_t n = 1; n <= grid.back(); ++n) {
    acc.add(term(start_k + n - 1));
    if (n == grid[next]) {
      sums.push_back(acc.value());
      ++next;
    }
  }

  const double tail = exponent + 1.0;
  const int per_order = log_power + 1;
  auto fit = [&](int orders) {
    const int cols = 1 + orders * per_order;
    const int rows = std::min<int>(static_cast<int>(grid.size()), cols + 3);
    const int first = static_cast<int>(grid.size()) - rows;
    const double n_ref = static_cast<double>(grid.back());
    Eigen::MatrixXd a(rows, cols);
    Eigen::MatrixXcd b(rows, 1);
    for (int i = 0; i < rows; ++i) {
      const double n = static_cast<double>(grid[first + i]);
      const double u = n / n_ref;
      const double ln = std::log(n);
      a(i, 0) = 1.0;
      for (int j = 0; j < orders; ++j) {
        double lp = 1.0;
        for (int m = 0; m < per_order; ++m) {
          a(i, 1 + j * per_order + m) = std::pow(u, tail - j) * lp;
          lp *= ln;
        }
      }
      b(i, 0) = sums[first + i];
    }
    Eigen::VectorXd scale = a.colwise().norm();
    for (int c = 0; c < cols; ++c) a.col(c) /= scale(c);
    const Eigen::MatrixXcd x = a.cast<Complex>().colPivHouseholderQr().solve(b);
    return Complex(x(0, 0) / scale(0));
  };

  const Complex hi = fit(3);
  const Complex lo = fit(2);
  if (!std::isfinite(hi.real()) || !std::isfinite(hi.imag()))
    throw Error(Errc::unstable, "tail_fit_extrapolate: singular fit");

  EvalResult out;
  out.value = hi;
  out.abs_err = std::abs(hi - lo) + 64.0 * kEps * std::abs(hi);
  out.work = grid.back();
  out.method = Method::tail_fit;
  return out;
}

double solve_bracketed(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo * fhi < 0.0))
    throw Error(Errc::no_sign_change, "solve_bracketed: f(lo) and f(hi) have the same sign");
  tol = std::max(tol, 4.0 * kEps * std::max(std::abs(lo), std::abs(hi)));

  // orient so that f(xl) < 0 < f(xh)
  double xl = flo < 0 ? lo : hi;
  double xh = flo < 0 ? hi : lo;
  double x = 0.5 * (lo + hi);
  double dx_old = std::abs(hi - lo);
  double dx = dx_old;
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx < 0)
      xl = x;
    else
      xh = x;
    const double h = std::max(1e-7 * std::max(1.0, std::abs(x)), std::sqrt(kEps) * std::abs(dx));
    const double dfx = (f(x + h) - f(x - h)) / (2.0 * h);
    const bool newton_leaves = ((x - xh) * dfx - fx) * ((x - xl) * dfx - fx) > 0.0;
    const bool newton_slow = std::abs(2.0 * fx) > std::abs(dx_old * dfx);
    dx_old = dx;
    if (newton_leaves || newton_slow || dfx == 0.0) {
      dx = 0.5 * (xh - xl);
      x = xl + dx;
    } else {
      dx = fx / dfx;
      x -= dx;
    }
    if (std::abs(dx) < tol || std::abs(xh - xl) < tol) return x;
  }
  return x;
}

}  // namespace invbinom::numkit
