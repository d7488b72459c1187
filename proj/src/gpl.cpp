#include "invbinom/gpl.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace invbinom::gpl {

namespace {

using numkit::EvalResult;

constexpr int kNodes = 32;
constexpr double kTailRel = 1e-14;     // accepted |c_{m-1}| + |c_{m-2}| relative to max |c|
constexpr double kTailAbs = 1e-18;     // or tail * width below this
constexpr std::size_t kMaxPanels = 40000;
// Panels ending below this point are accepted unresolved. Only endpoint
// singularities reach here and the neglected piece is O(w log^n w).
constexpr double kInnermostWidth = 1e-60;

struct ChebTables {
  std::array<double, kNodes> x{};                      // first-kind nodes, ascending
  std::array<std::array<double, kNodes>, kNodes> cosk{};  // cos(k * theta_i)
};

const ChebTables& tables() {
  static const ChebTables t = [] {
    ChebTables t;
    for (int i = 0; i < kNodes; ++i) {
      // theta_i descending so that x_i ascends
      const double theta = std::numbers::pi * (kNodes - i - 0.5) / kNodes;
      t.x[i] = std::cos(theta);
      for (int k = 0; k < kNodes; ++k) t.cosk[i][k] = std::cos(k * theta);
    }
    return t;
  }();
  return t;
}

struct Panel {
  double l = 0.0;
  double r = 0.0;
  std::array<Complex, kNodes> c{};  // Chebyshev coefficients on [l, r]
};

Complex clenshaw(const std::array<Complex, kNodes>& c, double x) {
  Complex b1 = 0.0, b2 = 0.0;
  for (int k = kNodes - 1; k >= 1; --k) {
    const Complex b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

// A piecewise function on [0, len] in the segment coordinate v.
struct Piecewise {
  std::vector<Panel> panels;  // sorted, contiguous

  const Panel& find(double v) const {
    auto it = std::upper_bound(panels.begin(), panels.end(), v,
                               [](double val, const Panel& p) { return val < p.r; });
    if (it == panels.end()) --it;
    return *it;
  }

  Complex operator()(double v) const {
    const Panel& p = find(v);
    const double x = std::clamp((2.0 * v - p.l - p.r) / (p.r - p.l), -1.0, 1.0);
    return clenshaw(p.c, x);
  }
};

// One half of the path 0 -> 1: u = base + dir * v for v in [0, len]. The near
// half (base 0, dir +1) is anchored at v = 0; the far half (base 1, dir -1)
// is anchored at v = len, which is where it meets the near half. Measuring
// the far half from u = 1 keeps panels next to an endpoint letter 1 resolvable
// far below double spacing near 1.
struct Segment {
  double base;
  double dir;
  double len;
  bool anchored_left;
};

std::array<Complex, kNodes> coefficients(const std::array<Complex, kNodes>& f) {
  const auto& t = tables();
  std::array<Complex, kNodes> c{};
  for (int k = 0; k < kNodes; ++k) {
    Complex s = 0.0;
    for (int i = 0; i < kNodes; ++i) s += f[i] * t.cosk[i][k];
    c[k] = s * (2.0 / kNodes);
  }
  c[0] *= 0.5;
  return c;
}

double tail_of(const std::array<Complex, kNodes>& c) {
  return std::abs(c[kNodes - 1]) + std::abs(c[kNodes - 2]);
}

double max_coeff(const std::array<Complex, kNodes>& c) {
  double m = 0.0;
  for (const auto& v : c) m = std::max(m, std::abs(v));
  return m;
}

struct LevelBuild {
  Piecewise integrand;  // g on the segment
  double err = 0.0;     // sum over panels of tail * width
};

// Samples g(v) = dir * inner(v) / ((base - b) + dir * v) on every panel of
// `inner`, bisecting until the Chebyshev tail is negligible.
LevelBuild sample_integrand(const Piecewise& inner, const Segment& seg, Complex b) {
  const auto& t = tables();
  const Complex offset = seg.base - b;
  LevelBuild out;

  auto sample = [&](double l, double r) {
    std::array<Complex, kNodes> f{};
    const double half = 0.5 * (r - l);
    for (int i = 0; i < kNodes; ++i) {
      const double v = l + half * (t.x[i] + 1.0);
      const Complex diff = offset + seg.dir * v;
      f[i] = seg.dir * inner(v) / diff;
    }
    return coefficients(f);
  };

  std::vector<Panel> done;
  for (const Panel& outer : inner.panels) {
    // depth-first bisection, left to right
    std::vector<std::pair<double, double>> stack{{outer.l, outer.r}};
    while (!stack.empty()) {
      auto [l, r] = stack.back();
      stack.pop_back();
      Panel p{l, r, sample(l, r)};
      const double width = r - l;
      const double tail = tail_of(p.c);
      const bool innermost = r <= kInnermostWidth;
      const bool converged =
          innermost || tail <= kTailRel * max_coeff(p.c) || tail * width <= kTailAbs;
      const double mid = 0.5 * (l + r);
      const bool splittable = mid > l && mid < r && width > 4e-16 * std::max(std::abs(l), std::abs(r));
      if (converged || !splittable) {
        if (!innermost) out.err += tail * width;
        done.push_back(p);
        if (done.size() > kMaxPanels)
          throw Error(Errc::non_converged, "gpl_eval: panel budget exhausted");
        continue;
      }
      stack.push_back({mid, r});
      stack.push_back({l, mid});
    }
  }
  out.integrand.panels = std::move(done);
  return out;
}

// Antiderivative of g, pinned to `anchor_value` at the segment's anchor.
Piecewise integrate(const Piecewise& g, const Segment& seg, Complex anchor_value) {
  Piecewise F;
  F.panels.resize(g.panels.size());

  auto antiderivative = [](const Panel& p) {
    // integral from x = -1 in the panel's local variable, scaled to v
    Panel a{p.l, p.r, {}};
    const double h = 0.5 * (p.r - p.l);
    std::array<Complex, kNodes + 1> b{};
    const auto& c = p.c;
    auto cc = [&](int k) { return k < kNodes ? c[k] : Complex{}; };
    b[1] = cc(0) - cc(2) / 2.0;
    for (int k = 2; k <= kNodes; ++k) b[k] = (cc(k - 1) - cc(k + 1)) / (2.0 * k);
    Complex at_minus1 = 0.0;
    for (int k = 1; k <= kNodes; ++k) at_minus1 += (k % 2 ? -1.0 : 1.0) * b[k];
    b[0] = -at_minus1;
    for (int k = 0; k < kNodes; ++k) a.c[k] = b[k] * h;
    return a;  // b[kNodes] ~ c[kNodes-1]/(2m) is below the tail tolerance
  };
  auto value_at = [](const Panel& p, double x) { return clenshaw(p.c, x); };

  const std::size_t n = g.panels.size();
  if (seg.anchored_left) {
    Complex left = anchor_value;
    for (std::size_t i = 0; i < n; ++i) {
      Panel a = antiderivative(g.panels[i]);
      a.c[0] += left;
      left = value_at(a, 1.0);
      F.panels[i] = a;
    }
  } else {
    Complex right = anchor_value;
    for (std::size_t i = n; i-- > 0;) {
      Panel a = antiderivative(g.panels[i]);
      a.c[0] += right - value_at(a, 1.0);
      right = value_at(a, -1.0);
      F.panels[i] = a;
    }
  }
  return F;
}

Piecewise constant_one(const Segment& seg) {
  Panel p{0.0, seg.len, {}};
  p.c[0] = 1.0;
  return Piecewise{{p}};
}

Complex pure_zero(std::size_t n, Complex z) {
  if (z == Complex{}) throw Error(Errc::domain, "gpl_eval: G(0,...,0; 0) is undefined");
  const Complex l = std::log(z.imag() == 0.0 ? Complex(z.real(), 0.0) : z);
  Complex v = 1.0;
  double fact = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    v *= l;
    fact *= double(k);
  }
  return v / fact;
}

}  // namespace

EvalResult gpl_eval(const GplWord& word, double tol) {
  const std::size_t n = word.letters.size();
  EvalResult out;
  out.method = numkit::Method::quad;
  out.work = 1;
  if (n == 0) {
    out.value = 1.0;
    return out;
  }
  if (n > static_cast<std::size_t>(kMaxWeight))
    throw Error(Errc::domain, "gpl_eval: weight " + std::to_string(n) + " exceeds the cap");

  const Complex z = word.z;
  const double scale = std::max(1.0, std::abs(z));
  std::vector<Complex> b(word.letters);
  // letters that agree with an endpoint to rounding are the endpoint
  for (auto& a : b) {
    if (std::abs(a) <= 1e-13 * scale) a = 0.0;
    if (std::abs(a - z) <= 1e-13 * scale) a = z;
  }
  const bool all_zero = std::all_of(b.begin(), b.end(), [](Complex a) { return a == Complex{}; });
  if (all_zero) {
    out.value = pure_zero(n, z);
    out.method = numkit::Method::closed;
    return out;
  }
  if (b.back() == Complex{})
    throw Error(Errc::divergent_word, "gpl_eval: mixed word ending in the letter 0");
  if (b.front() == z) throw Error(Errc::divergent_word, "gpl_eval: first letter equals the argument");
  if (z == Complex{}) {
    out.value = 0.0;
    return out;
  }

  for (auto& a : b) {
    a /= z;
    if (a == Complex{} || a == Complex(1.0)) continue;
    const double re = a.real(), im = a.imag();
    const double dist = (re > 0.0 && re < 1.0) ? std::abs(im) : std::min(std::abs(a), std::abs(a - 1.0));
    if (dist < 1e-9)
      throw Error(Errc::letter_on_path, "gpl_eval: a letter lies on the integration path");
  }

  const Segment near{0.0, 1.0, 0.5, true};
  const Segment far{1.0, -1.0, 0.5, false};
  Piecewise Fn = constant_one(near);
  Piecewise Ff = constant_one(far);
  double err = 0.0;
  std::int64_t work = 0;
  for (std::size_t j = n; j-- > 0;) {
    LevelBuild gn = sample_integrand(Fn, near, b[j]);
    Piecewise new_near = integrate(gn.integrand, near, 0.0);
    const Complex mid = new_near(near.len);
    LevelBuild gf = sample_integrand(Ff, far, b[j]);
    Piecewise new_far = integrate(gf.integrand, far, mid);
    err += gn.err + gf.err;
    work += static_cast<std::int64_t>(gn.integrand.panels.size() + gf.integrand.panels.size()) * kNodes;
    Fn = std::move(new_near);
    Ff = std::move(new_far);
  }
  const Panel& last = Ff.panels.front();
  out.value = clenshaw(last.c, -1.0);
  out.abs_err = err + 1e-14 * std::max(1.0, std::abs(out.value)) * static_cast<double>(n);
  out.work = work;
  (void)tol;
  return out;
}

std::vector<std::vector<Complex>> shuffle_expand(Complex a, std::span<const Complex> word) {
  std::vector<std::vector<Complex>> out;
  out.reserve(word.size() + 1);
  for (std::size_t pos = 0; pos <= word.size(); ++pos) {
    std::vector<Complex> w(word.begin(), word.end());
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), a);
    out.push_back(std::move(w));
  }
  return out;
}

GplWord mpl_to_gpl(const MplSpec& spec) {
  if (spec.depths.empty() || spec.depths.size() != spec.args.size())
    throw Error(Errc::domain, "MplSpec: depths and args must be non-empty and of equal length");
  GplWord w;
  Complex prod = 1.0;
  for (std::size_t j = 0; j < spec.depths.size(); ++j) {
    if (spec.depths[j] < 1) throw Error(Errc::domain, "MplSpec: depths must be positive");
    if (spec.args[j] == Complex{}) throw Error(Errc::domain, "MplSpec: zero argument");
    for (int k = 1; k < spec.depths[j]; ++k) w.letters.push_back(0.0);
    prod *= spec.args[j];
    w.letters.push_back(1.0 / prod);
  }
  w.z = 1.0;
  return w;
}

EvalResult mpl_eval(const MplSpec& spec, double tol) {
  const GplWord w = mpl_to_gpl(spec);
  EvalResult r = gpl_eval(w, tol);
  if (spec.depths.size() % 2 == 1) r.value = -r.value;
  return r;
}

EvalResult mpl_series_oracle(const MplSpec& spec, std::int64_t max_terms) {
  if (spec.depths.empty() || spec.depths.size() != spec.args.size())
    throw Error(Errc::domain, "MplSpec: depths and args must be non-empty and of equal length");
  const std::size_t n = spec.depths.size();
  double rho = 0.0;
  double prod = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    prod *= std::abs(spec.args[j]);
    rho = std::max(rho, prod);
  }
  if (!(rho < 1.0))
    throw Error(Errc::not_abs_convergent, "mpl_series_oracle: partial products reach modulus 1");

  // running[m] = sum over l_m > ... > l_n > 0 with l_m below the current l
  std::vector<Complex> running(n + 1, 0.0);
  running[n] = 1.0;
  std::vector<Complex> power(n, 1.0);
  std::int64_t l = 0;
  auto next_outer_term = [&](std::int64_t) {
    ++l;
    Complex t_outer = 0.0;
    // innermost first so each level sees the previous l's inner sum
    std::vector<Complex> fresh(n);
    for (std::size_t m = n; m-- > 0;) {
      power[m] *= spec.args[m];
      fresh[m] = power[m] / std::pow(double(l), spec.depths[m]) * running[m + 1];
    }
    for (std::size_t m = 0; m < n; ++m) running[m] += fresh[m];
    t_outer = fresh[0];
    return t_outer;
  };
  numkit::SumOptions opts;
  opts.max_terms = max_terms;
  opts.min_terms = 4;
  // polynomial factors from the inner sums are absorbed by a looser ratio
  const double ratio = 0.5 * (1.0 + rho);
  return numkit::sum_series(next_outer_term, 1, numkit::TailModel::geometric(ratio), 1e-15, opts);
}

}  // namespace invbinom::gpl
