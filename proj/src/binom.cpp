#include "invbinom/binom.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "invbinom/specfun.hpp"

namespace invbinom::binom {

using numkit::EvalResult;

namespace {

constexpr std::int64_t kExactLimit = 300;

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view name) {
  for (const auto& [value, tag] : table)
    if (iequals(tag, name)) return value;
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [v, tag] : table)
    if (v == value) return tag;
  return "?";
}

constexpr std::array<std::pair<Family, std::string_view>, 3> kFamilies{{
    {Family::c3, "C3"},
    {Family::c4, "C4"},
    {Family::c2, "C2"},
}};

constexpr std::array<std::pair<Sequence, std::string_view>, 10> kSequences{{
    {Sequence::one, "one"},
    {Sequence::one_over_k, "one_over_k"},
    {Sequence::hk, "hk"},
    {Sequence::hk_minus_h2k, "hk_minus_h2k"},
    {Sequence::hk_minus_h2k_minus_2, "hk_minus_h2k_minus_2"},
    {Sequence::hk_minus_h3k, "hk_minus_h3k"},
    {Sequence::hk_minus_h3k_plus_1, "hk_minus_h3k_plus_1"},
    {Sequence::hk_minus_h3k_minus_1, "hk_minus_h3k_minus_1"},
    {Sequence::h2k_minus_h3k, "h2k_minus_h3k"},
    {Sequence::hk1_minus_h2k, "hk1_minus_h2k"},
}};

constexpr std::array<std::pair<Weighting, std::string_view>, 8> kWeightings{{
    {Weighting::plain, "PLAIN"},
    {Weighting::k_plus_1, "K_PLUS_1"},
    {Weighting::k_plus_2, "K_PLUS_2"},
    {Weighting::three_k_plus_1, "THREE_K_PLUS_1"},
    {Weighting::three_k_plus_2, "THREE_K_PLUS_2"},
    {Weighting::two_k_minus_1, "TWO_K_MINUS_1"},
    {Weighting::four_k_plus_1, "FOUR_K_PLUS_1"},
    {Weighting::four_k_plus_3, "FOUR_K_PLUS_3"},
}};

constexpr std::array<std::pair<Rep, std::string_view>, kRepCount> kReps{{
    {Rep::c3_a, "C3_A"},
    {Rep::c3_log_t, "C3_LOG_T"},
    {Rep::c3_log_1mt, "C3_LOG_1MT"},
    {Rep::c4_a, "C4_A"},
    {Rep::c4_log_t, "C4_LOG_T"},
    {Rep::c4_log_1mt, "C4_LOG_1MT"},
    {Rep::c3_k, "C3_K"},
    {Rep::c3_k_log_t, "C3_K_LOG_T"},
    {Rep::c3_k_log_1mt, "C3_K_LOG_1MT"},
    {Rep::c4_k, "C4_K"},
    {Rep::c4_k_log_t, "C4_K_LOG_T"},
    {Rep::c4_k_log_1mt, "C4_K_LOG_1MT"},
    {Rep::c3_pair, "C3_PAIR"},
    {Rep::c3_pair_log_t, "C3_PAIR_LOG_T"},
    {Rep::c3_pair_log_1mt, "C3_PAIR_LOG_1MT"},
    {Rep::c3_odd, "C3_ODD"},
    {Rep::c3_odd_log_t, "C3_ODD_LOG_T"},
    {Rep::c3_odd_log_1mt, "C3_ODD_LOG_1MT"},
    {Rep::c2_k, "C2_K"},
}};

// C_k / C_{k-1} / radius
double binomial_step(Family f, std::int64_t k) {
  const double x = static_cast<double>(k);
  switch (f) {
    case Family::c3:
      return (3 * x) * (3 * x - 1) * (3 * x - 2) / (x * (2 * x) * (2 * x - 1)) * (4.0 / 27.0);
    case Family::c4:
      return (4 * x) * (4 * x - 1) * (4 * x - 2) * (4 * x - 3) /
             ((2 * x) * (2 * x - 1) * (2 * x) * (2 * x - 1)) / 16.0;
    case Family::c2:
      return (2 * x) * (2 * x - 1) / (x * x) / 4.0;
  }
  return 0.0;
}

// Stirling correction log(n!) - [n log n - n + log(2 pi n)/2]
double stirling_tail(double n) {
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12 - inv2 * (1.0 / 360 - inv2 * (1.0 / 1260 - inv2 / 1680)));
}

struct Harmonics {
  std::int64_t k = 0;
  double h1 = 0.0;  // H_k
  double h2 = 0.0;  // H_{2k}
  double h3 = 0.0;  // H_{3k}

  static Harmonics at(std::int64_t k) {
    return {k, specfun::harmonic(k), specfun::harmonic(2 * k), specfun::harmonic(3 * k)};
  }

  void advance() {
    const double n = static_cast<double>(k);
    h1 += 1.0 / (n + 1);
    h2 += 1.0 / (2 * n + 1) + 1.0 / (2 * n + 2);
    h3 += 1.0 / (3 * n + 1) + 1.0 / (3 * n + 2) + 1.0 / (3 * n + 3);
    ++k;
  }
};

double sequence_value(Sequence s, const Harmonics& h) {
  const double n = static_cast<double>(h.k);
  switch (s) {
    case Sequence::one: return 1.0;
    case Sequence::one_over_k: return 1.0 / n;
    case Sequence::hk: return h.h1;
    case Sequence::hk_minus_h2k: return h.h1 - h.h2;
    case Sequence::hk_minus_h2k_minus_2: return h.h1 - (h.h2 - 1.0 / (2 * n) - 1.0 / (2 * n - 1));
    case Sequence::hk_minus_h3k: return h.h1 - h.h3;
    case Sequence::hk_minus_h3k_plus_1: return h.h1 - (h.h3 + 1.0 / (3 * n + 1));
    case Sequence::hk_minus_h3k_minus_1: return h.h1 - (h.h3 - 1.0 / (3 * n));
    case Sequence::h2k_minus_h3k: return h.h2 - h.h3;
    case Sequence::hk1_minus_h2k: return h.h1 - 1.0 / n - h.h2;
  }
  return 0.0;
}

bool sequence_defined_at_zero(Sequence s) {
  switch (s) {
    case Sequence::one:
    case Sequence::hk:
    case Sequence::hk_minus_h2k:
    case Sequence::hk_minus_h3k:
    case Sequence::hk_minus_h3k_plus_1:
    case Sequence::h2k_minus_h3k:
      return true;
    default:
      return false;
  }
}

double weight_value(Weighting w, std::int64_t k) {
  const double n = static_cast<double>(k);
  switch (w) {
    case Weighting::plain: return 1.0;
    case Weighting::k_plus_1: return n + 1;
    case Weighting::k_plus_2: return n + 2;
    case Weighting::three_k_plus_1: return 3 * n + 1;
    case Weighting::three_k_plus_2: return 3 * n + 2;
    case Weighting::two_k_minus_1: return 2 * n - 1;
    case Weighting::four_k_plus_1: return 4 * n + 1;
    case Weighting::four_k_plus_3: return 4 * n + 3;
  }
  return 1.0;
}

// Summands in increasing k, carrying the power, the normalized binomial and
// the harmonic numbers forward; any other access pattern restarts from
// scratch.
class SummandStream {
 public:
  explicit SummandStream(const SumSpec& spec)
      : spec_(spec), w_(spec.z / radius(spec.family)) {}

  Complex operator()(std::int64_t k) {
    if (k == next_ && k > 0 && started_) {
      power_ *= w_;
      binomial_ = k <= kExactLimit ? binomial_ * binomial_step(spec_.family, k)
                                   : normalized_binomial(spec_.family, k);
      harmonics_.advance();
    } else {
      power_ = k == 0 ? Complex(1.0) : std::pow(w_, static_cast<double>(k));
      binomial_ = normalized_binomial(spec_.family, k);
      harmonics_ = Harmonics::at(k);
      started_ = true;
    }
    next_ = k + 1;
    const double denom = std::pow(static_cast<double>(k), spec_.r) *
                         weight_value(spec_.weighting, k) * binomial_;
    return sequence_value(spec_.numerator, harmonics_) * power_ / denom;
  }

 private:
  SumSpec spec_;
  Complex w_;
  bool started_ = false;
  std::int64_t next_ = -1;
  Complex power_{};
  double binomial_ = 1.0;
  Harmonics harmonics_{};
};

// Exponent p in |a_k z^k / (k^r w(k) C_k)| ~ k^p (log k)^m on |z| = radius.
double boundary_decay(const SumSpec& spec) {
  double p = 0.5 - spec.r;
  if (spec.weighting != Weighting::plain) p -= 1.0;
  if (spec.numerator == Sequence::one_over_k) p -= 1.0;
  return p;
}

double binomial_exact_scale(Family f, std::int64_t k) {
  return normalized_binomial(f, k) * std::pow(radius(f), static_cast<double>(k));
}

}  // namespace

std::string_view to_string(Family f) { return name_of(kFamilies, f); }
std::string_view to_string(Sequence s) { return name_of(kSequences, s); }
std::string_view to_string(Weighting w) { return name_of(kWeightings, w); }
std::string_view to_string(Rep rep) { return name_of(kReps, rep); }

std::optional<Family> parse_family(std::string_view name) { return lookup(kFamilies, name); }
std::optional<Sequence> parse_sequence(std::string_view name) { return lookup(kSequences, name); }
std::optional<Weighting> parse_weighting(std::string_view name) {
  return lookup(kWeightings, name);
}
std::optional<Rep> parse_rep(std::string_view name) { return lookup(kReps, name); }

double radius(Family f) {
  switch (f) {
    case Family::c3: return 27.0 / 4.0;
    case Family::c4: return 16.0;
    case Family::c2: return 4.0;
  }
  return 0.0;
}

double normalized_binomial(Family f, std::int64_t k) {
  if (k < 0) throw Error(Errc::domain, "normalized_binomial: k < 0");
  if (k <= kExactLimit) {
    double v = 1.0;
    for (std::int64_t j = 1; j <= k; ++j) v *= binomial_step(f, j);
    return v;
  }
  const double n = static_cast<double>(k);
  const double pi = std::numbers::pi;
  double log_v = 0.0;
  switch (f) {
    case Family::c3:
      log_v = 0.5 * std::log(3.0 / (4.0 * pi * n)) + stirling_tail(3 * n) - stirling_tail(n) -
              stirling_tail(2 * n);
      break;
    case Family::c4:
      log_v = -0.5 * std::log(2.0 * pi * n) + stirling_tail(4 * n) - 2.0 * stirling_tail(2 * n);
      break;
    case Family::c2:
      log_v = -0.5 * std::log(pi * n) + stirling_tail(2 * n) - 2.0 * stirling_tail(n);
      break;
  }
  return std::exp(log_v);
}

std::int64_t first_index(const SumSpec& spec) {
  const bool weighted = spec.weighting != Weighting::plain &&
                        spec.weighting != Weighting::two_k_minus_1;
  return weighted && spec.r <= 0 && sequence_defined_at_zero(spec.numerator) ? 0 : 1;
}

Complex summand(const SumSpec& spec, std::int64_t k) {
  if (k < first_index(spec)) throw Error(Errc::domain, "summand: k below the first index");
  SummandStream stream(spec);
  return stream(k);
}

EvalResult sum_family(const SumSpec& spec, double tol) {
  if (spec.r < -1) throw Error(Errc::domain, "sum_family: r must be >= -1");
  const double ratio = std::abs(spec.z) / radius(spec.family);
  const double rim = 1e-12;
  if (ratio > 1.0 + rim)
    throw Error(Errc::domain, "sum_family: |z| exceeds the radius of convergence");

  auto stream = std::make_shared<SummandStream>(spec);
  const numkit::Term term = [stream](std::int64_t k) { return (*stream)(k); };
  const std::int64_t start = first_index(spec);

  if (ratio >= 1.0 - rim) {
    if (!spec.boundary)
      throw Error(Errc::domain, "sum_family: |z| on the radius needs the boundary flag");
    const double p = boundary_decay(spec);
    const bool positive_real = spec.z.real() > 0 && std::abs(spec.z.imag()) <= rim * std::abs(spec.z);
    if (p >= 0.0 || (positive_real && p >= -1.0))
      throw Error(Errc::domain, "sum_family: summands do not decay on the boundary");
    EvalResult out;
    if (spec.numerator == Sequence::hk && positive_real) {
      out = numkit::tail_fit_extrapolate(term, start, p, 1);
    } else {
      out = numkit::levin_accelerate(numkit::partial_sums(term, start, 200));
    }
    out.boundary_slow = true;
    if (!(out.abs_err <= tol))
      throw Error(Errc::non_converged, "sum_family: Levin estimate misses the tolerance");
    return out;
  }

  const double tail_ratio = std::min(1.05 * ratio, 0.5 * (1.0 + ratio));
  numkit::SumOptions opts;
  opts.min_terms = 32;
  return numkit::sum_series(term, start, numkit::TailModel::geometric(tail_ratio), tol, opts);
}

std::span<const Rep> all_reps() {
  static const std::array<Rep, kRepCount> reps = [] {
    std::array<Rep, kRepCount> out{};
    for (std::size_t i = 0; i < kRepCount; ++i) out[i] = kReps[i].first;
    return out;
  }();
  return reps;
}

int rep_min_k(Rep rep) {
  switch (rep) {
    case Rep::c3_a:
    case Rep::c3_log_t:
    case Rep::c3_log_1mt:
    case Rep::c4_a:
    case Rep::c4_log_t:
    case Rep::c4_log_1mt:
    case Rep::c3_pair:
    case Rep::c3_pair_log_t:
    case Rep::c3_pair_log_1mt:
      return 0;
    default:
      return 1;
  }
}

double rep_lhs(Rep rep, std::int64_t k) {
  if (k < rep_min_k(rep)) throw Error(Errc::domain, "rep_lhs: k below the representation's range");
  const double n = static_cast<double>(k);
  const double c3 = binomial_exact_scale(Family::c3, k);
  const double c4 = binomial_exact_scale(Family::c4, k);
  auto H = [](std::int64_t m) { return specfun::harmonic(m); };
  const double pair = (1.0 / (3 * n + 1) + 1.0 / (3 * n + 2)) / c3;
  switch (rep) {
    case Rep::c3_a: return 1.0 / ((3 * n + 1) * c3);
    case Rep::c3_log_t: return (H(2 * k) - H(3 * k + 1)) / ((3 * n + 1) * c3);
    case Rep::c3_log_1mt: return (H(k) - H(3 * k + 1)) / ((3 * n + 1) * c3);
    case Rep::c4_a: return 1.0 / ((4 * n + 1) * c4);
    case Rep::c4_log_t:
    case Rep::c4_log_1mt: return (H(2 * k) - H(4 * k + 1)) / ((4 * n + 1) * c4);
    case Rep::c3_k: return 1.0 / (n * c3);
    case Rep::c3_k_log_t: return (H(2 * k) - H(3 * k)) / (n * c3);
    case Rep::c3_k_log_1mt: return (H(k - 1) - H(3 * k)) / (n * c3);
    case Rep::c4_k: return 1.0 / (n * c4);
    case Rep::c4_k_log_t: return (H(2 * k) - H(4 * k)) / (n * c4);
    case Rep::c4_k_log_1mt: return (H(2 * k - 1) - H(4 * k)) / (n * c4);
    case Rep::c3_pair: return pair;
    case Rep::c3_pair_log_t: return pair * (H(2 * k + 2) - H(3 * k + 3));
    case Rep::c3_pair_log_1mt: return pair * (H(k) - H(3 * k + 3));
    case Rep::c3_odd: return 1.0 / ((2 * n - 1) * c3);
    case Rep::c3_odd_log_t: return (H(2 * k - 2) - H(3 * k - 1)) / ((2 * n - 1) * c3);
    case Rep::c3_odd_log_1mt: return (H(k) - H(3 * k - 1)) / ((2 * n - 1) * c3);
    case Rep::c2_k: return 1.0 / (n * binomial_exact_scale(Family::c2, k));
  }
  return 0.0;
}

EvalResult term_oracle_integral(Rep rep, std::int64_t k, double tol) {
  if (k < rep_min_k(rep))
    throw Error(Errc::domain, "term_oracle_integral: k below the representation's range");
  const double n = static_cast<double>(k);

  enum class Log { none, t, one_minus_t };
  double scale = 1.0;
  Log log_kind = Log::none;
  std::function<double(double)> kernel;
  auto cubic = [n](double t) { return std::pow(t * t * (1 - t), n); };
  auto quartic = [n](double t) { return std::pow(t * (1 - t), 2 * n); };

  switch (rep) {
    case Rep::c3_a:
    case Rep::c3_log_t:
    case Rep::c3_log_1mt:
      kernel = cubic;
      break;
    case Rep::c4_a:
    case Rep::c4_log_t:
    case Rep::c4_log_1mt:
      kernel = quartic;
      break;
    case Rep::c3_k:
    case Rep::c3_k_log_t:
    case Rep::c3_k_log_1mt:
      kernel = [n](double t) { return std::pow(t * t, n) * std::pow(1 - t, n - 1); };
      break;
    case Rep::c4_k:
    case Rep::c4_k_log_t:
    case Rep::c4_k_log_1mt:
      kernel = [n](double t) { return std::pow(t, 2 * n) * std::pow(1 - t, 2 * n - 1); };
      scale = 2.0;
      break;
    case Rep::c3_pair:
    case Rep::c3_pair_log_t:
    case Rep::c3_pair_log_1mt:
      kernel = [n](double t) { return std::pow(t * t, n + 1) * std::pow(1 - t, n); };
      scale = 4.5;
      break;
    case Rep::c3_odd:
    case Rep::c3_odd_log_t:
    case Rep::c3_odd_log_1mt:
      kernel = [n](double t) { return std::pow(t, 2 * n - 2) * std::pow(1 - t, n); };
      scale = 2.0 / 3.0;
      break;
    case Rep::c2_k:
      kernel = [n](double t) { return std::pow(t * (1 - t), n - 1); };
      scale = 0.5;
      break;
  }
  switch (rep) {
    case Rep::c3_log_t:
    case Rep::c4_log_t:
    case Rep::c3_k_log_t:
    case Rep::c4_k_log_t:
    case Rep::c3_pair_log_t:
    case Rep::c3_odd_log_t:
      log_kind = Log::t;
      break;
    case Rep::c3_log_1mt:
    case Rep::c4_log_1mt:
    case Rep::c3_k_log_1mt:
    case Rep::c4_k_log_1mt:
    case Rep::c3_pair_log_1mt:
    case Rep::c3_odd_log_1mt:
      log_kind = Log::one_minus_t;
      break;
    default:
      break;
  }

  const numkit::Integrand f = [&](double t) -> Complex {
    double v = kernel(t);
    if (log_kind == Log::t) v *= std::log(t);
    if (log_kind == Log::one_minus_t) v *= std::log1p(-t);
    return scale * v;
  };
  numkit::QuadOptions opts;
  opts.singular_lo = log_kind == Log::t;
  opts.singular_hi = log_kind == Log::one_minus_t;
  return numkit::adaptive_quad(f, 0.0, 1.0, tol, opts);
}

EvalResult hprod_gf(std::span<const int> powers, int r, Complex z, double tol) {
  const double az = std::abs(z);
  if (!(az < 1.0)) throw Error(Errc::domain, "hprod_gf: needs |z| < 1");
  if (r < 1) throw Error(Errc::domain, "hprod_gf: r must be positive");
  for (int p : powers)
    if (p < 1) throw Error(Errc::domain, "hprod_gf: harmonic orders must be positive");

  struct State {
    std::vector<int> orders;
    std::vector<double> h;
    Complex power{1.0};
    std::int64_t next = 1;
  };
  auto st = std::make_shared<State>();
  st->orders.assign(powers.begin(), powers.end());
  st->h.assign(powers.size(), 0.0);

  const numkit::Term term = [st, z, r](std::int64_t k) -> Complex {
    if (k != st->next) throw Error(Errc::domain, "hprod_gf: summands requested out of order");
    const double n = static_cast<double>(k);
    double prod = 1.0;
    for (std::size_t j = 0; j < st->orders.size(); ++j) {
      st->h[j] += std::pow(n, -st->orders[j]);
      prod *= st->h[j];
    }
    st->power *= z;
    st->next = k + 1;
    return prod * st->power / std::pow(n, r);
  };
  numkit::SumOptions opts;
  opts.min_terms = 32;
  const double tail_ratio = std::min(1.05 * az, 0.5 * (1.0 + az));
  return numkit::sum_series(term, 1, numkit::TailModel::geometric(tail_ratio), tol, opts);
}

}  // namespace invbinom::binom
