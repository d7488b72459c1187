#pragma once

// Foundation numerics: adaptive quadrature, series summation with tail
// control, Levin acceleration and bracketed root finding. Every routine is a
// pure function of its arguments.

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "invbinom/error.hpp"

namespace invbinom::numkit {

enum class Method { direct, levin, quad, closed, tail_fit };

std::string_view to_string(Method m);

struct EvalResult {
  Complex value{};
  double abs_err = 0.0;  // >= 0 and finite
  std::int64_t work = 0;  // terms summed or integrand evaluations
  Method method = Method::direct;
  bool boundary_slow = false;  // set when acceleration on the convergence boundary was used
};

/// Asymptotic behaviour of the summands, used to bound the remainder.
struct TailModel {
  enum class Kind { geometric, power, none };

  Kind kind = Kind::none;
  double parameter = 0.0;  // ratio in (0,1) for geometric, exponent < -1 for power

  static TailModel geometric(double ratio) { return {Kind::geometric, ratio}; }
  static TailModel power(double exponent) { return {Kind::power, exponent}; }
  static TailModel none() { return {}; }
};

using Integrand = std::function<Complex(double)>;
using Term = std::function<Complex(std::int64_t)>;

struct QuadOptions {
  bool singular_lo = false;  // integrable (log-type) singularity at a
  bool singular_hi = false;  // integrable (log-type) singularity at b
  std::int64_t max_nodes = 100000;
};

/// Global adaptive Gauss-Kronrod (7/15) quadrature of a complex integrand on
/// [a, b]. Flagged endpoints are mapped away with t = a + (b-a) e^{-u}.
/// Throws Errc::non_converged when the node budget runs out first.
EvalResult adaptive_quad(const Integrand& f, double a, double b, double tol,
                         const QuadOptions& opts = {});

/// Default term budget: 2e6, overridable through INVBINOM_MAX_TERMS.
std::int64_t term_budget();

struct SumOptions {
  std::int64_t max_terms = term_budget();
  std::int64_t min_terms = 1;
};

/// Sums term(k) for k = start_k, start_k+1, ... until the remainder bound
/// implied by `tail` drops below tol. The returned abs_err is that bound plus
/// a rounding allowance.
EvalResult sum_series(const Term& term, std::int64_t start_k, TailModel tail, double tol,
                      const SumOptions& opts = {});

/// s_0 = term(start), s_1 = s_0 + term(start+1), ...
std::vector<Complex> partial_sums(const Term& term, std::int64_t start_k, std::size_t count);

/// Levin u-transform of a sequence of partial sums. Needs at least 8 entries.
EvalResult levin_accelerate(std::span<const Complex> partial_sums);

/// Limit of sum_{k>=start} term(k) when the summands behave like
/// k^exponent * (log^m k) * (1 + c_1/k + ...), m <= log_power, exponent < -1.
/// Partial sums on a geometric grid up to max_terms are fitted by least
/// squares to S + sum_j N^{exponent+1-j} (a_j log N + b_j); abs_err compares
/// fits of two consecutive orders.
EvalResult tail_fit_extrapolate(const Term& term, std::int64_t start_k, double exponent,
                                int log_power, std::int64_t max_terms = 1 << 20);

/// Root of a continuous f with f(lo) f(hi) < 0, by Newton steps that fall
/// back to bisection whenever they leave the bracket.
double solve_bracketed(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Compensated (Kahan-Babuska) accumulator for complex sums.
class CompensatedSum {
 public:
  void add(Complex v);
  Complex value() const { return sum_ + comp_; }

 private:
  Complex sum_{};
  Complex comp_{};
};

}  // namespace invbinom::numkit
