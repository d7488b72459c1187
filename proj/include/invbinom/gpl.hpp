#pragma once

// Generalized polylogarithms G(a_1, ..., a_n; z) along the straight path from
// 0 to z, their shuffle product, and multiple polylogarithms through the
// MPL-GPL correspondence.

#include <cstdint>
#include <span>
#include <vector>

#include "invbinom/error.hpp"
#include "invbinom/numkit.hpp"

namespace invbinom::gpl {

inline constexpr int kMaxWeight = 5;

struct GplWord {
  std::vector<Complex> letters;
  Complex z{1.0, 0.0};
};

/// G(a_1..a_n; z) = int_0^z dx/(x - a_1) G(a_2..a_n; x), G(;z) = 1 and
/// G(0^n; z) = log^n(z)/n!.
///
/// Each level of the recursion is held as a piecewise Chebyshev interpolant
/// on the path, so the cost grows linearly with the weight. Errors:
/// DIVERGENT_WORD when a_1 = z or a mixed word ends in 0, LETTER_ON_PATH when
/// a letter sits within 1e-9 (relative to |z|) of the open segment (0, z),
/// DOMAIN for weights above kMaxWeight.
numkit::EvalResult gpl_eval(const GplWord& word, double tol = 1e-12);

/// Every way of inserting `a` into `word`: G(a;t) G(word;t) is the sum of G
/// over the returned sequences.
std::vector<std::vector<Complex>> shuffle_expand(Complex a, std::span<const Complex> word);

struct MplSpec {
  std::vector<int> depths;     // a_1 .. a_n, each >= 1
  std::vector<Complex> args;   // z_1 .. z_n
};

/// Li_{a_1..a_n}(z_1..z_n) = sum_{l_1 > ... > l_n > 0} prod z_j^{l_j} / l_j^{a_j}.
///
/// The returned word W satisfies Li = (-1)^n G(W; 1).
GplWord mpl_to_gpl(const MplSpec& spec);

numkit::EvalResult mpl_eval(const MplSpec& spec, double tol = 1e-12);

/// The nested sum itself, truncated with a geometric tail bound. Throws
/// NOT_ABS_CONVERGENT unless every partial product |z_1 ... z_m| is below 1.
numkit::EvalResult mpl_series_oracle(const MplSpec& spec, std::int64_t max_terms = 2'000'000);

}  // namespace invbinom::gpl
