#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace invbinom {

using Complex = std::complex<double>;

enum class Errc {
  non_converged,
  tail_unbounded,
  budget_exceeded,
  unstable,
  no_sign_change,
  domain,
  branch_cut,
  divergent_word,
  letter_on_path,
  not_abs_convergent,
  config_invalid,
  parse,
};

std::string_view to_string(Errc code);

/// Every failure in the library is reported through this exception; `code()`
/// identifies the failure class so callers can react (loosen tolerance,
/// split a path, reject a config).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace invbinom
