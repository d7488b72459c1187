#include "invbinom/error.hpp"

namespace invbinom {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::non_converged: return "NON_CONVERGED";
    case Errc::tail_unbounded: return "TAIL_UNBOUNDED";
    case Errc::budget_exceeded: return "BUDGET_EXCEEDED";
    case Errc::unstable: return "UNSTABLE";
    case Errc::no_sign_change: return "NO_SIGN_CHANGE";
    case Errc::domain: return "DOMAIN";
    case Errc::branch_cut: return "BRANCH_CUT";
    case Errc::divergent_word: return "DIVERGENT_WORD";
    case Errc::letter_on_path: return "LETTER_ON_PATH";
    case Errc::not_abs_convergent: return "NOT_ABS_CONVERGENT";
    case Errc::config_invalid: return "CONFIG_INVALID";
    case Errc::parse: return "PARSE";
  }
  return "UNKNOWN";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace invbinom
