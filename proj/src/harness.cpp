#include "invbinom/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "invbinom/binom.hpp"
#include "invbinom/closedform.hpp"
#include "invbinom/gpl.hpp"

namespace invbinom::harness {

using closedform::Identity;
using nlohmann::ordered_json;

namespace {

constexpr std::string_view kRepPrefix = "REP_";
constexpr double kRepTol = 1e-11;
constexpr double kRepQuadTol = 1e-13;
constexpr int kRepMaxK = 8;

constexpr std::array<std::string_view, 16> kSuites{
    "thm11",  "thm12",  "thm13a",        "thm13b",       "thm14", "sun",
    "thm15",  "thm16",  "remark",        "proof",        "integral-reps",
    "cor-examples",     "tables",        "boundary",     "mezo",  "all",
};

std::vector<Identity> identities_of(std::string_view suite) {
  using I = Identity;
  if (suite == "thm11") return {I::thm11};
  if (suite == "thm12") return {I::thm12};
  if (suite == "thm13a") return {I::thm13a};
  if (suite == "thm13b") return {I::thm13b};
  if (suite == "thm14") return {I::thm14};
  if (suite == "sun") return {I::eq_kp1_half, I::eq_kp1_83, I::eq_4k_kp1};
  if (suite == "thm15")
    return {I::t15_hk_h2k_3k1, I::t15_hk_h3k_3k1, I::t15_hk_h2k_3k2, I::t15_hk_h2k_2k1,
            I::t15_hk_h3k_2k1};
  if (suite == "thm16") return {I::t16_hk_4k1, I::t16_hk_4k3};
  if (suite == "remark") return {I::r_1k, I::r_h2k_h3k, I::r_hk1_h2k};
  if (suite == "proof")
    return {I::ck2k_kp2, I::arcsin_sq, I::x2k_k2_c4, I::loglog_tau, I::newman_sum, I::landen};
  if (suite == "cor-examples") return {I::cor_w2, I::cor_w3, I::cor_w4, I::cor_w5};
  if (suite == "tables")
    return {I::table_s30,       I::table7_l4_3k1,   I::table7_l4_2k1,   I::table7_l5m1_3k1,
            I::table7_l5m1_2k1, I::table7_l5m2_3k1, I::table7_l5m2_2k1, I::table7_l6_3k1,
            I::table7_l6_2k1,   I::rem_z4_4k1,      I::rem_z4_4k3,      I::table_s41_hk_4,
            I::table_s41_hk_16};
  if (suite == "boundary") return {I::boundary_s30};
  if (suite == "mezo") return {I::mezo_hk};
  return {};
}

bool is_suite(std::string_view name) {
  return std::find(kSuites.begin(), kSuites.end(), name) != kSuites.end();
}

bool suite_has_reps(std::string_view suite) { return suite == "integral-reps" || suite == "all"; }

std::vector<Identity> all_identities_of(std::string_view suite) {
  if (suite != "all") return identities_of(suite);
  std::vector<Identity> out;
  for (const auto& entry : closedform::catalog()) out.push_back(entry.id);
  return out;
}

struct Job {
  std::optional<Identity> identity;
  std::optional<binom::Rep> rep;
  Complex param;
  double tol;
};

std::string job_name(const Job& job) {
  if (job.rep) return std::string(kRepPrefix) + std::string(binom::to_string(*job.rep));
  return std::string(closedform::to_string(*job.identity));
}

std::int64_t rep_index(const Complex& p, binom::Rep rep) {
  const double k = p.real();
  if (p.imag() != 0.0 || k != std::floor(k) || k < binom::rep_min_k(rep) || k > 1e6)
    throw Error(Errc::config_invalid,
                std::string(binom::to_string(rep)) + ": k must be an integer >= " +
                    std::to_string(binom::rep_min_k(rep)) + ", got " + format_complex(p));
  return static_cast<std::int64_t>(k);
}

VerificationRecord run_job(const Job& job, bool timing) {
  VerificationRecord rec;
  rec.identity = job_name(job);
  rec.param = job.param;
  rec.tol = job.tol;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (job.rep) {
      const std::int64_t k = rep_index(job.param, *job.rep);
      rec.lhs = binom::rep_lhs(*job.rep, k);
      rec.lhs_method = std::string(numkit::to_string(numkit::Method::closed));
      const auto integral = binom::term_oracle_integral(*job.rep, k, kRepQuadTol);
      rec.rhs = integral.value;
      rec.rhs_method = std::string(numkit::to_string(integral.method));
    } else {
      rec.rhs = closedform::closed_eval(*job.identity, job.param);
      rec.rhs_method = std::string(numkit::to_string(numkit::Method::closed));
      const auto left =
          closedform::lhs_eval(*job.identity, job.param, std::max(0.1 * job.tol, 1e-14));
      rec.lhs = left.value;
      rec.lhs_method = std::string(numkit::to_string(left.method));
    }
    rec.abs_diff = std::abs(rec.lhs - rec.rhs);
    rec.passed = rec.abs_diff <= rec.tol;
  } catch (const Error& e) {
    rec.error = e.what();
    rec.abs_diff = std::nan("");
    rec.passed = false;
  }
  if (timing)
    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw Error(Errc::parse, "cannot read " + std::string(what) + " from '" + std::string(text) + "'");
  return v;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

std::size_t Report::passed() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.passed; }));
}

std::size_t Report::errors() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.error.empty(); }));
}

double Report::max_abs_diff() const {
  double m = 0.0;
  for (const auto& r : records)
    if (std::isfinite(r.abs_diff)) m = std::max(m, r.abs_diff);
  return m;
}

int Report::exit_code() const { return passed() == records.size() ? 0 : 1; }

std::span<const std::string_view> suite_names() { return kSuites; }

std::vector<std::string> suite_members(std::string_view suite) {
  if (!is_suite(suite)) throw Error(Errc::config_invalid, "unknown suite '" + std::string(suite) + "'");
  std::vector<std::string> out;
  for (Identity id : all_identities_of(suite)) out.emplace_back(closedform::to_string(id));
  if (suite_has_reps(suite))
    for (binom::Rep rep : binom::all_reps())
      out.push_back(std::string(kRepPrefix) + std::string(binom::to_string(rep)));
  return out;
}

Report run_suite(const SuiteConfig& config) {
  if (!is_suite(config.suite))
    throw Error(Errc::config_invalid, "unknown suite '" + config.suite + "'");
  if (config.tol && !(*config.tol > 0.0 && std::isfinite(*config.tol)))
    throw Error(Errc::config_invalid, "tolerance must be positive and finite");

  Report report;
  report.suite = config.suite;
  if (config.timing) report.timestamp = utc_now();

  if (config.grid && config.grid->empty()) {
    report.warnings.push_back("empty grid: nothing to verify");
    return report;
  }

  std::vector<Job> jobs;
  for (Identity id : all_identities_of(config.suite)) {
    const auto& entry = closedform::info(id);
    const double tol = config.tol.value_or(entry.tol);
    const auto& points = (config.grid && entry.takes_param) ? *config.grid : entry.grid;
    for (const Complex& p : points) {
      try {
        closedform::check_domain(id, p);
      } catch (const Error& e) {
        throw Error(Errc::config_invalid, std::string("grid point ") + format_complex(p) +
                                              " rejected: " + e.what());
      }
      jobs.push_back({id, std::nullopt, p, tol});
    }
  }
  if (suite_has_reps(config.suite)) {
    const double tol = config.tol.value_or(kRepTol);
    for (binom::Rep rep : binom::all_reps()) {
      std::vector<Complex> points;
      if (config.grid) {
        points = *config.grid;
        for (const Complex& p : points) rep_index(p, rep);
      } else {
        for (int k = binom::rep_min_k(rep); k <= kRepMaxK; ++k) points.emplace_back(k);
      }
      for (const Complex& p : points) jobs.push_back({std::nullopt, rep, p, tol});
    }
  }

  report.records.resize(jobs.size());
  unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++)
      report.records[i] = run_job(jobs[i], config.timing);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::stable_sort(report.records.begin(), report.records.end(), [](const auto& a, const auto& b) {
    if (a.identity != b.identity) return a.identity < b.identity;
    if (a.param.real() != b.param.real()) return a.param.real() < b.param.real();
    return a.param.imag() < b.param.imag();
  });
  return report;
}

std::string to_json(const Report& report) {
  ordered_json records = ordered_json::array();
  for (const auto& r : report.records) {
    ordered_json rec;
    rec["identity"] = r.identity;
    rec["param"] = complex_json(r.param);
    rec["lhs"] = complex_json(r.lhs);
    rec["rhs"] = complex_json(r.rhs);
    rec["abs_diff"] = r.abs_diff;  // NaN is written as null
    rec["tol"] = r.tol;
    rec["passed"] = r.passed;
    rec["lhs_method"] = r.lhs_method;
    rec["rhs_method"] = r.rhs_method;
    rec["wall_time_ms"] = r.wall_time_ms;
    rec["error"] = r.error.empty() ? ordered_json(nullptr) : ordered_json(r.error);
    records.push_back(std::move(rec));
  }
  ordered_json doc;
  doc["suite"] = report.suite;
  doc["timestamp"] = report.timestamp.empty() ? ordered_json(nullptr) : ordered_json(report.timestamp);
  doc["tool_version"] = kToolVersion;
  doc["records"] = std::move(records);
  doc["summary"] = {{"total", report.records.size()},
                    {"passed", report.passed()},
                    {"max_abs_diff", report.max_abs_diff()}};
  if (!report.warnings.empty()) doc["warnings"] = report.warnings;
  return doc.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
  std::string out =
      "identity,param_re,param_im,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff,tol,passed,lhs_method,"
      "rhs_method,wall_time_ms,error\n";
  for (const auto& r : report.records) {
    out += csv_quote(r.identity);
    for (double v : {r.param.real(), r.param.imag(), r.lhs.real(), r.lhs.imag(), r.rhs.real(),
                     r.rhs.imag(), r.abs_diff, r.tol})
      out += "," + fmt_double(v);
    out += r.passed ? ",true," : ",false,";
    out += r.lhs_method + "," + r.rhs_method + "," + fmt_double(r.wall_time_ms) + "," +
           csv_quote(r.error) + "\n";
  }
  return out;
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) continue;
    if (text.compare(i, 3, "\xE2\x88\x92") == 0) {  // U+2212 minus sign
      s += '-';
      i += 2;
      continue;
    }
    s += text[i];
  }
  if (s.empty()) throw Error(Errc::parse, "empty complex literal");

  if (s.back() != 'i' && s.back() != 'j') return {parse_double(s, "complex literal"), 0.0};

  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+" || im_part == "-") im_part += "1";
  const double re = re_part.empty() ? 0.0 : parse_double(re_part, "real part");
  return {re, parse_double(im_part, "imaginary part")};
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return fmt_double(z.real());
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::vector<Complex> read_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config_invalid, "cannot open grid file '" + path + "'");
  std::vector<Complex> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_complex(line));
    } catch (const Error& e) {
      throw Error(Errc::parse, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

numkit::EvalResult eval_command(std::string_view kind, std::span<const std::string> args) {
  std::map<std::string, std::string> kv;
  for (const auto& a : args) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(Errc::parse, "expected key=value, got '" + a + "'");
    kv[a.substr(0, eq)] = a.substr(eq + 1);
  }
  std::set<std::string> used;
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    used.insert(key);
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  auto need = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw Error(Errc::parse, std::string(kind) + ": missing " + key + "=");
    return *v;
  };
  auto finish = [&] {
    for (const auto& [key, value] : kv)
      if (!used.count(key)) throw Error(Errc::parse, std::string(kind) + ": unknown key '" + key + "'");
  };
  const auto tol_text = take("tol");
  const double tol = tol_text ? parse_double(*tol_text, "tol") : 1e-12;

  if (kind == "series") {
    binom::SumSpec spec;
    const auto fam = binom::parse_family(need("family"));
    if (!fam) throw Error(Errc::parse, "series: unknown family '" + kv["family"] + "'");
    spec.family = *fam;
    const double r = parse_double(need("r"), "r");
    if (r != std::floor(r) || std::abs(r) > 64) throw Error(Errc::parse, "series: r must be a small integer");
    spec.r = static_cast<int>(r);
    const auto seq = binom::parse_sequence(take("seq").value_or("one"));
    if (!seq) throw Error(Errc::parse, "series: unknown sequence '" + kv["seq"] + "'");
    spec.numerator = *seq;
    const auto w = binom::parse_weighting(take("weight").value_or("PLAIN"));
    if (!w) throw Error(Errc::parse, "series: unknown weighting '" + kv["weight"] + "'");
    spec.weighting = *w;
    spec.z = parse_complex(need("z"));
    const auto b = take("boundary").value_or("0");
    spec.boundary = b == "1" || b == "true";
    finish();
    return binom::sum_family(spec, tol);
  }
  if (kind == "gpl") {
    gpl::GplWord word;
    for (const auto& l : split_list(need("letters"))) word.letters.push_back(parse_complex(l));
    word.z = parse_complex(take("z").value_or("1"));
    finish();
    return gpl::gpl_eval(word, tol);
  }
  if (kind == "mpl") {
    gpl::MplSpec spec;
    for (const auto& d : split_list(need("depths"))) {
      const double v = parse_double(d, "depth");
      if (v != std::floor(v) || v < 1) throw Error(Errc::parse, "mpl: depths must be positive integers");
      spec.depths.push_back(static_cast<int>(v));
    }
    for (const auto& a : split_list(need("args"))) spec.args.push_back(parse_complex(a));
    if (spec.depths.size() != spec.args.size())
      throw Error(Errc::parse, "mpl: depths and args differ in length");
    finish();
    return gpl::mpl_eval(spec, tol);
  }
  if (kind == "closed") {
    const auto id = closedform::parse_identity(need("id"));
    if (!id) throw Error(Errc::parse, "closed: unknown identity '" + kv["id"] + "'");
    auto x = take("x");
    if (!x) x = take("param");
    finish();
    numkit::EvalResult out;
    out.value = closedform::closed_eval(*id, x ? parse_complex(*x) : Complex(0.0));
    out.method = numkit::Method::closed;
    return out;
  }
  throw Error(Errc::parse, "unknown eval kind '" + std::string(kind) + "'");
}

std::string format_eval(const numkit::EvalResult& result, bool json) {
  if (json) {
    ordered_json doc;
    doc["value"] = complex_json(result.value);
    doc["abs_err"] = result.abs_err;
    doc["work"] = result.work;
    doc["method"] = numkit::to_string(result.method);
    doc["boundary_slow"] = result.boundary_slow;
    return doc.dump() + "\n";
  }
  return "value   " + format_complex(result.value) + "\nabs_err " + fmt_double(result.abs_err) +
         "\nwork    " + std::to_string(result.work) + "\nmethod  " +
         std::string(numkit::to_string(result.method)) + "\n";
}

}  // namespace invbinom::harness
