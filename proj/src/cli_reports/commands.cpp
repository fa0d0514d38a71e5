#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sul/cli_reports.hpp"

namespace sul {

namespace {

int default_bits() {
  const char* env = std::getenv("SUL_BITS");
  if (env == nullptr || *env == '\0') return kDefaultBits;
  try {
    std::size_t used = 0;
    const int bits = std::stoi(env, &used);
    if (used == std::string(env).size() && bits >= 64) return bits;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("SUL_BITS", "must be an integer >= 64");
}

ParitySignature parse_sign(const std::string& text) {
  return text == "plus" ? ParitySignature::plus() : ParitySignature::minus();
}

std::vector<int> parse_dims(const std::string& text) {
  auto to_int = [&text](const std::string& part) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw CLI::ValidationError("--dims", "bad entry '" + part + "' in " + text);
    return value;
  };
  std::vector<int> dims;
  if (text.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ':');) parts.push_back(to_int(part));
    if (parts.size() != 3 || parts[2] <= 0 || parts[0] > parts[1]) {
      throw CLI::ValidationError("--dims", "expected start:stop:step with step > 0, got " + text);
    }
    for (int d = parts[0]; d <= parts[1]; d += parts[2]) dims.push_back(d);
  } else {
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ',');) dims.push_back(to_int(part));
  }
  if (dims.empty()) throw CLI::ValidationError("--dims", "no dimensions given");
  for (int d : dims) {
    if (d < 1) throw CLI::ValidationError("--dims", "dimensions must be >= 1");
  }
  return dims;
}

struct SolveFlags {
  int bits = kDefaultBits;
  double t_tol = SolveOptions{}.t_tol;
  bool no_cache = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--bits", bits, "working precision in bits (default: SUL_BITS or 256)")
        ->check(CLI::Range(64, 1 << 16));
    cmd->add_option("--t-tol", t_tol, "bisection tolerance in T units")->check(CLI::PositiveNumber);
    cmd->add_flag("--no-cache", no_cache, "ignore and do not write the result cache");
  }

  SolveOptions options() const {
    SolveOptions opts;
    opts.bits = bits;
    opts.t_tol = t_tol;
    opts.max_bits = std::max(opts.max_bits, 4 * bits);
    return opts;
  }
};

std::optional<ResultCache> make_cache(bool disabled) {
  if (disabled) return std::nullopt;
  return ResultCache::from_environment();
}

int cmd_rho(const std::vector<std::string>& args, int d, const std::string& sign, int n, const SolveFlags& flags,
            const std::string& json_path, std::ostream& out, std::ostream& err) {
  const ParitySignature s = parse_sign(sign);
  const auto cache = make_cache(flags.no_cache);
  RhoResult r;
  try {
    r = solve_rho_cached(d, s, n, flags.options(), cache ? &*cache : nullptr);
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return exit_code::kInfeasible;
  } catch (const PrecisionExhausted& e) {
    err << "precision exhausted: " << e.what() << '\n';
    return exit_code::kNotCertified;
  }
  PrecisionScope scope(r.bits);
  out << "d = " << r.d << ", s = " << (r.s.value() > 0 ? "+1" : "-1") << ", n = " << r.n << ", m = " << r.m << '\n'
      << "rho = " << format_decimal(r.rho, kReportDigits, MPFR_RNDU) << '\n'
      << "T = " << format_decimal(r.T, kReportDigits, MPFR_RNDU) << '\n'
      << "two_lambda = " << format_decimal(r.lower_bound_T, kReportDigits, MPFR_RNDD) << '\n'
      << "certified = " << (r.certified() ? "true" : "false") << '\n';
  if (!json_path.empty()) {
    const RunManifest manifest = make_manifest(args, flags.bits, flags.t_tol);
    write_file_atomic(json_path, result_document(r, manifest).dump(2) + "\n");
  }
  return r.certified() ? exit_code::kOk : exit_code::kNotCertified;
}

int cmd_scan(const std::vector<std::string>& args, const std::string& dims_text, const std::string& policy_text,
             const std::string& sign, const std::string& csv_path, int jobs, const SolveFlags& flags, std::ostream& out,
             std::ostream& err) {
  const std::vector<int> dims = parse_dims(dims_text);
  DegreePolicy policy = DegreePolicy::fixed(0);
  try {
    policy = DegreePolicy::parse(policy_text);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--policy", e.what());
  }
  const ParitySignature s = parse_sign(sign);
  const auto cache = make_cache(flags.no_cache);
  const SolveOptions opts = flags.options();
  RhoSolver solver = [&](int d, ParitySignature sig, int n) {
    try {
      return solve_rho_cached(d, sig, n, opts, cache ? &*cache : nullptr);
    } catch (const PrecisionExhausted&) {
      RhoResult failed;
      failed.d = d;
      failed.s = sig;
      failed.n = n;
      failed.m = n / 2 + 1;
      failed.bits = opts.bits;
      mpfr_set_nan(failed.T.get());
      mpfr_set_nan(failed.rho.get());
      return failed;
    }
  };

  std::vector<AsymptoticRow> rows;
  try {
    rows = asymptotic_scan(dims, policy, s, solver, flags.bits, jobs);
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return exit_code::kInfeasible;
  }

  const RunManifest manifest = make_manifest(args, flags.bits, flags.t_tol);
  std::ostringstream csv;
  write_scan_csv(csv, rows, manifest);
  if (csv_path.empty()) {
    out << csv.str();
  } else {
    write_file_atomic(csv_path, csv.str());
    out << "wrote " << rows.size() << " rows to " << csv_path << '\n';
  }
  const bool all = std::all_of(rows.begin(), rows.end(), [](const AsymptoticRow& r) { return r.result.certified(); });
  if (!all) err << "some rows failed certification\n";
  return all ? exit_code::kOk : exit_code::kNotCertified;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "cannot read " << path << '\n';
    return exit_code::kVerifyFailed;
  }
  nlohmann::ordered_json document;
  try {
    document = nlohmann::ordered_json::parse(in);
  } catch (const std::exception& e) {
    err << "malformed JSON in " << path << ": " << e.what() << '\n';
    return exit_code::kVerifyFailed;
  }
  const VerifyReport report = verify_result(document);
  for (const auto& line : report.messages) out << line << '\n';
  out << (report.passed() ? "verify: PASS" : "verify: FAIL") << '\n';
  return report.passed() ? exit_code::kOk : exit_code::kVerifyFailed;
}

int cmd_bounds(int m, int d, const std::string& c_text, std::ostream& out) {
  PrecisionScope scope(default_bits());
  if (m > 0) {
    out << "lambda_lower_bound(m=" << m << ", d=" << d << ") = " << format_decimal(lambda_lower_bound(m, d)) << '\n';
  }
  if (!c_text.empty()) {
    Scalar c;
    try {
      c = Scalar::parse(c_text);
    } catch (const std::invalid_argument&) {
      throw CLI::ValidationError("--c", "not a number: " + c_text);
    }
    if (!(c.sign() > 0)) throw CLI::ValidationError("--c", "must be positive");
    out << "linear_degree_rho_bound(c=" << c_text << ") = " << format_decimal(linear_degree_rho_bound(c)) << '\n';
  }
  return exit_code::kOk;
}

int cmd_laguerre(int m, int d, int bits, std::ostream& out) {
  PrecisionScope scope(bits);
  const auto rule = cached_rule(m, LaguerreParam(d));
  out << "# m = " << m << ", d = " << d << ", alpha = " << format_decimal(LaguerreParam(d).alpha(), 6) << '\n'
      << "i,node,weight\n";
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    out << i + 1 << ',' << format_decimal(rule->nodes[i]) << ',' << format_decimal(rule->weights[i]) << '\n';
  }
  out << "# max relative moment residual = " << format_decimal(max_moment_residual(*rule), 6) << '\n';
  return exit_code::kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified sign-uncertainty bounds for polynomial times Gaussian test functions", "sul"};
  app.require_subcommand(1);
  const std::vector<std::string> signs{"plus", "minus"};

  int exit_status = exit_code::kOk;
  try {
    SolveFlags flags;
    flags.bits = default_bits();

    auto* rho = app.add_subcommand("rho", "certified upper bound on rho_{d,s,n}");
    int rho_d = 0;
    int rho_n = 0;
    std::string rho_sign;
    std::string json_path;
    rho->add_option("--dim", rho_d, "dimension d")->required()->check(CLI::PositiveNumber);
    rho->add_option("--sign", rho_sign, "Fourier eigenvalue")->required()->check(CLI::IsMember(signs));
    rho->add_option("--degree", rho_n, "degree cap n")->required()->check(CLI::NonNegativeNumber);
    rho->add_option("--json", json_path, "write the result JSON here");
    flags.attach(rho);

    auto* scan = app.add_subcommand("scan", "asymptotic ratio scan over dimensions");
    std::string dims_text;
    std::string policy_text;
    std::string scan_sign = "minus";
    std::string csv_path;
    int jobs = std::max(1u, std::thread::hardware_concurrency());
    scan->add_option("--dims", dims_text, "start:stop:step or a comma list")->required();
    scan->add_option("--policy", policy_text, "fixed:N, sqrt or linear:C")->required();
    scan->add_option("--sign", scan_sign, "Fourier eigenvalue")->check(CLI::IsMember(signs))->capture_default_str();
    scan->add_option("--csv", csv_path, "write the CSV here instead of stdout");
    scan->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    flags.attach(scan);

    auto* verify = app.add_subcommand("verify", "re-check a stored result");
    std::string result_path;
    verify->add_option("--result", result_path, "RhoResult JSON")->required();

    auto* bounds = app.add_subcommand("bounds", "closed-form bounds");
    int bounds_m = 0;
    int bounds_d = 0;
    std::string bounds_c;
    auto* m_opt = bounds->add_option("--m", bounds_m, "Laguerre degree m")->check(CLI::PositiveNumber);
    auto* d_opt = bounds->add_option("--dim", bounds_d, "dimension d")->check(CLI::PositiveNumber);
    auto* c_opt = bounds->add_option("--c", bounds_c, "linear-degree coefficient c > 0");
    m_opt->needs(d_opt);
    d_opt->needs(m_opt);

    auto* laguerre = app.add_subcommand("laguerre", "print Gauss-Laguerre nodes and weights");
    int lag_m = 0;
    int lag_d = 0;
    int lag_bits = flags.bits;
    laguerre->add_option("--m", lag_m, "number of nodes")->required()->check(CLI::PositiveNumber);
    laguerre->add_option("--dim", lag_d, "dimension d")->required()->check(CLI::PositiveNumber);
    laguerre->add_option("--bits", lag_bits, "working precision in bits")->check(CLI::Range(64, 1 << 16));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (*rho) {
      exit_status = cmd_rho(args, rho_d, rho_sign, rho_n, flags, json_path, out, err);
    } else if (*scan) {
      exit_status = cmd_scan(args, dims_text, policy_text, scan_sign, csv_path, jobs, flags, out, err);
    } else if (*verify) {
      exit_status = cmd_verify(result_path, out, err);
    } else if (*bounds) {
      if (m_opt->count() == 0 && c_opt->count() == 0) throw CLI::ValidationError("bounds", "give --m/--dim or --c");
      exit_status = cmd_bounds(bounds_m, bounds_d, bounds_c, out);
    } else if (*laguerre) {
      exit_status = cmd_laguerre(lag_m, lag_d, lag_bits, out);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "file error: " << e.what() << '\n';
    return exit_code::kUsage;
  }
  return exit_status;
}

}  // namespace sul
