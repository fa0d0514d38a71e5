#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sul/rho_optimizer.hpp"
#include "sul/theory_checks.hpp"

namespace sul {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportDigits = 30;

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

struct RunManifest {
  std::string command_line;
  int bits = kDefaultBits;
  std::string t_tol;          // hex float, exact
  std::string lp_tolerance;   // 2^(-bits/2)
  std::string cert_slack;     // 2^(-bits/4)
  std::string version = kVersion;
  std::string timestamp;      // UTC, ISO 8601
  std::string input_hash;     // FNV-1a of everything above except the timestamp
};

RunManifest make_manifest(const std::vector<std::string>& args, int bits, double t_tol);
nlohmann::ordered_json to_json(const RunManifest& manifest);
/// "# key: value" lines; the timestamp gets a line of its own.
std::string csv_comment_block(const RunManifest& manifest);

/// Hex-float spelling of a tolerance, e.g. 0x1p-40.
std::string format_hex(double value);

struct CacheKey {
  int d;
  int s;
  int n;
  int bits;
  double t_tol;

  std::string to_string() const;
};

/// On-disk store of RhoResult JSON. Entries are written atomically and every
/// hit is revalidated from the stored witness before it is returned.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);
  /// SUL_CACHE_DIR, or ./.sul-cache.
  static ResultCache from_environment();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const CacheKey& key) const;

  /// nullopt on a miss or on an entry that fails revalidation.
  std::optional<RhoResult> load(const CacheKey& key) const;
  void store(const CacheKey& key, const RhoResult& result) const;

 private:
  std::filesystem::path dir_;
};

/// Rebuilds T, rho, two_lambda and the certificate from the witness alone.
/// nullopt when the witness does not certify, does not match (d, s, n), or
/// disagrees with the stored T.
std::optional<RhoResult> revalidate(const RhoResult& stored);

/// Solves or reuses a cached certified result.
RhoResult solve_rho_cached(int d, ParitySignature s, int n, const SolveOptions& opts, const ResultCache* cache);

/// Decimal with `digits` significant digits in the given rounding direction;
/// "nan" for non-finite values.
std::string format_decimal(const Scalar& x, int digits = kReportDigits, mpfr_rnd_t rnd = MPFR_RNDN);

inline constexpr const char* kScanColumns = "d,s,n,m,lambda,two_lambda,T,rho,lower_ratio,upper_ratio,certified";

void write_scan_csv(std::ostream& out, const std::vector<AsymptoticRow>& rows, const RunManifest& manifest);

/// RhoResult JSON with the manifest under "manifest".
nlohmann::ordered_json result_document(const RhoResult& result, const RunManifest& manifest);

/// Atomic write through a temporary file in the same directory.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

struct VerifyReport {
  bool certificate = false;
  bool sign_change_bound = false;
  bool quadrature_identity = false;
  bool stored_values = false;
  std::vector<std::string> messages;

  bool passed() const { return certificate && sign_change_bound && quadrature_identity && stored_values; }
};

/// Re-runs the exact certificate at the stored T, the 2 lambda lower bound,
/// the quadrature identity and the consistency of the stored rho / two_lambda.
VerifyReport verify_result(const nlohmann::ordered_json& document);

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInfeasible = 2;
inline constexpr int kNotCertified = 3;
inline constexpr int kVerifyFailed = 4;
}  // namespace exit_code

/// Entry point behind the sul executable; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sul
