#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "sul/cli_reports.hpp"

namespace sul {

namespace fs = std::filesystem;

std::string CacheKey::to_string() const {
  return "d=" + std::to_string(d) + ";s=" + std::to_string(s) + ";n=" + std::to_string(n) +
         ";bits=" + std::to_string(bits) + ";t_tol=" + format_hex(t_tol);
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {}

ResultCache ResultCache::from_environment() {
  const char* dir = std::getenv("SUL_CACHE_DIR");
  return ResultCache((dir != nullptr && *dir != '\0') ? fs::path(dir) : fs::path(".sul-cache"));
}

fs::path ResultCache::path_for(const CacheKey& key) const {
  return dir_ / ("rho-" + hex64(fnv1a64(key.to_string())) + ".json");
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  static std::atomic<unsigned> counter{0};
  const fs::path parent = path.has_parent_path() ? path.parent_path() : fs::path(".");
  fs::create_directories(parent);
  const std::size_t thread_tag = std::hash<std::thread::id>{}(std::this_thread::get_id());
  const fs::path temp = parent / (".tmp-" + path.filename().string() + "-" + std::to_string(::getpid()) + "-" +
                                  std::to_string(thread_tag) + "-" + std::to_string(counter++));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw fs::filesystem_error("cannot open for writing", temp, std::make_error_code(std::errc::io_error));
    out << contents;
    out.flush();
    if (!out) throw fs::filesystem_error("write failed", temp, std::make_error_code(std::errc::io_error));
  }
  fs::rename(temp, path);
}

std::optional<RhoResult> revalidate(const RhoResult& stored) {
  PrecisionScope scope(stored.bits);
  const ParitySignature s = stored.s;
  if (stored.witness.param().d() != stored.d || stored.witness.is_zero()) return std::nullopt;
  if (stored.n < min_feasible_degree(s) || stored.m != stored.n / 2 + 1) return std::nullopt;
  for (const auto& [k, c] : stored.witness.coeffs()) {
    if (!c.is_zero() && (k > stored.n || !s.admits(k))) return std::nullopt;
  }

  RhoResult r = stored;
  try {
    r.T = refine_from_witness(r.witness);
  } catch (const NoSignChange&) {
    return std::nullopt;
  }
  r.certificate = certify_expansion(r.witness, r.T.to_rational());
  if (!r.certificate.certified()) return std::nullopt;
  r.rho = sqrt(r.T / ldexp(pi(), 1));
  r.lower_bound_T = ldexp(smallest_root(r.m, LaguerreParam(r.d)), 1);
  if (r.T < r.lower_bound_T - precision_tolerance(4)) return std::nullopt;

  // The stored T is a rounded decimal; it must agree with the witness.
  if (stored.T.is_finite()) {
    Scalar allowed = Scalar::parse("1e-" + std::to_string(kReportDigits - 3)) * max(Scalar(1), abs(r.T));
    if (abs(stored.T - r.T) > allowed) return std::nullopt;
  } else {
    return std::nullopt;
  }
  return r;
}

std::optional<RhoResult> ResultCache::load(const CacheKey& key) const {
  const fs::path path = path_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    const auto j = nlohmann::ordered_json::parse(buffer.str());
    if (!j.is_object() || !j.contains("key") || j["key"] != key.to_string()) return std::nullopt;
    RhoResult stored = rho_result_from_json(j);
    if (stored.d != key.d || stored.s.value() != key.s || stored.n != key.n || !stored.certified()) {
      return std::nullopt;
    }
    return revalidate(stored);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const CacheKey& key, const RhoResult& result) const {
  nlohmann::ordered_json j;
  j["key"] = key.to_string();
  const nlohmann::ordered_json body = to_json(result, kReportDigits);
  for (const auto& [name, value] : body.items()) j[name] = value;
  write_file_atomic(path_for(key), j.dump(2) + "\n");
}

RhoResult solve_rho_cached(int d, ParitySignature s, int n, const SolveOptions& opts, const ResultCache* cache) {
  const CacheKey key{d, s.value(), n, opts.bits, opts.t_tol};
  if (cache != nullptr) {
    if (auto hit = cache->load(key)) return std::move(*hit);
  }
  RhoResult result = solve_rho(d, s, n, opts);
  if (cache != nullptr) cache->store(key, result);
  return result;
}

}  // namespace sul
