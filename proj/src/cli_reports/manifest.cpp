#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "sul/cli_reports.hpp"

namespace sul {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char ch : data) {
    hash ^= ch;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

std::string format_hex(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%a", value);
  return buffer;
}

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm parts{};
  gmtime_r(&now, &parts);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &parts);
  return buffer;
}

std::string power_of_two(long exponent) { return "2^" + std::to_string(exponent); }

}  // namespace

RunManifest make_manifest(const std::vector<std::string>& args, int bits, double t_tol) {
  RunManifest m;
  m.command_line = "sul";
  for (const auto& arg : args) m.command_line += " " + arg;
  m.bits = bits;
  m.t_tol = format_hex(t_tol);
  m.lp_tolerance = power_of_two(-bits / 2);
  m.cert_slack = power_of_two(-bits / 4);
  m.timestamp = utc_now();
  std::ostringstream canonical;
  canonical << m.command_line << '\n'
            << m.bits << '\n'
            << m.t_tol << '\n'
            << m.lp_tolerance << '\n'
            << m.cert_slack << '\n'
            << m.version;
  m.input_hash = hex64(fnv1a64(canonical.str()));
  return m;
}

nlohmann::ordered_json to_json(const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["command"] = manifest.command_line;
  j["bits"] = manifest.bits;
  j["tolerances"] = {{"t_tol", manifest.t_tol},
                     {"lp_pivot", manifest.lp_tolerance},
                     {"certificate_slack", manifest.cert_slack}};
  j["version"] = manifest.version;
  j["timestamp"] = manifest.timestamp;
  j["input_hash"] = manifest.input_hash;
  return j;
}

std::string csv_comment_block(const RunManifest& manifest) {
  std::ostringstream out;
  out << "# command: " << manifest.command_line << '\n'
      << "# bits: " << manifest.bits << '\n'
      << "# t_tol: " << manifest.t_tol << '\n'
      << "# lp_pivot: " << manifest.lp_tolerance << '\n'
      << "# certificate_slack: " << manifest.cert_slack << '\n'
      << "# version: " << manifest.version << '\n'
      << "# input_hash: " << manifest.input_hash << '\n'
      << "# timestamp: " << manifest.timestamp << '\n';
  return out.str();
}

}  // namespace sul
