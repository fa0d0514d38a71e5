#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "sul/cli_reports.hpp"
#include "support.hpp"

namespace sul {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string without_timestamp(const std::string& csv) {
  std::istringstream in(csv);
  std::string kept;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("# timestamp:", 0) == 0) continue;
    kept += line + "\n";
  }
  return kept;
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  return rows;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
  return cells;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sul-cli-test-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ::setenv("SUL_CACHE_DIR", (dir_ / "cache").c_str(), 1);
    ::unsetenv("SUL_BITS");
  }
  void TearDown() override {
    ::unsetenv("SUL_CACHE_DIR");
    fs::remove_all(dir_);
  }

  fs::path dir_;
};

TEST(Manifest, HashIgnoresTimestamp) {
  RunManifest a = make_manifest({"rho", "--dim", "2"}, 256, 0x1p-40);
  RunManifest b = make_manifest({"rho", "--dim", "2"}, 256, 0x1p-40);
  EXPECT_EQ(a.input_hash, b.input_hash);
  EXPECT_NE(a.input_hash, make_manifest({"rho", "--dim", "3"}, 256, 0x1p-40).input_hash);
  EXPECT_NE(a.input_hash, make_manifest({"rho", "--dim", "2"}, 512, 0x1p-40).input_hash);
  EXPECT_EQ(a.t_tol, "0x1p-40");
  EXPECT_EQ(a.command_line, "sul rho --dim 2");
  const std::string block = csv_comment_block(a);
  EXPECT_NE(block.find("# input_hash: " + a.input_hash), std::string::npos);
  EXPECT_NE(block.find("# timestamp: "), std::string::npos);
}

TEST(Manifest, FnvMatchesReferenceVectors) {
  EXPECT_EQ(hex64(fnv1a64("")), "cbf29ce484222325");
  EXPECT_EQ(hex64(fnv1a64("a")), "af63dc4c8601ec8c");
  EXPECT_EQ(hex64(fnv1a64("foobar")), "85944171f73967e8");
}

TEST(FormatDecimal, DirectedRounding) {
  const Scalar third = Scalar(1) / Scalar(3);
  EXPECT_EQ(format_decimal(third, 5, MPFR_RNDU), "3.3334e-01");
  EXPECT_EQ(format_decimal(third, 5, MPFR_RNDD), "3.3333e-01");
  Scalar nan;
  mpfr_set_nan(nan.get());
  EXPECT_EQ(format_decimal(nan), "nan");
}

TEST_F(CliTest, RhoExamples) {
  const CliRun two = run({"rho", "--dim", "2", "--sign", "plus", "--degree", "2"});
  EXPECT_EQ(two.code, exit_code::kOk) << two.err;
  EXPECT_NE(two.out.find("rho = 7.97884560802865355879892119869e-01"), std::string::npos) << two.out;
  EXPECT_NE(two.out.find("certified = true"), std::string::npos);

  EXPECT_EQ(run({"rho", "--dim", "1", "--sign", "minus", "--degree", "1"}).code, exit_code::kInfeasible);

  const CliRun twelve = run({"rho", "--dim", "12", "--sign", "plus", "--degree", "2"});
  EXPECT_EQ(twelve.code, exit_code::kOk);
  EXPECT_NE(twelve.out.find("T = 1.400000000000000000000000000"), std::string::npos) << twelve.out;
}

TEST_F(CliTest, MalformedFlagsExitOne) {
  EXPECT_EQ(run({"rho", "--dim", "2", "--sign", "sideways", "--degree", "2"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"rho", "--dim", "x", "--sign", "plus", "--degree", "2"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"rho", "--sign", "plus", "--degree", "2"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"rho", "--dim", "2", "--sign", "plus", "--degree", "2", "--bits", "8"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"scan", "--dims", "5:1:1", "--policy", "fixed:3"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"scan", "--dims", "4", "--policy", "bogus"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"bounds"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"bounds", "--c", "-1"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, exit_code::kUsage);
  EXPECT_EQ(run({}).code, exit_code::kUsage);
  EXPECT_EQ(run({"--help"}).code, exit_code::kOk);
}

TEST_F(CliTest, BadEnvironmentBitsIsUsageError) {
  ::setenv("SUL_BITS", "12", 1);
  EXPECT_EQ(run({"bounds", "--m", "1", "--dim", "8"}).code, exit_code::kUsage);
  ::setenv("SUL_BITS", "512", 1);
  EXPECT_EQ(run({"bounds", "--m", "1", "--dim", "8"}).code, exit_code::kOk);
}

TEST_F(CliTest, BoundsExamples) {
  const CliRun c = run({"bounds", "--c", "0.05185402502"});
  EXPECT_EQ(c.code, exit_code::kOk);
  EXPECT_NE(c.out.find("= 3.18309886"), std::string::npos) << c.out;

  const CliRun m1 = run({"bounds", "--m", "1", "--dim", "8"});
  EXPECT_NE(m1.out.find("= 2.00000000000000000000000000000e+00"), std::string::npos) << m1.out;

  const CliRun m2 = run({"bounds", "--m", "2", "--dim", "2"});
  EXPECT_NE(m2.out.find("= -2.36067977499789696409173668731e-01"), std::string::npos) << m2.out;
}

TEST_F(CliTest, LaguerreDebugOutput) {
  const CliRun r = run({"laguerre", "--m", "2", "--dim", "2"});
  EXPECT_EQ(r.code, exit_code::kOk);
  EXPECT_NE(r.out.find("5.85786437626904951198311275790e-01"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("8.53553390593273762200422181052e-01"), std::string::npos) << r.out;
}

TEST_F(CliTest, ScanExamples) {
  const fs::path csv = dir_ / "scan.csv";
  const CliRun r = run({"scan", "--dims", "64,256,1024", "--policy", "fixed:3", "--sign", "minus", "--csv", csv.string()});
  ASSERT_EQ(r.code, exit_code::kOk) << r.err;
  const std::string text = read_file(csv);
  EXPECT_EQ(text.rfind("# command: sul scan", 0), 0u);
  const auto rows = data_rows(text);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], kScanColumns);
  double previous = 1e9;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    ASSERT_EQ(cells.size(), 11u);
    EXPECT_EQ(cells[10], "true");
    const double upper = std::stod(cells[9]);
    EXPECT_LT(upper, previous);
    previous = upper;
  }

  EXPECT_EQ(run({"scan", "--dims", "2", "--policy", "fixed:1", "--sign", "minus"}).code, exit_code::kInfeasible);
}

TEST_F(CliTest, ScanRangeAndStdout) {
  const CliRun r = run({"scan", "--dims", "2:6:2", "--policy", "fixed:2", "--sign", "plus", "--jobs", "2"});
  ASSERT_EQ(r.code, exit_code::kOk) << r.err;
  const auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(split(rows[1])[0], "2");
  EXPECT_EQ(split(rows[2])[0], "4");
  EXPECT_EQ(split(rows[3])[0], "6");
  EXPECT_EQ(split(rows[3])[6].rfind("8.0000000000000000000000000000", 0), 0u) << rows[3];
}

TEST_F(CliTest, ScanIsDeterministic) {
  const std::vector<std::string> args{"scan", "--dims", "3,5,9", "--policy", "fixed:5", "--sign", "minus", "--no-cache"};
  const CliRun first = run(args);
  const CliRun second = run(args);
  ASSERT_EQ(first.code, exit_code::kOk);
  EXPECT_EQ(without_timestamp(first.out), without_timestamp(second.out));
}

TEST_F(CliTest, VerifyAcceptsFreshOutput) {
  const fs::path json = dir_ / "r.json";
  ASSERT_EQ(run({"rho", "--dim", "2", "--sign", "plus", "--degree", "2", "--json", json.string()}).code, 0);
  const auto doc = nlohmann::ordered_json::parse(read_file(json));
  EXPECT_TRUE(doc.contains("manifest"));
  EXPECT_EQ(doc["manifest"]["bits"], 256);
  const CliRun v = run({"verify", "--result", json.string()});
  EXPECT_EQ(v.code, exit_code::kOk) << v.out;
  EXPECT_NE(v.out.find("verify: PASS"), std::string::npos);
}

TEST_F(CliTest, VerifyRejectsTamperedFiles) {
  const fs::path json = dir_ / "r.json";
  ASSERT_EQ(run({"rho", "--dim", "5", "--sign", "minus", "--degree", "5", "--json", json.string()}).code, 0);
  const auto doc = nlohmann::ordered_json::parse(read_file(json));

  auto lowered = doc;
  const Scalar two_lambda = Scalar::parse(doc["two_lambda"].get<std::string>());
  lowered["T"] = format_decimal(two_lambda - Scalar(1));
  write_file(dir_ / "lowered.json", lowered.dump(2));
  EXPECT_EQ(run({"verify", "--result", (dir_ / "lowered.json").string()}).code, exit_code::kVerifyFailed);

  auto corrupted = doc;
  auto& coeffs = corrupted["witness"]["coeffs"];
  const std::string key = coeffs.begin().key();
  coeffs[key] = format_decimal(Scalar::parse(coeffs[key].get<std::string>()) * Scalar::parse("1.001"));
  write_file(dir_ / "corrupted.json", corrupted.dump(2));
  EXPECT_EQ(run({"verify", "--result", (dir_ / "corrupted.json").string()}).code, exit_code::kVerifyFailed);

  auto wrong_rho = doc;
  wrong_rho["rho"] = "1.5";
  write_file(dir_ / "rho.json", wrong_rho.dump(2));
  EXPECT_EQ(run({"verify", "--result", (dir_ / "rho.json").string()}).code, exit_code::kVerifyFailed);

  write_file(dir_ / "garbage.json", "{not json");
  EXPECT_EQ(run({"verify", "--result", (dir_ / "garbage.json").string()}).code, exit_code::kVerifyFailed);
  EXPECT_EQ(run({"verify", "--result", (dir_ / "missing.json").string()}).code, exit_code::kVerifyFailed);
}

TEST_F(CliTest, CacheRoundTripAndPoisoning) {
  const ResultCache cache = ResultCache::from_environment();
  EXPECT_EQ(cache.dir(), dir_ / "cache");
  SolveOptions opts;
  const CacheKey key{6, -1, 5, opts.bits, opts.t_tol};
  const RhoResult fresh = solve_rho_cached(6, ParitySignature::minus(), 5, opts, &cache);
  ASSERT_TRUE(fs::exists(cache.path_for(key)));

  const auto hit = cache.load(key);
  ASSERT_TRUE(hit.has_value());
  EXPECT_TRUE(hit->certified());
  EXPECT_EQ(to_json(*hit).dump(), to_json(fresh).dump());

  auto entry = nlohmann::ordered_json::parse(read_file(cache.path_for(key)));
  auto& coeffs = entry["witness"]["coeffs"];
  const std::string k = coeffs.begin().key();
  coeffs[k] = format_decimal(-Scalar::parse(coeffs[k].get<std::string>()));
  write_file(cache.path_for(key), entry.dump(2));
  EXPECT_FALSE(cache.load(key).has_value());

  auto wrong_t = nlohmann::ordered_json::parse(to_json(fresh).dump());
  wrong_t["key"] = key.to_string();
  wrong_t["T"] = format_decimal(fresh.T + Scalar(1));
  write_file(cache.path_for(key), wrong_t.dump(2));
  EXPECT_FALSE(cache.load(key).has_value());

  write_file(cache.path_for(key), "garbage");
  EXPECT_FALSE(cache.load(key).has_value());

  const RhoResult recomputed = solve_rho_cached(6, ParitySignature::minus(), 5, opts, &cache);
  EXPECT_EQ(to_json(recomputed).dump(), to_json(fresh).dump());
  EXPECT_TRUE(cache.load(key).has_value());
}

TEST_F(CliTest, CacheKeySeparatesOptions) {
  const ResultCache cache = ResultCache::from_environment();
  EXPECT_NE(cache.path_for({2, 1, 2, 256, 0x1p-40}), cache.path_for({2, 1, 2, 512, 0x1p-40}));
  EXPECT_NE(cache.path_for({2, 1, 2, 256, 0x1p-40}), cache.path_for({2, 1, 2, 256, 0x1p-30}));
  EXPECT_NE(cache.path_for({2, 1, 2, 256, 0x1p-40}), cache.path_for({2, -1, 2, 256, 0x1p-40}));
}

TEST_F(CliTest, AtomicWriteLeavesNoTemporaries) {
  write_file_atomic(dir_ / "sub" / "out.txt", "hello\n");
  EXPECT_EQ(read_file(dir_ / "sub" / "out.txt"), "hello\n");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir_ / "sub")) ++entries;
  EXPECT_EQ(entries, 1);
}

}  // namespace
}  // namespace sul
