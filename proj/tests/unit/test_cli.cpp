// Copyright 2026 The npovm-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "npovm/condition.hpp"
#include "npovm/errors.hpp"
#include "npovm/lab/config.hpp"
#include "npovm_cli/cli.hpp"
#include "oracles.hpp"

namespace npovm::cli {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("npovm_cli_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, QfiPhasePlusPrintsFour) {
  const CliRun r = run({"qfi", "--encoding", "phase", "--state", "plus", "--theta", "0.3"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("qfi_pure_unitary = 4\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("max_qfi_unitary = 4\n"), std::string::npos) << r.out;
}

TEST(Cli, QfiOnChannelReportsSld) {
  const CliRun r = run({"qfi", "--encoding", "amp_damp", "--state", "zero", "--theta", "0.25"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("qfi_sld = 5.333333"), std::string::npos) << r.out;
}

TEST(Cli, CheckConditionIdentity) {
  const CliRun r = run({"check-condition", "--u", "identity4", "--u2", "identity2"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("satisfied = true"), std::string::npos);
  EXPECT_NE(r.out.find("witness_i = 0"), std::string::npos);
}

TEST(Cli, CheckConditionCnotAndMatrixFiles) {
  const CliRun c = run({"check-condition", "--u", "cnot", "--u2", "identity2"});
  EXPECT_EQ(c.code, kOk);
  EXPECT_NE(c.out.find("satisfied = false"), std::string::npos);
  EXPECT_NE(c.out.find("witness_i = none"), std::string::npos);

  const auto dir = scratch("matrix");
  const auto path = dir / "u.txt";
  std::ofstream(path) << "# I (x) X\n0,0 1,0 0,0 0,0\n1,0 0,0 0,0 0,0\n0,0 0,0 0,0 1,0\n0,0 0,0 1,0 0,0\n";
  std::ofstream(dir / "v.txt") << "0 1\n1 0\n";
  const CliRun f = run({"check-condition", "--u", path.string(), "--u2", (dir / "v.txt").string(), "--u1", "hadamard",
                     "--um", "xx_um"});
  EXPECT_EQ(f.code, kOk) << f.err;
  EXPECT_NE(f.out.find("satisfied = true"), std::string::npos) << f.out;
  EXPECT_NE(f.out.find("um_prime:"), std::string::npos);
}

TEST(Cli, MatrixParsing) {
  const ComplexMatrix m = parse_matrix_text("1,0 0,-1\n0,1  2\n");
  ASSERT_EQ(m.rows(), 2);
  EXPECT_EQ(m(0, 1), Complex(0.0, -1.0));
  EXPECT_EQ(m(1, 1), Complex(2.0, 0.0));
  EXPECT_THROW(parse_matrix_text("1 2\n3\n"), DimensionError);
  EXPECT_THROW(parse_matrix_text("1,x\n"), ConfigError);
  EXPECT_THROW(parse_matrix_text("\n"), ConfigError);
  EXPECT_LT(testing::max_abs(load_matrix("xx_um") - xx_example_measurement()), 1e-15);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"sweep", "--config", "missing.toml"}).code, kUsage);
  EXPECT_EQ(run({}).code, kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kUsage);
  EXPECT_EQ(run({"qfi", "--encoding", "nope", "--theta", "1"}).code, kUsage);
  EXPECT_EQ(run({"qfi", "--encoding", "phase", "--theta", "1", "--state", "weird"}).code, kUsage);
  EXPECT_EQ(run({"qfi", "--encoding", "amp_damp", "--theta", "1.5"}).code, kUsage);
  EXPECT_EQ(run({"optimize", "--encoding", "phase", "--theta", "1", "--class", "mixed"}).code, kUsage);
  EXPECT_EQ(run({"check-condition", "--u", "nothing-here", "--u2", "identity2"}).code, kUsage);
  EXPECT_EQ(run({"check-condition", "--u", "identity2", "--u2", "identity2"}).code, kUsage);
  EXPECT_EQ(run({"reproduce", "fig9"}).code, kUsage);
  EXPECT_EQ(run({"--help"}).code, kOk);
}

TEST(Cli, OptimizeBothClasses) {
  const CliRun r = run({"optimize", "--encoding", "phase", "--theta", "0.4", "--restarts", "2", "--seed", "1"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("class = positive"), std::string::npos);
  EXPECT_NE(r.out.find("class = general"), std::string::npos);
  EXPECT_NE(r.out.find("fi = 3.99999"), std::string::npos) << r.out;
}

TEST(Cli, SweepWritesCsvAndManifestAndRerunsFromManifest) {
  const auto dir = scratch("sweep");
  const auto cfg = dir / "s.toml";
  std::ofstream(cfg) << "encoding = \"amp_damp\"\n[grid]\nstart = 0.2\nstop = 0.8\ncount = 3\n[optimizer]\nrestarts = 2\n";
  const auto out = dir / "s.csv";
  const CliRun a = run({"sweep", "--config", cfg.string(), "--out", out.string(), "--seed", "5"});
  ASSERT_EQ(a.code, kOk) << a.err;
  ASSERT_TRUE(std::filesystem::exists(out));
  ASSERT_TRUE(std::filesystem::exists(out.string() + ".manifest.json"));

  const auto again = dir / "again.csv";
  const CliRun b = run({"sweep", "--manifest", out.string() + ".manifest.json", "--out", again.string()});
  ASSERT_EQ(b.code, kOk) << b.err;
  EXPECT_EQ(read_file(out), read_file(again));

  EXPECT_EQ(run({"sweep", "--config", cfg.string(), "--out", "/proc/npovm/x.csv"}).code, kIo);
  EXPECT_EQ(run({"sweep"}).code, kUsage);
}

TEST(Cli, ShippedConfigsParse) {
  const std::filesystem::path dir = NPOVM_CONFIG_DIR;
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".toml") continue;
    ++n;
    EXPECT_NO_THROW(npovm::lab::load_sweep_config(entry.path().string()).validate()) << entry.path();
  }
  EXPECT_EQ(n, 8);
}

}  // namespace
}  // namespace npovm::cli
