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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "npovm/errors.hpp"
#include "npovm/lab/config.hpp"
#include "npovm/lab/reproduce.hpp"
#include "npovm/lab/sweep.hpp"
#include "npovm/lab/toml.hpp"

namespace npovm::lab {
namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("npovm_lab_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(Toml, ScalarsTablesAndArrays) {
  const TomlDocument doc = parse_toml(R"(
# comment
title = "sweep \"one\"" # trailing comment
count = 1_000
ratio = -2.5e-1
flag = true
off = false
list = [1, 2.5,
        "three",]   # multi-line

[grid]
start = 4.0
"quoted key" = 'literal \n'
[a.b]
c = inf
)");
  EXPECT_EQ(doc.at("title").as_string(), "sweep \"one\"");
  EXPECT_EQ(doc.at("count").as_integer(), 1000);
  EXPECT_DOUBLE_EQ(doc.at("ratio").as_number(), -0.25);
  EXPECT_TRUE(doc.at("flag").as_bool());
  EXPECT_FALSE(doc.at("off").as_bool());
  const auto& list = doc.at("list").as_array();
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[0].as_integer(), 1);
  EXPECT_DOUBLE_EQ(list[1].as_number(), 2.5);
  EXPECT_EQ(list[2].as_string(), "three");
  EXPECT_DOUBLE_EQ(doc.at("grid.start").as_number(), 4.0);
  EXPECT_EQ(doc.at("grid.quoted key").as_string(), "literal \\n");
  EXPECT_TRUE(std::isinf(doc.at("a.b.c").as_number()));
}

TEST(Toml, ErrorsCarryLineNumbers) {
  try {
    parse_toml("a = 1\nb = \n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_toml("a = 1\na = 2\n"), ConfigError);
  EXPECT_THROW(parse_toml("[grid\nx = 1\n"), ConfigError);
  EXPECT_THROW(parse_toml("s = \"unterminated\n"), ConfigError);
  EXPECT_THROW(parse_toml("x = 1 2\n"), ConfigError);
  EXPECT_THROW(parse_toml("x = [1, 2\n"), ConfigError);
  EXPECT_THROW(parse_toml("x = \"a\"\ny = x\n"), ConfigError);
  EXPECT_THROW(parse_toml("x = 1\n").at("x").as_string(), ConfigError);
}

const char* kXyConfig = R"(
encoding = "xy_h"
estimated_param = "h"
classes = ["positive", "general"]
output = "out.csv"
jobs = 2

[grid]
start = 4.0
stop = 5.0
count = 3

[fixed]
J = 1.0
gamma = 1.0
k = 0.2

[optimizer]
restarts = 4
max_iters = 500
simplex_tol = 1e-7
seed = 17
warm_start_sld = true
aux_dim = 2
fd_step = 1e-4
)";

TEST(Config, ParsesEveryField) {
  const SweepConfig c = parse_sweep_config(kXyConfig);
  EXPECT_EQ(c.encoding_id, "xy_h");
  EXPECT_EQ(c.estimated_param, "h");
  EXPECT_EQ(c.classes.size(), 2u);
  EXPECT_EQ(c.output_path, "out.csv");
  EXPECT_EQ(c.jobs, 2);
  EXPECT_EQ(c.grid.count, 3);
  EXPECT_DOUBLE_EQ(c.fixed_params.at("k"), 0.2);
  EXPECT_EQ(c.optimizer.restarts, 4);
  EXPECT_EQ(c.optimizer.max_iters, 500);
  EXPECT_DOUBLE_EQ(c.optimizer.simplex_tol, 1e-7);
  EXPECT_EQ(c.optimizer.seed, 17u);
  EXPECT_NO_THROW(c.validate());
  const auto v = c.grid.values();
  ASSERT_EQ(v.size(), 3u);
  EXPECT_DOUBLE_EQ(v[0], 4.0);
  EXPECT_DOUBLE_EQ(v[1], 4.5);
  EXPECT_DOUBLE_EQ(v[2], 5.0);
}

TEST(Config, EstimatedParameterDefaultsFromPreset) {
  const SweepConfig c = parse_sweep_config("encoding = \"amp_damp\"\n[grid]\nstart = 0.1\nstop = 0.9\ncount = 9\n");
  EXPECT_EQ(c.estimated_param, "k_a");
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, ValidationFailures) {
  auto with = [](const std::string& extra) {
    return parse_sweep_config("encoding = \"amp_damp\"\n" + extra);
  };
  EXPECT_THROW(with("[grid]\ncount = 1\n").validate(), ConfigError);
  EXPECT_THROW(with("[grid]\nstart = 0.5\nstop = 0.5\n").validate(), ConfigError);
  EXPECT_THROW(with("estimated_param = \"h\"\n").validate(), ConfigError);
  EXPECT_THROW(with("[optimizer]\nrestarts = 0\n").validate(), ConfigError);
  EXPECT_THROW(with("jobs = 0\n").validate(), ConfigError);
  EXPECT_THROW(with("classes = []\n").validate(), ConfigError);
  EXPECT_THROW(with("unknown_key = 1\n"), ConfigError);
  EXPECT_THROW(with("classes = [\"mixed\"]\n"), ConfigError);
  EXPECT_THROW(parse_sweep_config("[grid]\ncount = 3\n"), ConfigError);
  EXPECT_THROW(parse_sweep_config("encoding = \"nope\"\n").validate(), UnknownNameError);
  EXPECT_THROW(load_sweep_config("/nonexistent/config.toml"), ConfigError);
}

SweepConfig small_config(const std::filesystem::path& out) {
  SweepConfig c = parse_sweep_config(kXyConfig);
  c.optimizer.restarts = 2;
  c.output_path = out.string();
  return c;
}

TEST(Sweep, RowsSortedDeterministicAndIndependentOfJobCount) {
  const auto dir = scratch_dir("det");
  SweepConfig c = small_config(dir / "a.csv");
  const SweepResult a = run_sweep_to_files(c);
  ASSERT_EQ(a.rows.size(), 6u);
  for (std::size_t i = 0; i < a.rows.size(); i += 2) {
    EXPECT_EQ(a.rows[i].param_value, a.rows[i + 1].param_value);
    EXPECT_EQ(a.rows[i].cls, StrategyClass::general);
    EXPECT_EQ(a.rows[i + 1].cls, StrategyClass::positive);
    EXPECT_GE(a.rows[i].fi, a.rows[i + 1].fi - 1e-6);
  }
  c.output_path = (dir / "b.csv").string();
  c.jobs = 1;
  run_sweep_to_files(c);
  EXPECT_EQ(read_file(dir / "a.csv"), read_file(dir / "b.csv"));

  const std::string csv = read_file(dir / "a.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
}

TEST(Sweep, ManifestRoundTripReproducesCsv) {
  const auto dir = scratch_dir("manifest");
  const SweepConfig c = small_config(dir / "run.csv");
  const SweepResult first = run_sweep_to_files(c);
  const RunManifest m = load_manifest(manifest_path_for(c.output_path));
  EXPECT_EQ(m.config.optimizer.seed, 17u);
  EXPECT_EQ(m.converged.size(), first.rows.size());
  EXPECT_EQ(m.warnings, static_cast<int>(first.warnings.size()));
  EXPECT_FALSE(m.tool_version.empty());
  EXPECT_FALSE(m.started_at.empty());
  EXPECT_GE(m.wall_seconds, 0.0);

  SweepConfig again = m.config;
  again.output_path = (dir / "again.csv").string();
  run_sweep_to_files(again);
  EXPECT_EQ(read_file(dir / "run.csv"), read_file(dir / "again.csv"));
  EXPECT_THROW(manifest_from_json("{}"), ConfigError);
}

TEST(Sweep, AmplitudeDampingShowsNoAncillaAdvantage) {
  SweepConfig c = parse_sweep_config("encoding = \"amp_damp\"\n[grid]\nstart = 0.1\nstop = 0.9\ncount = 9\n");
  c.optimizer.restarts = 4;
  const SweepResult r = run_sweep(c);
  ASSERT_EQ(r.rows.size(), 18u);
  const GapCurve g = gap_curve(r.rows);
  EXPECT_LE(g.max_gap(), 1e-2);
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    const double k = g.values[i];
    EXPECT_NEAR(r.rows[2 * i].fi, 1.0 / (k * (1.0 - k)), 1e-3 / (k * (1.0 - k)));
  }
}

TEST(Sweep, IdentityEncodingFlagsNonInformativePoints) {
  SweepConfig c = parse_sweep_config("encoding = \"identity\"\n[grid]\nstart = 0\nstop = 1\ncount = 2\n"
                                     "[optimizer]\nrestarts = 1\n");
  const SweepResult r = run_sweep(c);
  ASSERT_EQ(r.rows.size(), 4u);
  for (const auto& row : r.rows) {
    EXPECT_LT(row.fi, kNonInformativeFisher);
    EXPECT_TRUE(std::isinf(row.delta_theta));
  }
  EXPECT_EQ(r.warnings.size(), 4u);
  EXPECT_NE(format_csv(r.rows).find(",inf,"), std::string::npos);
}

TEST(Sweep, InvalidInputsAndUnwritableOutput) {
  SweepConfig bad = parse_sweep_config("encoding = \"nope\"\n");
  EXPECT_THROW(run_sweep(bad), UnknownNameError);
  SweepConfig c = parse_sweep_config("encoding = \"identity\"\n[optimizer]\nrestarts = 1\n");
  c.output_path = "/proc/npovm/unwritable.csv";
  EXPECT_THROW(run_sweep_to_files(c), IoError);
}

TEST(CsvFormat, NumericFormatting) {
  const std::vector<SweepRow> rows = {{0.1, StrategyClass::general, 4.0 / 3.0, std::sqrt(0.75), true, 20},
                                      {0.1, StrategyClass::positive, 0.0, INFINITY, false, 3}};
  EXPECT_EQ(format_csv(rows),
            "param_value,class,fi,delta_theta,converged,restarts_used\n"
            "0.1,general,1.33333333333,0.866025403784,true,20\n"
            "0.1,positive,0,inf,false,3\n");
}

TEST(Fits, SymmetricParabolaAndQuadratic) {
  std::vector<double> x, y;
  for (int i = 1; i < 20; ++i) {
    x.push_back(0.05 * i);
    y.push_back(-1.25 * (x.back() * x.back() - x.back()) + 0.192);
  }
  const SymmetricParabola p = fit_symmetric_parabola(x, y);
  EXPECT_NEAR(p.a1, -1.25, 1e-12);
  EXPECT_NEAR(p.a2, 0.192, 1e-12);
  const Quadratic q = fit_quadratic(x, y);
  EXPECT_NEAR(q.c2, -1.25, 1e-10);
  EXPECT_NEAR(q.vertex(), 0.5, 1e-10);
  EXPECT_THROW(fit_quadratic({1.0, 2.0}, {1.0, 2.0}), PreconditionError);
}

TEST(Fits, GapCurveArgminSkipsNonConvergedPoints) {
  std::vector<SweepRow> rows;
  const double gaps[] = {0.3, 0.1, 0.05, 0.2};
  for (int i = 0; i < 4; ++i) {
    rows.push_back({i * 1.0, StrategyClass::general, 1.0, 1.0, true, 1});
    rows.push_back({i * 1.0, StrategyClass::positive, 1.0, 1.0 + gaps[i], i != 2, 1});
  }
  const GapCurve g = gap_curve(rows);
  EXPECT_DOUBLE_EQ(g.argmin(), 1.0);
  EXPECT_NEAR(g.max_gap(), 0.3, 1e-15);
  rows.pop_back();
  EXPECT_THROW(gap_curve(rows), PreconditionError);
}

TEST(Reproduce, FigureGrids) {
  ReproduceOptions o;
  o.out_dir = "somewhere";
  const auto f2 = figure_configs(Figure::fig2, o);
  ASSERT_EQ(f2.size(), 3u);
  EXPECT_EQ(f2[0].encoding_id, "amp_damp");
  EXPECT_EQ(f2[0].grid.count, 19);
  EXPECT_NEAR(f2[0].grid.values()[1] - f2[0].grid.values()[0], 0.05, 1e-12);
  EXPECT_EQ(f2[2].encoding_id, "xx");
  EXPECT_DOUBLE_EQ(f2[2].grid.stop, 1.5);
  const auto f3 = figure_configs(Figure::fig3, o);
  ASSERT_EQ(f3.size(), 9u);
  EXPECT_EQ(f3[0].encoding_id, "xy_h");
  EXPECT_NEAR(f3[0].grid.values()[1] - f3[0].grid.values()[0], 0.05, 1e-12);
  EXPECT_DOUBLE_EQ(f3[2].fixed_params.at("k"), 0.4);
  EXPECT_EQ(f3[0].optimizer.seed, f3[2].optimizer.seed);
  for (const auto& c : f3) EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(parse_figure("fig3"), Figure::fig3);
  EXPECT_THROW(parse_figure("fig4"), UnknownNameError);
}

}  // namespace
}  // namespace npovm::lab
