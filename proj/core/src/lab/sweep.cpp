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
#include "npovm/lab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "npovm/encodings.hpp"
#include "npovm/errors.hpp"

#ifndef NPOVM_VERSION
#define NPOVM_VERSION "unknown"
#endif

namespace npovm::lab {
namespace {

using nlohmann::json;

std::string fmt_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Task {
  std::size_t point = 0;
  double value = 0.0;
  StrategyClass cls = StrategyClass::positive;
};

SweepRow run_task(const SweepConfig& cfg, const Task& task) {
  const EncodingFamily enc = make_preset(cfg.encoding_id, cfg.fixed_params);
  OptimizerConfig opt = cfg.optimizer;
  opt.seed = derive_seed(cfg.optimizer.seed, task.point * 2 + static_cast<std::uint64_t>(task.cls));
  const FisherReport rep = optimize_fisher(task.cls, enc, task.value, opt);
  return {task.value, task.cls, rep.fi, rep.delta_theta, rep.converged, rep.restarts_used};
}

json config_to_json(const SweepConfig& c) {
  json classes = json::array();
  for (auto cls : c.classes) classes.push_back(std::string(to_string(cls)));
  return {
      {"encoding", c.encoding_id},
      {"estimated_param", c.estimated_param},
      {"grid", {{"start", c.grid.start}, {"stop", c.grid.stop}, {"count", c.grid.count}}},
      {"fixed", c.fixed_params},
      {"optimizer",
       {{"restarts", c.optimizer.restarts},
        {"max_iters", c.optimizer.max_iters},
        {"simplex_tol", c.optimizer.simplex_tol},
        {"seed", c.optimizer.seed},
        {"warm_start_sld", c.optimizer.warm_start_sld},
        {"aux_dim", c.optimizer.aux_dim},
        {"fd_step", c.optimizer.fd_step}}},
      {"classes", classes},
      {"output", c.output_path},
      {"jobs", c.jobs},
  };
}

SweepConfig config_from_json(const json& j) {
  SweepConfig c;
  c.encoding_id = j.at("encoding").get<std::string>();
  c.estimated_param = j.at("estimated_param").get<std::string>();
  c.grid.start = j.at("grid").at("start").get<double>();
  c.grid.stop = j.at("grid").at("stop").get<double>();
  c.grid.count = j.at("grid").at("count").get<int>();
  c.fixed_params = j.at("fixed").get<std::map<std::string, double>>();
  const json& o = j.at("optimizer");
  c.optimizer.restarts = o.at("restarts").get<int>();
  c.optimizer.max_iters = o.at("max_iters").get<int>();
  c.optimizer.simplex_tol = o.at("simplex_tol").get<double>();
  c.optimizer.seed = o.at("seed").get<std::uint64_t>();
  c.optimizer.warm_start_sld = o.at("warm_start_sld").get<bool>();
  c.optimizer.aux_dim = o.at("aux_dim").get<std::size_t>();
  c.optimizer.fd_step = o.at("fd_step").get<double>();
  c.classes.clear();
  for (const auto& s : j.at("classes")) c.classes.push_back(parse_strategy_class(s.get<std::string>()));
  c.output_path = j.at("output").get<std::string>();
  c.jobs = j.at("jobs").get<int>();
  return c;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  make_preset(cfg.encoding_id, cfg.fixed_params);  // surfaces unknown ids before any thread starts

  const auto t0 = std::chrono::steady_clock::now();
  SweepResult out;
  out.manifest.config = cfg;
  out.manifest.tool_version = NPOVM_VERSION;
  out.manifest.started_at = utc_now();

  const std::vector<double> values = cfg.grid.values();
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < values.size(); ++p) {
    for (auto cls : cfg.classes) tasks.push_back({p, values[p], cls});
  }

  std::vector<SweepRow> rows(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        rows[t] = run_task(cfg, tasks[t]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), tasks.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.param_value != b.param_value) return a.param_value < b.param_value;
    return to_string(a.cls) < to_string(b.cls);
  });

  for (const auto& r : rows) {
    out.manifest.converged.push_back(r.converged);
    if (r.fi < kNonInformativeFisher) {
      out.warnings.push_back("non-informative point: " + cfg.estimated_param + "=" + fmt_number(r.param_value) +
                             " class=" + std::string(to_string(r.cls)) + " fi=" + fmt_number(r.fi));
    }
    if (!r.converged) {
      out.warnings.push_back("not converged: " + cfg.estimated_param + "=" + fmt_number(r.param_value) +
                             " class=" + std::string(to_string(r.cls)));
    }
  }
  out.manifest.warnings = static_cast<int>(out.warnings.size());
  out.rows = std::move(rows);
  out.manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string format_csv(const std::vector<SweepRow>& rows) {
  std::string s = kCsvHeader;
  s += '\n';
  for (const auto& r : rows) {
    s += fmt_number(r.param_value);
    s += ',';
    s += to_string(r.cls);
    s += ',';
    s += fmt_number(r.fi);
    s += ',';
    s += fmt_number(r.delta_theta);
    s += ',';
    s += r.converged ? "true" : "false";
    s += ',';
    s += std::to_string(r.restarts_used);
    s += '\n';
  }
  return s;
}

void write_text_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << contents;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::string manifest_path_for(const std::string& csv_path) { return csv_path + ".manifest.json"; }

SweepResult run_sweep_to_files(const SweepConfig& cfg) {
  SweepResult res = run_sweep(cfg);
  write_text_file(cfg.output_path, format_csv(res.rows));
  write_text_file(manifest_path_for(cfg.output_path), manifest_to_json(res.manifest));
  return res;
}

std::string manifest_to_json(const RunManifest& m) {
  json j = {
      {"config", config_to_json(m.config)},
      {"seed", m.config.optimizer.seed},
      {"tool_version", m.tool_version},
      {"started_at", m.started_at},
      {"wall_seconds", m.wall_seconds},
      {"converged", m.converged},
      {"warnings", m.warnings},
  };
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunManifest m;
    m.config = config_from_json(j.at("config"));
    m.config.optimizer.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.started_at = j.at("started_at").get<std::string>();
    m.wall_seconds = j.at("wall_seconds").get<double>();
    m.converged = j.at("converged").get<std::vector<bool>>();
    m.warnings = j.at("warnings").get<int>();
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return manifest_from_json(ss.str());
}

}  // namespace npovm::lab
