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
#include "npovm/lab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "npovm/encodings.hpp"
#include "npovm/errors.hpp"
#include "npovm/lab/toml.hpp"

namespace npovm::lab {

std::vector<double> Grid::values() const {
  std::vector<double> v(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    v[static_cast<std::size_t>(i)] =
        count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return v;
}

void SweepConfig::validate() const {
  if (grid.count < 2) throw ConfigError("grid.count must be at least 2");
  if (!(grid.start < grid.stop)) throw ConfigError("grid.start must be below grid.stop");
  const std::string expected = preset_parameter_name(encoding_id);  // throws UnknownNameError
  if (!estimated_param.empty() && estimated_param != expected) {
    throw ConfigError("encoding '" + encoding_id + "' estimates '" + expected + "', not '" + estimated_param + "'");
  }
  if (classes.empty()) throw ConfigError("at least one strategy class is required");
  if (optimizer.restarts < 1) throw ConfigError("optimizer.restarts must be at least 1");
  if (optimizer.max_iters < 1) throw ConfigError("optimizer.max_iters must be at least 1");
  if (optimizer.aux_dim < 1) throw ConfigError("optimizer.aux_dim must be at least 1");
  if (!(optimizer.fd_step > 0.0)) throw ConfigError("optimizer.fd_step must be positive");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (output_path.empty()) throw ConfigError("output path is empty");
}

SweepConfig parse_sweep_config(const std::string& text) {
  const TomlDocument doc = parse_toml(text);
  static const std::set<std::string> known = {
      "encoding", "estimated_param", "classes", "output", "jobs",
      "grid.start", "grid.stop", "grid.count",
      "optimizer.restarts", "optimizer.max_iters", "optimizer.simplex_tol", "optimizer.seed",
      "optimizer.warm_start_sld", "optimizer.aux_dim", "optimizer.fd_step"};

  SweepConfig cfg;
  auto get = [&](const std::string& key) -> const TomlValue* {
    auto it = doc.find(key);
    return it == doc.end() ? nullptr : &it->second;
  };

  try {
    for (const auto& [key, value] : doc) {
      if (key.rfind("fixed.", 0) == 0) {
        cfg.fixed_params[key.substr(6)] = value.as_number();
      } else if (!known.count(key)) {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
    if (auto* v = get("encoding")) {
      cfg.encoding_id = v->as_string();
    } else {
      throw ConfigError("missing required key 'encoding'");
    }
    if (auto* v = get("estimated_param")) cfg.estimated_param = v->as_string();
    if (auto* v = get("output")) cfg.output_path = v->as_string();
    if (auto* v = get("jobs")) cfg.jobs = static_cast<int>(v->as_integer());
    if (auto* v = get("classes")) {
      cfg.classes.clear();
      for (const auto& c : v->as_array()) cfg.classes.push_back(parse_strategy_class(c.as_string()));
    }
    if (auto* v = get("grid.start")) cfg.grid.start = v->as_number();
    if (auto* v = get("grid.stop")) cfg.grid.stop = v->as_number();
    if (auto* v = get("grid.count")) cfg.grid.count = static_cast<int>(v->as_integer());
    if (auto* v = get("optimizer.restarts")) cfg.optimizer.restarts = static_cast<int>(v->as_integer());
    if (auto* v = get("optimizer.max_iters")) cfg.optimizer.max_iters = static_cast<int>(v->as_integer());
    if (auto* v = get("optimizer.simplex_tol")) cfg.optimizer.simplex_tol = v->as_number();
    if (auto* v = get("optimizer.seed")) cfg.optimizer.seed = static_cast<std::uint64_t>(v->as_integer());
    if (auto* v = get("optimizer.warm_start_sld")) cfg.optimizer.warm_start_sld = v->as_bool();
    if (auto* v = get("optimizer.aux_dim")) cfg.optimizer.aux_dim = static_cast<std::size_t>(v->as_integer());
    if (auto* v = get("optimizer.fd_step")) cfg.optimizer.fd_step = v->as_number();
  } catch (const UnknownNameError& e) {
    throw ConfigError(e.what());
  }
  if (cfg.estimated_param.empty() && !cfg.encoding_id.empty()) {
    try {
      cfg.estimated_param = preset_parameter_name(cfg.encoding_id);
    } catch (const UnknownNameError&) {
      // reported by validate()
    }
  }
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_config(ss.str());
}

}  // namespace npovm::lab
