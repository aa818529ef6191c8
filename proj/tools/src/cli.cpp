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
#include "npovm_cli/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "npovm/condition.hpp"
#include "npovm/encodings.hpp"
#include "npovm/errors.hpp"
#include "npovm/fisher.hpp"
#include "npovm/lab/reproduce.hpp"
#include "npovm/lab/sweep.hpp"
#include "npovm/strategies.hpp"

namespace npovm::cli {
namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects name=value, got '" + item + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() - eq - 1) throw ConfigError("--param value is not a number: '" + item + "'");
    out[item.substr(0, eq)] = v;
  }
  return out;
}

ComplexVector named_state(const std::string& name) {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  ComplexVector v(2);
  if (name == "zero") {
    v << 1.0, 0.0;
  } else if (name == "one") {
    v << 0.0, 1.0;
  } else if (name == "plus") {
    v << s, s;
  } else if (name == "minus") {
    v << s, -s;
  } else if (name == "plus_i") {
    v << s, s * i;
  } else if (name == "minus_i") {
    v << s, -s * i;
  } else {
    throw UnknownNameError("unknown state '" + name + "' (zero, one, plus, minus, plus_i, minus_i)");
  }
  return v;
}

void print_matrix(std::ostream& out, const ComplexMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << (c ? " " : "  ") << num(m(r, c).real()) << ',' << num(m(r, c).imag());
    }
    out << '\n';
  }
}

std::vector<StrategyClass> parse_classes(const std::string& s) {
  if (s == "both") return {StrategyClass::positive, StrategyClass::general};
  return {parse_strategy_class(s)};
}

struct Options {
  std::string encoding;
  double theta = 0.0;
  std::string state = "plus";
  std::vector<std::string> params;
  std::string cls = "both";
  std::uint64_t seed = 2024;
  int restarts = 20;
  int jobs = 1;
  std::size_t aux_dim = 2;
  std::string config;
  std::string manifest;
  std::string out;
  std::string figure;
  std::string u, u1, u2, um;
  double tol = 1e-8;
  std::string phase = "global";
  std::string slot = "second";
};

int run_qfi(const Options& o, std::ostream& out) {
  const EncodingFamily enc = make_preset(o.encoding, parse_params(o.params));
  const ComplexVector psi = named_state(o.state);
  const Embedding embed{HilbertSpec{{enc.probe_dim()}}, 0};
  const ComplexMatrix rho0 = projector(psi);
  const double h = kDefaultFdStep;
  const ComplexMatrix rho = apply_channel(rho0, enc, o.theta, embed);
  const ComplexMatrix drho =
      (apply_channel(rho0, enc, o.theta + h, embed) - apply_channel(rho0, enc, o.theta - h, embed)) / (2.0 * h);

  out << "encoding = " << o.encoding << "\n";
  out << "theta = " << num(o.theta) << "\n";
  out << "state = " << o.state << "\n";
  if (enc.kind() == EncodingKind::unitary) {
    const ComplexMatrix hdot = enc.generator_derivative(o.theta);
    out << "qfi_pure_unitary = " << num(qfi_pure_unitary(psi, hdot)) << "\n";
    out << "qfi_sld = " << num(qfi_sld(rho, drho)) << "\n";
    out << "max_qfi_unitary = " << num(max_qfi_unitary(hdot).value) << "\n";
  } else {
    out << "qfi_sld = " << num(qfi_sld(rho, drho)) << "\n";
  }
  return kOk;
}

int run_optimize(const Options& o, std::ostream& out) {
  const EncodingFamily enc = make_preset(o.encoding, parse_params(o.params));
  OptimizerConfig cfg;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.aux_dim = o.aux_dim;
  if (cfg.restarts < 1) throw ConfigError("--restarts must be at least 1");
  for (auto cls : parse_classes(o.cls)) {
    const FisherReport rep = optimize_fisher(cls, enc, o.theta, cfg);
    out << "class = " << to_string(rep.cls) << "\n";
    out << "fi = " << num(rep.fi) << "\n";
    out << "delta_theta = " << num(rep.delta_theta) << "\n";
    out << "converged = " << (rep.converged ? "true" : "false") << "\n";
    out << "restarts_used = " << rep.restarts_used << "\n";
    out << "params =";
    for (double p : rep.params_at_opt) out << ' ' << num(p);
    out << "\n";
  }
  return kOk;
}

int run_sweep_cmd(const Options& o, bool seed_set, bool restarts_set, bool jobs_set, std::ostream& out,
                  std::ostream& err) {
  if (o.config.empty() == o.manifest.empty()) throw ConfigError("sweep needs exactly one of --config or --manifest");
  lab::SweepConfig cfg =
      o.config.empty() ? lab::load_manifest(o.manifest).config : lab::load_sweep_config(o.config);
  if (seed_set) cfg.optimizer.seed = o.seed;
  if (restarts_set) cfg.optimizer.restarts = o.restarts;
  if (jobs_set) cfg.jobs = o.jobs;
  if (!o.out.empty()) cfg.output_path = o.out;
  const lab::SweepResult res = lab::run_sweep_to_files(cfg);
  for (const auto& w : res.warnings) err << "warning: " << w << "\n";
  out << "wrote " << res.rows.size() << " rows to " << cfg.output_path << "\n";
  out << "manifest " << lab::manifest_path_for(cfg.output_path) << "\n";
  out << "warnings: " << res.warnings.size() << "\n";
  return kOk;
}

int run_reproduce(const Options& o, std::ostream& out) {
  lab::ReproduceOptions ro;
  ro.seed = o.seed;
  ro.restarts = o.restarts;
  ro.jobs = o.jobs;
  if (!o.out.empty()) ro.out_dir = o.out;
  const lab::ReproduceReport rep = lab::reproduce(lab::parse_figure(o.figure), ro);
  for (const auto& run : rep.runs) out << "wrote " << run.config.output_path << "\n";
  out << rep.summary;
  return kOk;
}

int run_check(const Options& o, std::ostream& out) {
  const ComplexMatrix u = load_matrix(o.u);
  const ComplexMatrix v = load_matrix(o.u2);
  ConditionOptions opts;
  opts.tol = o.tol;
  if (o.phase == "exact") {
    opts.phase = PhaseConvention::exact;
  } else if (o.phase == "global") {
    opts.phase = PhaseConvention::up_to_global_phase;
  } else {
    throw UnknownNameError("unknown phase convention '" + o.phase + "' (exact or global)");
  }
  if (o.slot == "first") {
    opts.slot = EncodedSlot::first;
  } else if (o.slot == "second") {
    opts.slot = EncodedSlot::second;
  } else {
    throw UnknownNameError("unknown slot '" + o.slot + "' (first or second)");
  }
  const ConditionReport rep = check_sufficient_condition(u, v, opts);
  out << "satisfied = " << (rep.satisfied ? "true" : "false") << "\n";
  out << "witness_i = " << (rep.witness_i ? std::to_string(*rep.witness_i) : std::string("none")) << "\n";
  out << "phase_convention = " << (rep.phase_convention == PhaseConvention::exact ? "exact" : "up_to_global_phase")
      << "\n";
  out << "residuals (row i, column k):\n";
  for (const auto& row : rep.residuals) {
    out << " ";
    for (double r : row) out << ' ' << num(r);
    out << "\n";
  }
  if (rep.witness_i && !o.u1.empty() && !o.um.empty()) {
    const ComplexMatrix um_prime = derive_um_prime(load_matrix(o.um), u, load_matrix(o.u1), v, *rep.witness_i, opts.slot);
    out << "um_prime:\n";
    print_matrix(out, um_prime);
  }
  return kOk;
}

}  // namespace

ComplexMatrix parse_matrix_text(const std::string& text) {
  std::vector<std::vector<Complex>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<Complex> row;
    while (ls >> tok) {
      const auto comma = tok.find(',');
      try {
        std::size_t used = 0;
        const std::string re_s = tok.substr(0, comma);
        const double re = std::stod(re_s, &used);
        if (used != re_s.size()) throw std::invalid_argument(tok);
        double im = 0.0;
        if (comma != std::string::npos) {
          const std::string im_s = tok.substr(comma + 1);
          im = std::stod(im_s, &used);
          if (used != im_s.size()) throw std::invalid_argument(tok);
        }
        row.emplace_back(re, im);
      } catch (const std::exception&) {
        throw ConfigError("bad matrix entry '" + tok + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("matrix text is empty");
  const std::size_t n = rows.front().size();
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) throw DimensionError("matrix rows have different lengths");
    for (std::size_t c = 0; c < n; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

ComplexMatrix load_matrix(const std::string& name) {
  if (name == "identity2") return identity(2);
  if (name == "identity4") return identity(4);
  if (name == "cnot") {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
  }
  if (name == "hadamard") {
    ComplexMatrix m(2, 2);
    m << 1.0, 1.0, 1.0, -1.0;
    return m / std::sqrt(2.0);
  }
  if (name == "xx_um") return xx_example_measurement();
  std::ifstream in(name);
  if (!in) throw UnknownNameError("'" + name + "' is neither a matrix preset nor a readable file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix_text(ss.str());
}

int cli_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"npovm-lab: precision of positive versus general measurement strategies"};
  app.set_version_flag("--version", NPOVM_VERSION);
  app.require_subcommand(1);
  Options o;

  auto add_encoding = [&](CLI::App* cmd) {
    cmd->add_option("--encoding", o.encoding, "Encoding preset id")->required();
    cmd->add_option("--theta", o.theta, "Estimated parameter value")->required();
    cmd->add_option("--param", o.params, "Held parameter, name=value (repeatable)");
  };

  auto* qfi = app.add_subcommand("qfi", "Quantum Fisher information of a single-probe state");
  add_encoding(qfi);
  qfi->add_option("--state", o.state, "zero, one, plus, minus, plus_i, minus_i")->capture_default_str();

  auto* opt = app.add_subcommand("optimize", "Optimize one strategy class at a single parameter value");
  add_encoding(opt);
  opt->add_option("--class", o.cls, "positive, general or both")->capture_default_str();
  opt->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  opt->add_option("--restarts", o.restarts, "Multi-start restarts")->capture_default_str();
  opt->add_option("--aux-dim", o.aux_dim, "Auxiliary dimension")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a TOML config or a manifest");
  sweep->add_option("--config", o.config, "Sweep config (TOML)")->check(CLI::ExistingFile);
  sweep->add_option("--manifest", o.manifest, "Re-run the sweep recorded in a manifest")->check(CLI::ExistingFile);
  auto* sweep_seed = sweep->add_option("--seed", o.seed, "Override optimizer seed");
  auto* sweep_restarts = sweep->add_option("--restarts", o.restarts, "Override restarts");
  auto* sweep_jobs = sweep->add_option("--jobs", o.jobs, "Worker threads");
  sweep->add_option("--out", o.out, "Override output CSV path");

  auto* repro = app.add_subcommand("reproduce", "Run the sweeps behind fig2 or fig3");
  repro->add_option("figure", o.figure, "fig2 or fig3")->required();
  repro->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  repro->add_option("--restarts", o.restarts, "Multi-start restarts")->capture_default_str();
  repro->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
  repro->add_option("--out", o.out, "Output directory (default: results)");

  auto* check = app.add_subcommand("check-condition", "Check the product-input sufficient condition");
  check->add_option("--u", o.u, "Two-qubit preparation U (preset or file)")->required();
  check->add_option("--u2", o.u2, "Local unitary on the encoded slot (preset or file)")->required();
  check->add_option("--u1", o.u1, "Local unitary on the other slot, for deriving U_M'");
  check->add_option("--um", o.um, "General-strategy measurement U_M, for deriving U_M'");
  check->add_option("--tol", o.tol, "Residual tolerance")->capture_default_str();
  check->add_option("--phase", o.phase, "exact or global")->capture_default_str();
  check->add_option("--slot", o.slot, "Encoded slot: first or second")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*qfi) return run_qfi(o, out);
    if (*opt) return run_optimize(o, out);
    if (*sweep) {
      return run_sweep_cmd(o, sweep_seed->count() > 0, sweep_restarts->count() > 0, sweep_jobs->count() > 0, out,
                           err);
    }
    if (*repro) return run_reproduce(o, out);
    if (*check) return run_check(o, out);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const InvariantError& e) {
    err << "numerical invariant violated: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

int cli_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("npovm-lab");
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_entry(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace npovm::cli
