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
#include "npovm/lab/reproduce.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>

#include "npovm/errors.hpp"

namespace npovm::lab {
namespace {

struct PanelSpec {
  std::string tag;
  std::string encoding;
  double start, stop;
  int count;
  std::map<std::string, double> fixed;
};

const std::vector<double> kEnvironmentValues = {0.0, 0.2, 0.4};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

SweepConfig make_config(const PanelSpec& p, const std::string& name, const ReproduceOptions& opts) {
  SweepConfig c;
  c.encoding_id = p.encoding;
  c.estimated_param = preset_parameter_name(p.encoding);
  c.grid = {p.start, p.stop, p.count};
  c.fixed_params = p.fixed;
  c.optimizer.restarts = opts.restarts;
  c.optimizer.seed = opts.seed;
  c.jobs = opts.jobs;
  c.output_path = (std::filesystem::path(opts.out_dir) / (name + ".csv")).string();
  return c;
}

std::string run_name(const SweepConfig& c) { return std::filesystem::path(c.output_path).stem().string(); }

void fit_rows(const std::vector<SweepRow>& rows, StrategyClass cls, std::vector<double>& x, std::vector<double>& y,
              int& excluded) {
  for (const auto& r : rows) {
    if (r.cls != cls) continue;
    if (!r.converged || !std::isfinite(r.delta_theta)) {
      ++excluded;
      continue;
    }
    x.push_back(r.param_value);
    y.push_back(r.delta_theta);
  }
}

}  // namespace

Figure parse_figure(const std::string& s) {
  if (s == "fig2") return Figure::fig2;
  if (s == "fig3") return Figure::fig3;
  throw UnknownNameError("unknown figure '" + s + "' (expected fig2 or fig3)");
}

SymmetricParabola fit_symmetric_parabola(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("symmetric parabola fit needs >= 2 points");
  Eigen::MatrixXd A(static_cast<Eigen::Index>(x.size()), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    A(r, 0) = x[i] * x[i] - x[i];
    A(r, 1) = 1.0;
    b(r) = y[i];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  return {c(0), c(1)};
}

Quadratic fit_quadratic(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw PreconditionError("quadratic fit needs >= 3 points");
  Eigen::MatrixXd A(static_cast<Eigen::Index>(x.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    A(r, 0) = x[i] * x[i];
    A(r, 1) = x[i];
    A(r, 2) = 1.0;
    b(r) = y[i];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  return {c(0), c(1), c(2)};
}

double GapCurve::argmin() const {
  double best = std::numeric_limits<double>::infinity();
  double at = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (converged[i] && gaps[i] < best) {
      best = gaps[i];
      at = values[i];
    }
  }
  return at;
}

double GapCurve::max_gap() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double g : gaps) m = std::max(m, g);
  return m;
}

double GapCurve::min_gap() const {
  double m = std::numeric_limits<double>::infinity();
  for (double g : gaps) m = std::min(m, g);
  return m;
}

GapCurve gap_curve(const std::vector<SweepRow>& rows) {
  std::map<double, std::pair<const SweepRow*, const SweepRow*>> by_value;
  for (const auto& r : rows) {
    auto& slot = by_value[r.param_value];
    (r.cls == StrategyClass::positive ? slot.first : slot.second) = &r;
  }
  GapCurve curve;
  for (const auto& [v, pg] : by_value) {
    if (!pg.first || !pg.second) throw PreconditionError("gap curve needs both classes at every grid value");
    curve.values.push_back(v);
    curve.gaps.push_back(pg.first->delta_theta - pg.second->delta_theta);
    curve.converged.push_back(pg.first->converged && pg.second->converged);
  }
  return curve;
}

std::vector<SweepConfig> figure_configs(Figure fig, const ReproduceOptions& opts) {
  std::vector<SweepConfig> out;
  if (fig == Figure::fig2) {
    out.push_back(make_config({"amp_damp", "amp_damp", 0.05, 0.95, 19, {}}, "fig2_amp_damp", opts));
    out.push_back(make_config({"dephasing", "dephasing", 0.05, 0.95, 19, {}}, "fig2_dephasing", opts));
    out.push_back(make_config({"xx", "xx", 0.1, 1.5, 15, {{"k", 1.0}}}, "fig2_xx", opts));
    return out;
  }
  const std::vector<PanelSpec> panels = {
      {"h", "xy_h", 4.0, 5.0, 21, {{"J", 1.0}, {"gamma", 1.0}, {"t_over_hbar", 1.0}}},
      {"J", "xy_J", 0.5, 3.0, 26, {{"h", 1.0}, {"gamma", 1.0}, {"t_over_hbar", 1.0}}},
      {"gamma", "xy_gamma", 0.1, 3.0, 30, {{"h", 1.0}, {"J", 1.0}, {"t_over_hbar", 1.0}}},
  };
  for (const auto& panel : panels) {
    for (double k : kEnvironmentValues) {
      PanelSpec p = panel;
      p.fixed["k"] = k;
      out.push_back(make_config(p, "fig3_" + p.tag + "_k" + fmt("%g", k), opts));
    }
  }
  return out;
}

ReproduceReport reproduce(Figure fig, const ReproduceOptions& opts) {
  ReproduceReport rep;
  rep.figure = fig;
  for (const auto& cfg : figure_configs(fig, opts)) {
    FigureRun run{run_name(cfg), cfg, run_sweep_to_files(cfg)};
    rep.warnings += run.result.manifest.warnings;
    rep.runs.push_back(std::move(run));
  }

  std::string s;
  if (fig == Figure::fig2) {
    s += "[fig2 summary] fit Delta = c1 (x^2 - x) + c2\n";
    struct Ref {
      const char* enc;
      const char* n1;
      const char* n2;
      double r1, r2;
    };
    const Ref refs[] = {{"amp_damp", "A1", "A2", -1.25, 0.192}, {"dephasing", "D1", "D2", -2.51, 0.384}};
    for (const auto& run : rep.runs) {
      const GapCurve gc = gap_curve(run.result.rows);
      for (const auto& ref : refs) {
        if (run.config.encoding_id != ref.enc) continue;
        for (auto cls : {StrategyClass::positive, StrategyClass::general}) {
          std::vector<double> x, y;
          fit_rows(run.result.rows, cls, x, y, rep.excluded_rows);
          if (x.size() < 3) {
            s += run.name + " " + std::string(to_string(cls)) + ": too few converged points to fit\n";
            continue;
          }
          const SymmetricParabola p = fit_symmetric_parabola(x, y);
          const Quadratic q = fit_quadratic(x, y);
          s += run.name + " " + std::string(to_string(cls)) + ": " + ref.n1 + "=" + fmt("%.4f", p.a1) + " " + ref.n2 +
               "=" + fmt("%.4f", p.a2) + " (reference " + ref.n1 + "=" + fmt("%g", ref.r1) + " " + ref.n2 + "=" +
               fmt("%g", ref.r2) + ") free-quadratic vertex=" + fmt("%.4f", q.vertex()) +
               " leading=" + fmt("%.4f", q.c2) + " points=" + std::to_string(x.size()) + "\n";
        }
      }
      s += run.name + ": max(Delta_P - Delta_G)=" + fmt("%.3e", gc.max_gap()) + "\n";
    }
  } else {
    s += "[fig3 summary] gap = Delta_P - Delta_G\n";
    for (const auto& run : rep.runs) {
      const GapCurve gc = gap_curve(run.result.rows);
      for (bool c : gc.converged) rep.excluded_rows += c ? 0 : 1;
      s += run.name + ": min gap=" + fmt("%.4e", gc.min_gap()) + " max gap=" + fmt("%.4e", gc.max_gap());
      if (run.config.encoding_id == "xy_h") s += " argmin h=" + fmt("%.4f", gc.argmin());
      s += "\n";
    }
  }
  s += "warnings: " + std::to_string(rep.warnings) + " (non-converged rows excluded from summary: " +
       std::to_string(rep.excluded_rows) + ")\n";
  rep.summary = s;
  return rep;
}

}  // namespace npovm::lab
