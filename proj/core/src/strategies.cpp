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
#include "npovm/strategies.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <string>

#include "npovm/errors.hpp"
#include "npovm/nelder_mead.hpp"

namespace npovm {

std::string_view to_string(StrategyClass c) {
  return c == StrategyClass::positive ? "positive" : "general";
}

StrategyClass parse_strategy_class(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "positive" || lower == "povm") return StrategyClass::positive;
  if (lower == "general" || lower == "npovm") return StrategyClass::general;
  throw UnknownNameError("unknown strategy class '" + std::string(s) + "'");
}

const std::vector<ComplexMatrix>& gell_mann_generators(std::size_t dim) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<ComplexMatrix>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(dim);
  if (it != cache.end()) return it->second;
  if (dim < 2) throw DimensionError("Gell-Mann basis needs dim >= 2");

  const auto n = static_cast<Eigen::Index>(dim);
  const Complex i(0.0, 1.0);
  std::vector<ComplexMatrix> gens;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      ComplexMatrix anti = ComplexMatrix::Zero(n, n);
      anti(j, k) = -i;
      anti(k, j) = i;
      gens.push_back(std::move(sym));
      gens.push_back(std::move(anti));
    }
  }
  for (Eigen::Index l = 1; l < n; ++l) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    const double norm = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (Eigen::Index m = 0; m < l; ++m) d(m, m) = norm;
    d(l, l) = -norm * static_cast<double>(l);
    gens.push_back(std::move(d));
  }
  return cache.emplace(dim, std::move(gens)).first->second;
}

ComplexMatrix unitary_from_params(std::span<const double> angles, std::size_t dim) {
  const auto& gens = gell_mann_generators(dim);
  if (angles.size() != gens.size()) {
    throw DimensionError("unitary_from_params: expected " + std::to_string(gens.size()) + " angles, got " +
                         std::to_string(angles.size()));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < angles.size(); ++j) h += angles[j] * gens[j];
  return expm_unitary(h, 1.0);
}

std::size_t MeasurementStrategy::preparation_param_count(StrategyClass cls, std::size_t aux_dim) {
  const std::size_t d = 2 * aux_dim;
  return cls == StrategyClass::positive ? 3 + aux_dim * aux_dim - 1 : d * d - 1;
}

std::size_t MeasurementStrategy::measurement_param_count(std::size_t aux_dim) {
  const std::size_t d = 2 * aux_dim;
  return d * d - 1;
}

std::size_t MeasurementStrategy::param_count(StrategyClass cls, std::size_t aux_dim) {
  return preparation_param_count(cls, aux_dim) + measurement_param_count(aux_dim);
}

MeasurementStrategy MeasurementStrategy::zeros(StrategyClass cls, std::size_t aux_dim) {
  MeasurementStrategy s;
  s.cls = cls;
  s.aux_dim = aux_dim;
  s.params.assign(param_count(cls, aux_dim), 0.0);
  return s;
}

StrategyCircuit StrategyCircuit::positive(const ComplexMatrix& u1, const ComplexMatrix& u2,
                                          const ComplexMatrix& um_prime, std::size_t probe_slot) {
  StrategyCircuit c;
  c.cls = StrategyClass::positive;
  c.aux_dim = static_cast<std::size_t>(u2.rows());
  c.probe_slot = probe_slot;
  c.probe_local = u1;
  c.aux_local = u2;
  c.preparation = kron(u1, u2);
  c.measurement = um_prime;
  return c;
}

StrategyCircuit StrategyCircuit::general(const ComplexMatrix& u, const ComplexMatrix& um, std::size_t aux_dim,
                                         std::size_t probe_slot) {
  StrategyCircuit c;
  c.cls = StrategyClass::general;
  c.aux_dim = aux_dim;
  c.probe_slot = probe_slot;
  c.preparation = u;
  c.measurement = um;
  return c;
}

Embedding StrategyCircuit::embedding() const {
  if (probe_slot > 1) throw DimensionError("probe slot must be 0 or 1");
  Embedding e;
  e.space.dims = probe_slot == 0 ? std::vector<std::size_t>{2, aux_dim} : std::vector<std::size_t>{aux_dim, 2};
  e.probe_slot = probe_slot;
  return e;
}

namespace {

void check_params(const MeasurementStrategy& s) {
  if (s.params.size() != MeasurementStrategy::param_count(s.cls, s.aux_dim)) {
    throw DimensionError("strategy has " + std::to_string(s.params.size()) + " parameters, expected " +
                         std::to_string(MeasurementStrategy::param_count(s.cls, s.aux_dim)));
  }
}

ComplexMatrix measurement_unitary(std::span<const double> angles, std::size_t d, const ComplexMatrix& frame) {
  ComplexMatrix um = unitary_from_params(angles, d);
  if (frame.size() != 0) um = um * frame;
  return um;
}

// Kraus operators lifted to the register at theta - step, theta, theta + step.
class ChannelStencil {
 public:
  ChannelStencil(const EncodingFamily& enc, double theta, double step, const Embedding& embed) : step_(step) {
    if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
    if (embed.space.dims[embed.probe_slot] != enc.probe_dim()) {
      throw DimensionError("encoding probe dimension does not match the register");
    }
    center_ = lift(enc, theta, embed);
    plus_ = lift(enc, theta + step, embed);
    minus_ = lift(enc, theta - step, embed);
  }

  ComplexMatrix state(const ComplexVector& psi, int which) const {
    const auto& ks = pick(which);
    const auto n = psi.size();
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    for (const auto& k : ks) {
      const ComplexVector phi = k * psi;
      rho.noalias() += phi * phi.adjoint();
    }
    return rho;
  }

  EncodedState encode(const ComplexVector& psi) const {
    return {state(psi, 0), (state(psi, 1) - state(psi, -1)) / (2.0 * step_)};
  }

  std::vector<double> probs(const ComplexVector& psi, const ComplexMatrix& um, int which) const {
    const auto n = static_cast<std::size_t>(psi.size());
    std::vector<double> p(n, 0.0);
    for (const auto& k : pick(which)) {
      const ComplexVector out = um * (k * psi);
      for (std::size_t i = 0; i < n; ++i) p[i] += std::norm(out(static_cast<Eigen::Index>(i)));
    }
    return p;
  }

  double fisher(const ComplexVector& psi, const ComplexMatrix& um) const {
    OutcomeDistribution d;
    d.probs = probs(psi, um, 0);
    const auto p = probs(psi, um, 1);
    const auto m = probs(psi, um, -1);
    d.derivs.resize(d.probs.size());
    for (std::size_t i = 0; i < d.probs.size(); ++i) d.derivs[i] = (p[i] - m[i]) / (2.0 * step_);
    return classical_fisher(d);
  }

 private:
  static std::vector<ComplexMatrix> lift(const EncodingFamily& enc, double theta, const Embedding& embed) {
    const auto ks = kraus_operators(enc, theta);
    return embed_kraus(ks, embed);
  }

  const std::vector<ComplexMatrix>& pick(int which) const {
    return which == 0 ? center_ : (which > 0 ? plus_ : minus_);
  }

  double step_;
  std::vector<ComplexMatrix> center_, plus_, minus_;
};

ComplexMatrix sld_rotation(const EncodedState& st) {
  const auto l = sld(st.rho, st.drho);
  return eig_hermitian(l.L, 1e-6).vectors.adjoint();
}

Embedding default_embedding(std::size_t aux_dim) {
  Embedding e;
  e.space.dims = {2, aux_dim};
  e.probe_slot = 0;
  return e;
}

ComplexVector input_vector(StrategyClass cls, std::size_t aux_dim, std::span<const double> prep) {
  if (cls == StrategyClass::positive) {
    const ComplexMatrix u1 = unitary_from_params(prep.subspan(0, 3), 2);
    const ComplexMatrix u2 = unitary_from_params(prep.subspan(3), aux_dim);
    return kron(u1.col(0), u2.col(0));
  }
  return unitary_from_params(prep, 2 * aux_dim).col(0);
}

}  // namespace

StrategyCircuit synthesize(const MeasurementStrategy& s) {
  check_params(s);
  const std::size_t d = s.joint_dim();
  const std::size_t np = MeasurementStrategy::preparation_param_count(s.cls, s.aux_dim);
  std::span<const double> all(s.params);
  const ComplexMatrix um = measurement_unitary(all.subspan(np), d, s.measurement_frame);
  if (s.cls == StrategyClass::positive) {
    return StrategyCircuit::positive(unitary_from_params(all.subspan(0, 3), 2),
                                     unitary_from_params(all.subspan(3, np - 3), s.aux_dim), um, s.probe_slot);
  }
  return StrategyCircuit::general(unitary_from_params(all.subspan(0, np), d), um, s.aux_dim, s.probe_slot);
}

ComplexMatrix prepare_input(const StrategyCircuit& c) {
  return projector(ComplexVector(c.preparation.col(0)));
}

ComplexMatrix prepare_input(const MeasurementStrategy& s) { return prepare_input(synthesize(s)); }

std::vector<double> outcome_distribution(const StrategyCircuit& c, const EncodingFamily& enc, double theta) {
  const Embedding embed = c.embedding();
  if (static_cast<std::size_t>(c.preparation.rows()) != embed.space.total_dim() ||
      c.measurement.rows() != c.preparation.rows()) {
    throw DimensionError("strategy unitaries do not match the probe (x) auxiliary register");
  }
  const ComplexMatrix rho = apply_channel(prepare_input(c), enc, theta, embed);
  const ComplexMatrix rotated = c.measurement * rho * c.measurement.adjoint();
  std::vector<double> p(static_cast<std::size_t>(rotated.rows()));
  for (Eigen::Index i = 0; i < rotated.rows(); ++i) p[static_cast<std::size_t>(i)] = rotated(i, i).real();
  return p;
}

std::vector<double> outcome_distribution(const MeasurementStrategy& s, const EncodingFamily& enc, double theta) {
  return outcome_distribution(synthesize(s), enc, theta);
}

double strategy_fisher(const StrategyCircuit& c, const EncodingFamily& enc, double theta, double step) {
  const ChannelStencil stencil(enc, theta, step, c.embedding());
  return stencil.fisher(c.preparation.col(0), c.measurement);
}

double strategy_fisher(const MeasurementStrategy& s, const EncodingFamily& enc, double theta, double step) {
  return strategy_fisher(synthesize(s), enc, theta, step);
}

EncodedState encode_joint(const ComplexMatrix& input_state, const EncodingFamily& enc, double theta,
                          const Embedding& embed, double step) {
  if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
  const ComplexMatrix center = apply_channel(input_state, enc, theta, embed);
  const ComplexMatrix plus = apply_channel(input_state, enc, theta + step, embed);
  const ComplexMatrix minus = apply_channel(input_state, enc, theta - step, embed);
  return {center, (plus - minus) / (2.0 * step)};
}

ComplexMatrix sld_warm_start(const EncodingFamily& enc, const ComplexMatrix& input_state, double theta,
                             double step, std::size_t probe_slot) {
  if (input_state.rows() % 2 != 0) throw DimensionError("sld_warm_start: register must hold a qubit probe");
  Embedding embed;
  const auto aux = static_cast<std::size_t>(input_state.rows() / 2);
  embed.space.dims = probe_slot == 0 ? std::vector<std::size_t>{2, aux} : std::vector<std::size_t>{aux, 2};
  embed.probe_slot = probe_slot;
  return sld_rotation(encode_joint(input_state, enc, theta, embed, step));
}

MeasurementStrategy FisherReport::strategy() const {
  MeasurementStrategy s;
  s.cls = cls;
  s.aux_dim = aux_dim;
  s.params = params_at_opt;
  s.measurement_frame = measurement_frame;
  return s;
}

double delta_from_fisher(double fi) {
  return fi > 0.0 ? 1.0 / std::sqrt(fi) : std::numeric_limits<double>::infinity();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ (index + 0x632be59bd9b4e019ULL));
}

FisherReport optimize_fisher(StrategyClass cls, const EncodingFamily& enc, double theta, const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw PreconditionError("optimizer needs at least one restart");
  if (enc.probe_dim() != 2) throw DimensionError("strategies are defined for a qubit probe");

  const std::size_t aux = cfg.aux_dim;
  const std::size_t d = 2 * aux;
  const std::size_t np = MeasurementStrategy::preparation_param_count(cls, aux);
  const std::size_t nm = MeasurementStrategy::measurement_param_count(aux);
  const ChannelStencil stencil(enc, theta, cfg.fd_step, default_embedding(aux));

  FisherReport best;
  best.cls = cls;
  best.aux_dim = aux;
  best.fi = -1.0;

  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<double> prep(np);
    for (auto& a : prep) a = angle(rng);
    std::vector<double> meas(nm, 0.0);
    ComplexMatrix frame;

    if (cfg.warm_start_sld) {
      auto warm_objective = [&](std::span<const double> x) {
        const ComplexVector psi = input_vector(cls, aux, x);
        const ComplexMatrix um = sld_rotation(stencil.encode(psi));
        return -stencil.fisher(psi, um);
      };
      SimplexOptions opts;
      opts.max_iters = cfg.max_iters;
      opts.tol = cfg.simplex_tol;
      opts.initial_step = 0.5;
      prep = nelder_mead(warm_objective, prep, opts).x;
      frame = sld_rotation(stencil.encode(input_vector(cls, aux, prep)));
    } else {
      for (auto& a : meas) a = angle(rng);
    }

    std::vector<double> x0 = prep;
    x0.insert(x0.end(), meas.begin(), meas.end());
    auto objective = [&](std::span<const double> x) {
      const ComplexVector psi = input_vector(cls, aux, x.subspan(0, np));
      const ComplexMatrix um = measurement_unitary(x.subspan(np), d, frame);
      return -stencil.fisher(psi, um);
    };
    SimplexOptions opts;
    opts.max_iters = cfg.max_iters;
    opts.tol = cfg.simplex_tol;
    opts.initial_step = cfg.warm_start_sld ? 0.05 : 0.5;
    const auto res = nelder_mead(objective, x0, opts);

    const double fi = -res.value;
    if (fi > best.fi) {
      best.fi = fi;
      best.params_at_opt = res.x;
      best.measurement_frame = frame;
      best.converged = res.converged;
    }
    best.restarts_used = r + 1;
  }
  best.fi = std::max(best.fi, 0.0);
  best.delta_theta = delta_from_fisher(best.fi);
  return best;
}

}  // namespace npovm
