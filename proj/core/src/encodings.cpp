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
#include "npovm/encodings.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "npovm/errors.hpp"

namespace npovm {
namespace {

constexpr double kTpTol = 1e-9;
constexpr double kHdotStep = 1e-5;
constexpr double kEnvWeightFloor = 1e-15;

void check_trace_preserving(const std::vector<ComplexMatrix>& ks, std::size_t dim, const std::string& label) {
  ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& k : ks) {
    if (static_cast<std::size_t>(k.rows()) != dim || static_cast<std::size_t>(k.cols()) != dim) {
      throw DimensionError(label + ": Kraus operator has the wrong dimension");
    }
    sum += k.adjoint() * k;
  }
  if ((sum - identity(dim)).cwiseAbs().maxCoeff() > kTpTol) {
    throw InvariantError(label + ": Kraus set is not trace preserving");
  }
}

double fixed_or(const std::map<std::string, double>& fixed, const std::string& key, double fallback) {
  auto it = fixed.find(key);
  return it == fixed.end() ? fallback : it->second;
}

}  // namespace

EncodingFamily EncodingFamily::unitary(std::string label, std::size_t probe_dim, OperatorFn hamiltonian,
                                       OperatorFn hdot, ParameterDomain domain) {
  EncodingFamily e;
  e.kind_ = EncodingKind::unitary;
  e.label_ = std::move(label);
  e.probe_dim_ = probe_dim;
  e.op_ = std::move(hamiltonian);
  e.hdot_ = std::move(hdot);
  e.domain_ = domain;
  return e;
}

EncodingFamily EncodingFamily::kraus(std::string label, std::size_t probe_dim, KrausFn kraus,
                                     ParameterDomain domain) {
  EncodingFamily e;
  e.kind_ = EncodingKind::kraus;
  e.label_ = std::move(label);
  e.probe_dim_ = probe_dim;
  e.kraus_ = std::move(kraus);
  e.domain_ = domain;
  return e;
}

EncodingFamily EncodingFamily::open_global(std::string label, std::size_t probe_dim, OperatorFn global_unitary,
                                           ComplexMatrix env_state, ParameterDomain domain) {
  if (!is_density(env_state, kTpTol)) {
    throw PreconditionError(label + ": environment state is not a density matrix");
  }
  EncodingFamily e;
  e.kind_ = EncodingKind::open_global;
  e.label_ = std::move(label);
  e.probe_dim_ = probe_dim;
  e.op_ = std::move(global_unitary);
  e.env_state_ = std::move(env_state);
  e.domain_ = domain;
  return e;
}

void EncodingFamily::require_kind(EncodingKind k, const char* what) const {
  if (kind_ != k) {
    throw PreconditionError(label_ + ": " + what + " is not available for this encoding kind");
  }
}

void EncodingFamily::require_domain(double theta) const {
  if (!domain_.contains(theta)) {
    throw DomainError(label_ + ": parameter " + std::to_string(theta) + " outside [" +
                      std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) + "]");
  }
}

ComplexMatrix EncodingFamily::hamiltonian(double theta) const {
  require_kind(EncodingKind::unitary, "hamiltonian");
  require_domain(theta);
  return op_(theta);
}

ComplexMatrix EncodingFamily::generator_derivative(double theta) const {
  require_kind(EncodingKind::unitary, "generator_derivative");
  require_domain(theta);
  if (hdot_) return hdot_(theta);
  return (op_(theta + kHdotStep) - op_(theta - kHdotStep)) / (2.0 * kHdotStep);
}

ComplexMatrix EncodingFamily::unitary_at(double theta) const {
  return expm_unitary(hamiltonian(theta), 1.0);
}

std::vector<ComplexMatrix> EncodingFamily::kraus_set(double theta) const {
  require_kind(EncodingKind::kraus, "kraus_set");
  require_domain(theta);
  auto ks = kraus_(theta);
  check_trace_preserving(ks, probe_dim_, label_);
  return ks;
}

ComplexMatrix EncodingFamily::global_unitary(double theta) const {
  require_kind(EncodingKind::open_global, "global_unitary");
  require_domain(theta);
  ComplexMatrix x = op_(theta);
  if (static_cast<std::size_t>(x.rows()) != probe_dim_ * env_dim()) {
    throw DimensionError(label_ + ": global unitary does not act on probe (x) environment");
  }
  if (!is_unitary(x, kTpTol)) {
    throw InvariantError(label_ + ": global unitary failed the unitarity check");
  }
  return x;
}

std::vector<ComplexMatrix> kraus_operators(const EncodingFamily& enc, double theta) {
  switch (enc.kind()) {
    case EncodingKind::unitary:
      return {enc.unitary_at(theta)};
    case EncodingKind::kraus:
      return enc.kraus_set(theta);
    case EncodingKind::open_global:
      break;
  }
  const ComplexMatrix x = enc.global_unitary(theta);
  const auto ds = static_cast<Eigen::Index>(enc.probe_dim());
  const auto de = static_cast<Eigen::Index>(enc.env_dim());
  const auto env = eig_hermitian(enc.env_state(), kTpTol);
  std::vector<ComplexMatrix> out;
  for (Eigen::Index j = 0; j < de; ++j) {
    const double r = env.values(j);
    if (r <= kEnvWeightFloor) continue;
    const ComplexVector& ej = env.vectors.col(j);
    for (Eigen::Index e = 0; e < de; ++e) {
      ComplexMatrix k = ComplexMatrix::Zero(ds, ds);
      for (Eigen::Index a = 0; a < ds; ++a) {
        for (Eigen::Index b = 0; b < ds; ++b) {
          Complex acc = 0.0;
          for (Eigen::Index f = 0; f < de; ++f) acc += x(a * de + e, b * de + f) * ej(f);
          k(a, b) = std::sqrt(r) * acc;
        }
      }
      out.push_back(std::move(k));
    }
  }
  return out;
}

std::vector<ComplexMatrix> embed_kraus(std::span<const ComplexMatrix> kraus, const Embedding& embed) {
  std::vector<ComplexMatrix> out;
  out.reserve(kraus.size());
  const std::size_t slot[] = {embed.probe_slot};
  for (const auto& k : kraus) out.push_back(embed_operator(k, embed.space, slot));
  return out;
}

ComplexMatrix apply_kraus(const ComplexMatrix& rho, std::span<const ComplexMatrix> embedded_kraus) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : embedded_kraus) {
    if (k.rows() != rho.rows()) throw DimensionError("apply_kraus: dimension mismatch");
    out.noalias() += k * rho * k.adjoint();
  }
  return out;
}

ComplexMatrix apply_channel(const ComplexMatrix& rho, const EncodingFamily& enc, double theta,
                            const Embedding& embed) {
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != embed.space.total_dim()) {
    throw DimensionError("apply_channel: state does not match the embedding");
  }
  if (embed.probe_slot >= embed.space.size() || embed.space.dims[embed.probe_slot] != enc.probe_dim()) {
    throw DimensionError("apply_channel: probe slot dimension does not match the encoding");
  }
  const std::size_t probe[] = {embed.probe_slot};
  switch (enc.kind()) {
    case EncodingKind::unitary: {
      const ComplexMatrix u = embed_operator(enc.unitary_at(theta), embed.space, probe);
      return u * rho * u.adjoint();
    }
    case EncodingKind::kraus: {
      const auto ks = enc.kraus_set(theta);
      return apply_kraus(rho, embed_kraus(ks, embed));
    }
    case EncodingKind::open_global:
      break;
  }
  HilbertSpec extended = embed.space;
  extended.dims.push_back(enc.env_dim());
  const std::size_t env_slot = extended.size() - 1;
  const std::size_t acted[] = {embed.probe_slot, env_slot};
  const ComplexMatrix x = embed_operator(enc.global_unitary(theta), extended, acted);
  const ComplexMatrix joint = x * kron(rho, enc.env_state()) * x.adjoint();
  std::vector<std::size_t> keep(embed.space.size());
  for (std::size_t s = 0; s < keep.size(); ++s) keep[s] = s;
  return partial_trace(joint, extended, keep);
}

std::vector<ComplexMatrix> amplitude_damping_kraus(double k_a) {
  if (!(k_a >= 0.0 && k_a <= 1.0)) throw DomainError("amplitude damping strength must lie in [0, 1]");
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2), k1 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = std::sqrt(1.0 - k_a);
  k0(1, 1) = 1.0;
  k1(1, 0) = std::sqrt(k_a);
  return {k0, k1};
}

std::vector<ComplexMatrix> dephasing_kraus(double k_d) {
  if (!(k_d >= 0.0 && k_d <= 1.0)) throw DomainError("dephasing strength must lie in [0, 1]");
  ComplexMatrix k0 = std::sqrt(1.0 - k_d) * identity(2);
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2), k2 = ComplexMatrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(k_d);
  k2(1, 0) = std::sqrt(k_d);
  return {k0, k1, k2};
}

EncodingFamily amplitude_damping() {
  return EncodingFamily::kraus("amp_damp", 2, amplitude_damping_kraus, {0.0, 1.0});
}

EncodingFamily dephasing() {
  return EncodingFamily::kraus("dephasing", 2, dephasing_kraus, {0.0, 1.0});
}

ComplexMatrix thermal_like_env(double k) {
  if (!(std::abs(k) <= 1.0)) throw DomainError("environment parameter k must satisfy |k| <= 1");
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 0.5 * (1.0 + k);
  rho(1, 1) = 0.5 * (1.0 - k);
  return rho;
}

EncodingFamily xx_encoding(const ComplexMatrix& env_state) {
  const ComplexMatrix xx = kron(pauli(1), pauli(1));
  return EncodingFamily::open_global(
      "xx", 2, [xx](double k_x) { return expm_unitary(xx, k_x); }, env_state);
}

ComplexMatrix xy_hamiltonian(double h, double J, double gamma) {
  const ComplexMatrix& id = pauli(0);
  return h * (kron(pauli(3), id) + kron(id, pauli(3))) +
         (0.5 * J) * ((1.0 + gamma) * kron(pauli(1), pauli(1)) + (1.0 - gamma) * kron(pauli(2), pauli(2)));
}

EncodingFamily xy_encoding(const XyModel& model, XyParameter estimated) {
  std::string label = "xy_";
  switch (estimated) {
    case XyParameter::h: label += "h"; break;
    case XyParameter::J: label += "J"; break;
    case XyParameter::gamma: label += "gamma"; break;
  }
  auto x = [model, estimated](double theta) {
    XyModel m = model;
    switch (estimated) {
      case XyParameter::h: m.h = theta; break;
      case XyParameter::J: m.J = theta; break;
      case XyParameter::gamma: m.gamma = theta; break;
    }
    return expm_unitary(xy_hamiltonian(m.h, m.J, m.gamma), m.t_over_hbar);
  };
  return EncodingFamily::open_global(label, 2, x, thermal_like_env(model.k));
}

EncodingFamily phase_encoding() {
  return EncodingFamily::unitary(
      "phase", 2, [](double theta) -> ComplexMatrix { return theta * pauli(3); },
      [](double) -> ComplexMatrix { return pauli(3); });
}

EncodingFamily linear_unitary_encoding(const ComplexMatrix& generator, std::string label) {
  if (!is_hermitian(generator)) throw PreconditionError("linear_unitary_encoding: generator is not Hermitian");
  return EncodingFamily::unitary(
      std::move(label), static_cast<std::size_t>(generator.rows()),
      [generator](double theta) -> ComplexMatrix { return theta * generator; },
      [generator](double) -> ComplexMatrix { return generator; });
}

EncodingFamily identity_encoding(std::size_t probe_dim) {
  const auto n = static_cast<Eigen::Index>(probe_dim);
  return EncodingFamily::unitary(
      "identity", probe_dim, [n](double) -> ComplexMatrix { return ComplexMatrix::Zero(n, n); },
      [n](double) -> ComplexMatrix { return ComplexMatrix::Zero(n, n); });
}

std::vector<std::string> preset_ids() {
  return {"amp_damp", "dephasing", "xx", "xy_h", "xy_J", "xy_gamma", "phase", "identity"};
}

std::string preset_parameter_name(std::string_view id) {
  if (id == "amp_damp") return "k_a";
  if (id == "dephasing") return "k_d";
  if (id == "xx") return "k_x";
  if (id == "xy_h") return "h";
  if (id == "xy_J") return "J";
  if (id == "xy_gamma") return "gamma";
  if (id == "phase" || id == "identity") return "theta";
  throw UnknownNameError("unknown encoding id '" + std::string(id) + "'");
}

EncodingFamily make_preset(std::string_view id, const std::map<std::string, double>& fixed) {
  if (id == "amp_damp") return amplitude_damping();
  if (id == "dephasing") return dephasing();
  if (id == "xx") return xx_encoding(thermal_like_env(fixed_or(fixed, "k", 1.0)));
  if (id == "phase") return phase_encoding();
  if (id == "identity") return identity_encoding(2);
  XyModel m;
  m.h = fixed_or(fixed, "h", 1.0);
  m.J = fixed_or(fixed, "J", 1.0);
  m.gamma = fixed_or(fixed, "gamma", 1.0);
  m.t_over_hbar = fixed_or(fixed, "t_over_hbar", 1.0);
  m.k = fixed_or(fixed, "k", 0.0);
  if (id == "xy_h") return xy_encoding(m, XyParameter::h);
  if (id == "xy_J") return xy_encoding(m, XyParameter::J);
  if (id == "xy_gamma") return xy_encoding(m, XyParameter::gamma);
  throw UnknownNameError("unknown encoding id '" + std::string(id) + "'");
}

ComplexMatrix PauliDecomposition::reconstruct() const {
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) out += coeffs[i][j] * kron(pauli(i), pauli(j));
  }
  return out;
}

PauliDecomposition pauli_decompose(const ComplexMatrix& u4) {
  if (u4.rows() != 4 || u4.cols() != 4) throw DimensionError("pauli_decompose expects a 4x4 matrix");
  PauliDecomposition d;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      d.coeffs[i][j] = (kron(pauli(i), pauli(j)).adjoint() * u4).trace() / 4.0;
    }
  }
  return d;
}

}  // namespace npovm
