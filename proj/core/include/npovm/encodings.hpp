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
#pragma once

#include <array>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "npovm/tensor.hpp"

namespace npovm {

enum class EncodingKind { unitary, kraus, open_global };

/// Closed interval of admissible parameter values.
struct ParameterDomain {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double theta) const { return theta >= lo && theta <= hi; }
};

/// A map from the estimated parameter to a channel on the probe.
///
/// Three representations are supported:
///  - unitary: theta -> H(theta), channel rho -> exp(-i H) rho exp(i H);
///  - kraus: theta -> {K_i}, checked for trace preservation on every evaluation;
///  - open_global: theta -> X on probe (x) environment together with a fixed
///    environment state; the channel traces the environment out afterwards.
class EncodingFamily {
 public:
  using OperatorFn = std::function<ComplexMatrix(double)>;
  using KrausFn = std::function<std::vector<ComplexMatrix>(double)>;

  /// `hdot` is optional; when empty, dH/dtheta is taken by central difference.
  static EncodingFamily unitary(std::string label, std::size_t probe_dim, OperatorFn hamiltonian,
                                OperatorFn hdot = {}, ParameterDomain domain = {});
  static EncodingFamily kraus(std::string label, std::size_t probe_dim, KrausFn kraus,
                              ParameterDomain domain = {});
  static EncodingFamily open_global(std::string label, std::size_t probe_dim, OperatorFn global_unitary,
                                    ComplexMatrix env_state, ParameterDomain domain = {});

  EncodingKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  std::size_t probe_dim() const { return probe_dim_; }
  const ParameterDomain& domain() const { return domain_; }

  // Unitary kind.
  ComplexMatrix hamiltonian(double theta) const;
  ComplexMatrix generator_derivative(double theta) const;
  ComplexMatrix unitary_at(double theta) const;

  // Kraus kind.
  std::vector<ComplexMatrix> kraus_set(double theta) const;

  // Open-global kind.
  ComplexMatrix global_unitary(double theta) const;
  const ComplexMatrix& env_state() const { return env_state_; }
  std::size_t env_dim() const { return static_cast<std::size_t>(env_state_.rows()); }

 private:
  EncodingFamily() = default;
  void require_kind(EncodingKind k, const char* what) const;
  void require_domain(double theta) const;

  EncodingKind kind_ = EncodingKind::unitary;
  std::string label_;
  std::size_t probe_dim_ = 2;
  ParameterDomain domain_;
  OperatorFn op_;
  OperatorFn hdot_;
  KrausFn kraus_;
  ComplexMatrix env_state_;
};

/// Where the probe sits inside a larger register.
struct Embedding {
  HilbertSpec space;
  std::size_t probe_slot = 0;
};

/// Kraus operators of the channel at theta for any kind. For open_global they
/// are the Stinespring operators sqrt(r_j) <e| X |E_j> over the spectral
/// decomposition rho_E = sum_j r_j |E_j><E_j| and a computational output basis.
std::vector<ComplexMatrix> kraus_operators(const EncodingFamily& enc, double theta);

/// Each Kraus operator lifted to the embedding's full register.
std::vector<ComplexMatrix> embed_kraus(std::span<const ComplexMatrix> kraus, const Embedding& embed);

/// sum_i K_i rho K_i^dagger for already-embedded Kraus operators.
ComplexMatrix apply_kraus(const ComplexMatrix& rho, std::span<const ComplexMatrix> embedded_kraus);

/// Direct evaluation of the channel on the probe slot (conjugation, Kraus sum,
/// or append-environment / evolve / partial-trace).
ComplexMatrix apply_channel(const ComplexMatrix& rho, const EncodingFamily& enc, double theta,
                            const Embedding& embed);

// Presets -------------------------------------------------------------------

/// K0 = |1><1| + sqrt(1-k)|0><0|, K1 = sqrt(k)|1><0|.
std::vector<ComplexMatrix> amplitude_damping_kraus(double k_a);
/// K0 = sqrt(1-k) I, K1 = sqrt(k)|0><1|, K2 = sqrt(k)|1><0|.
std::vector<ComplexMatrix> dephasing_kraus(double k_d);

EncodingFamily amplitude_damping();
EncodingFamily dephasing();

/// rho_E = ((1+k)/2)|0><0| + ((1-k)/2)|1><1|, |k| <= 1.
ComplexMatrix thermal_like_env(double k);

/// X(k_x) = exp(-i k_x sigma_x (x) sigma_x).
EncodingFamily xx_encoding(const ComplexMatrix& env_state = thermal_like_env(1.0));

enum class XyParameter { h, J, gamma };

struct XyModel {
  double h = 1.0;
  double J = 1.0;
  double gamma = 1.0;
  double t_over_hbar = 1.0;
  double k = 0.0;
};

/// H_SE = h(Z(x)I + I(x)Z) + (J/2)((1+gamma) X(x)X + (1-gamma) Y(x)Y).
ComplexMatrix xy_hamiltonian(double h, double J, double gamma);

/// Open encoding through exp(-i H_SE t/hbar); the designated field of `model`
/// is replaced by the estimated parameter, the others stay fixed.
EncodingFamily xy_encoding(const XyModel& model, XyParameter estimated);

/// H(theta) = theta * sigma_z on a qubit.
EncodingFamily phase_encoding();
/// H(theta) = theta * g for a fixed Hermitian generator g.
EncodingFamily linear_unitary_encoding(const ComplexMatrix& generator, std::string label = "linear");
/// theta-independent channel (H = 0) on a probe of the given dimension.
EncodingFamily identity_encoding(std::size_t probe_dim = 2);

/// Builds a preset by string id: amp_damp, dephasing, xx, xy_h, xy_J, xy_gamma,
/// phase, identity. `fixed` supplies the held parameters (h, J, gamma, k,
/// t_over_hbar). Unknown ids throw UnknownNameError.
EncodingFamily make_preset(std::string_view id, const std::map<std::string, double>& fixed = {});
std::vector<std::string> preset_ids();
/// Name of the estimated parameter for a preset id (k_a, k_d, k_x, h, J, gamma, theta).
std::string preset_parameter_name(std::string_view id);

// Pauli decomposition --------------------------------------------------------

struct PauliDecomposition {
  std::array<std::array<Complex, 4>, 4> coeffs{};

  ComplexMatrix reconstruct() const;
};

/// h_ij = Tr[(sigma_i (x) sigma_j)^dagger U] / 4.
PauliDecomposition pauli_decompose(const ComplexMatrix& u4);

}  // namespace npovm
