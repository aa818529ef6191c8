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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "npovm/encodings.hpp"
#include "npovm/fisher.hpp"
#include "npovm/tensor.hpp"

namespace npovm {

/// Positive: product probe-auxiliary input (POVM on the probe).
/// General: arbitrary, possibly correlated, probe-auxiliary input.
enum class StrategyClass { positive, general };

std::string_view to_string(StrategyClass c);
/// Accepts "positive" / "general" (case-insensitive); throws UnknownNameError.
StrategyClass parse_strategy_class(std::string_view s);

/// Generalized Gell-Mann basis of su(dim): symmetric and antisymmetric
/// off-diagonal pairs (j < k) first, then the diagonal generators.
/// For dim 2 this is (sigma_x, sigma_y, sigma_z). Tr[G_a G_b] = 2 delta_ab.
const std::vector<ComplexMatrix>& gell_mann_generators(std::size_t dim);

/// exp(-i sum_j angles_j G_j). Requires angles.size() == dim^2 - 1.
ComplexMatrix unitary_from_params(std::span<const double> angles, std::size_t dim);

/// A preparation and measurement circuit around the encoding, parameterized by angles.
///
/// Parameter layout (probe dimension 2, d = 2 * aux_dim):
///   positive: [U1 (3) | U2 (aux_dim^2 - 1) | U_M' (d^2 - 1)]
///   general:  [U (d^2 - 1) | U_M (d^2 - 1)]
/// The measurement unitary is exp(-i sum a G) * measurement_frame, so a frame
/// taken from an SLD eigenbasis acts as a warm start at zero angles.
struct MeasurementStrategy {
  StrategyClass cls = StrategyClass::positive;
  std::size_t aux_dim = 2;
  std::vector<double> params;
  ComplexMatrix measurement_frame;  // empty means identity
  std::size_t probe_slot = 0;       // register slot the encoding acts on

  static std::size_t preparation_param_count(StrategyClass cls, std::size_t aux_dim);
  static std::size_t measurement_param_count(std::size_t aux_dim);
  static std::size_t param_count(StrategyClass cls, std::size_t aux_dim);
  static MeasurementStrategy zeros(StrategyClass cls, std::size_t aux_dim = 2);

  std::size_t joint_dim() const { return 2 * aux_dim; }
};

/// Concrete unitaries of a circuit. `probe_local` and `aux_local` are only
/// meaningful for the positive class (preparation = probe_local (x) aux_local).
struct StrategyCircuit {
  StrategyClass cls = StrategyClass::positive;
  std::size_t aux_dim = 2;
  std::size_t probe_slot = 0;
  ComplexMatrix probe_local;
  ComplexMatrix aux_local;
  ComplexMatrix preparation;
  ComplexMatrix measurement;

  static StrategyCircuit positive(const ComplexMatrix& u1, const ComplexMatrix& u2, const ComplexMatrix& um_prime,
                                  std::size_t probe_slot = 0);
  static StrategyCircuit general(const ComplexMatrix& u, const ComplexMatrix& um, std::size_t aux_dim = 2,
                                 std::size_t probe_slot = 0);

  Embedding embedding() const;
};

StrategyCircuit synthesize(const MeasurementStrategy& s);

/// Input density matrix on probe (x) auxiliary: preparation |0...0>.
ComplexMatrix prepare_input(const MeasurementStrategy& s);
ComplexMatrix prepare_input(const StrategyCircuit& c);

/// p_i = <i| U_M (Lambda_theta (x) id)(rho_SA) U_M^dagger |i>.
std::vector<double> outcome_distribution(const MeasurementStrategy& s, const EncodingFamily& enc, double theta);
std::vector<double> outcome_distribution(const StrategyCircuit& c, const EncodingFamily& enc, double theta);

/// classical_fisher(prob_derivative(outcome_distribution)).
double strategy_fisher(const MeasurementStrategy& s, const EncodingFamily& enc, double theta,
                       double step = kDefaultFdStep);
double strategy_fisher(const StrategyCircuit& c, const EncodingFamily& enc, double theta,
                       double step = kDefaultFdStep);

/// Encoded joint state and its central-difference derivative.
struct EncodedState {
  ComplexMatrix rho;
  ComplexMatrix drho;
};
EncodedState encode_joint(const ComplexMatrix& input_state, const EncodingFamily& enc, double theta,
                          const Embedding& embed, double step = kDefaultFdStep);

/// Measurement unitary rotating the SLD eigenbasis of the encoded joint state
/// onto the computational basis (the adjoint of the eigenvector matrix).
ComplexMatrix sld_warm_start(const EncodingFamily& enc, const ComplexMatrix& input_state, double theta,
                             double step = kDefaultFdStep, std::size_t probe_slot = 0);

struct OptimizerConfig {
  int restarts = 20;
  int max_iters = 2000;
  double simplex_tol = 1e-8;
  std::uint64_t seed = 0;
  bool warm_start_sld = true;
  std::size_t aux_dim = 2;
  double fd_step = kDefaultFdStep;
};

struct FisherReport {
  StrategyClass cls = StrategyClass::positive;
  double fi = 0.0;
  double delta_theta = 0.0;
  std::vector<double> params_at_opt;
  ComplexMatrix measurement_frame;
  std::size_t aux_dim = 2;
  int restarts_used = 0;
  bool converged = false;

  MeasurementStrategy strategy() const;
};

/// 1/sqrt(fi); +inf when fi <= 0.
double delta_from_fisher(double fi);

/// Mixes (seed, index) into an independent 64-bit stream seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Multi-start Nelder-Mead maximization of strategy_fisher over the class's
/// parameter vector. With warm_start_sld each restart first searches the
/// preparation angles with the SLD eigenbasis as measurement, then refines
/// every angle jointly around that frame.
FisherReport optimize_fisher(StrategyClass cls, const EncodingFamily& enc, double theta, const OptimizerConfig& cfg);

}  // namespace npovm
