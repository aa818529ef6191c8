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
#include "npovm/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "npovm/errors.hpp"

namespace npovm {
namespace {

// Row-major digit decomposition: slot 0 is the most significant digit.
std::vector<std::size_t> digits_of(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t s = dims.size(); s-- > 0;) {
    d[s] = index % dims[s];
    index /= dims[s];
  }
  return d;
}

void check_spec(const ComplexMatrix& m, const HilbertSpec& spec) {
  if (m.rows() != m.cols()) {
    throw DimensionError("matrix is not square");
  }
  if (spec.dims.empty() || static_cast<std::size_t>(m.rows()) != spec.total_dim()) {
    throw DimensionError("HilbertSpec total dimension " + std::to_string(spec.total_dim()) +
                         " does not match matrix dimension " + std::to_string(m.rows()));
  }
}

void check_slots(const HilbertSpec& spec, std::span<const std::size_t> slots) {
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i] >= spec.size()) {
      throw DimensionError("slot index " + std::to_string(slots[i]) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (slots[i] == slots[j]) throw DimensionError("repeated slot index");
    }
  }
}

}  // namespace

std::size_t HilbertSpec::total_dim() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix g = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

bool is_density(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol) return false;
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  ComplexMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const HilbertSpec& spec,
                            std::span<const std::size_t> keep) {
  check_spec(m, spec);
  check_slots(spec, keep);
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());

  std::vector<bool> is_kept(spec.size(), false);
  std::vector<std::size_t> kept_dims;
  for (auto s : kept) {
    is_kept[s] = true;
    kept_dims.push_back(spec.dims[s]);
  }
  std::size_t out_dim = 1;
  for (auto d : kept_dims) out_dim *= d;

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(out_dim),
                                          static_cast<Eigen::Index>(out_dim));
  const std::size_t n = spec.total_dim();
  for (std::size_t r = 0; r < n; ++r) {
    const auto dr = digits_of(r, spec.dims);
    for (std::size_t c = 0; c < n; ++c) {
      const auto dc = digits_of(c, spec.dims);
      bool traced_match = true;
      std::size_t orow = 0, ocol = 0;
      for (std::size_t s = 0; s < spec.size(); ++s) {
        if (is_kept[s]) {
          orow = orow * spec.dims[s] + dr[s];
          ocol = ocol * spec.dims[s] + dc[s];
        } else if (dr[s] != dc[s]) {
          traced_match = false;
          break;
        }
      }
      if (traced_match) {
        out(static_cast<Eigen::Index>(orow), static_cast<Eigen::Index>(ocol)) +=
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const HilbertSpec& spec,
                            std::initializer_list<std::size_t> keep) {
  return partial_trace(m, spec, std::span<const std::size_t>(keep.begin(), keep.size()));
}

ComplexMatrix embed_operator(const ComplexMatrix& op, const HilbertSpec& spec,
                             std::span<const std::size_t> slots) {
  check_slots(spec, slots);
  std::size_t op_dim = 1;
  for (auto s : slots) op_dim *= spec.dims[s];
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != op_dim) {
    throw DimensionError("operator dimension does not match the selected slots");
  }
  std::vector<bool> in_op(spec.size(), false);
  for (auto s : slots) in_op[s] = true;

  const std::size_t n = spec.total_dim();
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const auto dr = digits_of(r, spec.dims);
    for (std::size_t c = 0; c < n; ++c) {
      const auto dc = digits_of(c, spec.dims);
      bool spectator_match = true;
      for (std::size_t s = 0; s < spec.size(); ++s) {
        if (!in_op[s] && dr[s] != dc[s]) {
          spectator_match = false;
          break;
        }
      }
      if (!spectator_match) continue;
      std::size_t orow = 0, ocol = 0;
      for (auto s : slots) {
        orow = orow * spec.dims[s] + dr[s];
        ocol = ocol * spec.dims[s] + dc[s];
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          op(static_cast<Eigen::Index>(orow), static_cast<Eigen::Index>(ocol));
    }
  }
  return out;
}

ComplexMatrix embed_operator(const ComplexMatrix& op, const HilbertSpec& spec,
                             std::initializer_list<std::size_t> slots) {
  return embed_operator(op, spec, std::span<const std::size_t>(slots.begin(), slots.size()));
}

HermitianEigen eig_hermitian(const ComplexMatrix& h, double tol) {
  if (!is_hermitian(h, tol)) {
    throw PreconditionError("eig_hermitian: matrix is not Hermitian");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix expm_unitary(const ComplexMatrix& h, double s, double tol) {
  if (!is_hermitian(h, tol)) {
    throw PreconditionError("expm_unitary: generator is not Hermitian");
  }
  const auto eig = eig_hermitian(h, tol);
  ComplexVector phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -s * eig.values(k)));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return ComplexMatrix::Identity(n, n);
}

ComplexMatrix projector(const ComplexVector& psi) { return psi * psi.adjoint(); }

ComplexVector basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

const std::array<ComplexMatrix, 4>& pauli_basis() {
  static const std::array<ComplexMatrix, 4> table = [] {
    const Complex i(0.0, 1.0);
    std::array<ComplexMatrix, 4> s;
    for (auto& m : s) m = ComplexMatrix::Zero(2, 2);
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, -i, i, 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return table;
}

const ComplexMatrix& pauli(std::size_t index) {
  if (index > 3) throw DimensionError("Pauli index must be in 0..3");
  return pauli_basis()[index];
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace npovm
