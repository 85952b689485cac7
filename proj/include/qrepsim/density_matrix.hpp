// Copyright 2026 The qrepsim Authors
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

#ifndef QREPSIM_DENSITY_MATRIX_HPP
#define QREPSIM_DENSITY_MATRIX_HPP

#include <array>
#include <cstddef>
#include <span>

#include "qrepsim/linalg.hpp"

namespace qrepsim {

/// Density operator over an ordered qubit register. Qubit 0 is the leftmost
/// tensor factor.
///
/// A DensityMatrix is Hermitian and positive semidefinite. Its trace is 1
/// unless it was built with `Normalization::kSubnormalized`, which admits the
/// unnormalized branch states produced by post-selection (0 < trace <= 1).
class DensityMatrix {
 public:
  enum class Normalization { kUnit, kSubnormalized };

  DensityMatrix() = default;

  /// Validates and wraps a matrix. Throws NumericalError on violated
  /// invariants and std::invalid_argument on a non-power-of-two dimension.
  static DensityMatrix from_matrix(Matrix rho, Normalization norm = Normalization::kUnit);
  static DensityMatrix from_pure(const Vector& psi);
  /// Computational basis state |b_0 b_1 ... b_{n-1}>.
  static DensityMatrix basis(std::span<const int> bits);
  static DensityMatrix maximally_mixed(std::size_t num_qubits);

  const Matrix& matrix() const { return rho_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  std::size_t num_qubits() const { return num_qubits_; }
  double trace() const { return rho_.trace().real(); }
  bool is_normalized() const;

  /// Rescales to unit trace. Throws NumericalError if the trace is not positive.
  DensityMatrix normalized() const;

 private:
  explicit DensityMatrix(Matrix rho);
  Matrix rho_;
  std::size_t num_qubits_ = 0;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keep`, with output qubits ordered as listed.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
/// Raw variant for unnormalized intermediate matrices.
Matrix partial_trace(const Matrix& rho, std::size_t num_qubits, std::span<const std::size_t> keep);

enum class Bell { kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus };

Vector bell_vector(Bell which);
DensityMatrix bell_state(Bell which);

/// <Phi+| rho |Phi+> for a two-qubit state.
double entanglement_fidelity(const DensityMatrix& rho);

enum class StateFamily { kWerner, kBinary };

/// f|Phi+><Phi+| + (1-f)/3 (|Phi-><Phi-| + |Psi+><Psi+| + |Psi-><Psi-|)
DensityMatrix werner_state(double fidelity);
/// f|Phi+><Phi+| + (1-f)|Phi-><Phi-|
DensityMatrix binary_state(double fidelity);
DensityMatrix family_state(StateFamily family, double fidelity);

}  // namespace qrepsim

#endif  // QREPSIM_DENSITY_MATRIX_HPP
