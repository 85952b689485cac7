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

#ifndef QREPSIM_LINALG_HPP
#define QREPSIM_LINALG_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qrepsim {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Raised when a numerical invariant (CP, TP, Hermiticity, normalization)
/// is violated beyond tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerance used for CP/TP/Hermiticity checks. Defaults to 1e-10 and can be
/// overridden process-wide (the CLI reads QREPSIM_TOL).
double check_tolerance();
void set_check_tolerance(double tol);

namespace pauli {
Matrix I();
Matrix X();
Matrix Y();
Matrix Z();
}  // namespace pauli

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_all(std::span<const Matrix> factors);

/// Column-stacking vectorization: vec(A)[i + j*d] = A(i, j).
Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, std::size_t rows);

/// Largest singular value.
double operator_norm(const Matrix& a);

bool is_power_of_two(std::size_t n);
std::size_t log2_exact(std::size_t n);

/// Embeds a k-qubit operator acting on `targets` into an n-qubit register.
/// Qubit 0 is the leftmost tensor factor (most significant index bit).
Matrix embed_operator(const Matrix& op, std::span<const std::size_t> targets, std::size_t num_qubits);

/// Validates a target list against a register size: distinct, in range.
void check_targets(std::span<const std::size_t> targets, std::size_t num_qubits);

}  // namespace qrepsim

#endif  // QREPSIM_LINALG_HPP
