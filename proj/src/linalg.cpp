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

#include "qrepsim/linalg.hpp"

#include <algorithm>
#include <atomic>

#include <Eigen/SVD>

namespace qrepsim {

namespace {
std::atomic<double> g_tolerance{1e-10};
}

double check_tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_check_tolerance(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  g_tolerance.store(tol, std::memory_order_relaxed);
}

namespace pauli {
Matrix I() { return Matrix::Identity(2, 2); }
Matrix X() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix Y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
Matrix Z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_all(std::span<const Matrix> factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

Vector vec(const Matrix& a) {
  Vector v(a.size());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) v(i + j * a.rows()) = a(i, j);
  return v;
}

Matrix unvec(const Vector& v, std::size_t rows) {
  const auto r = static_cast<Eigen::Index>(rows);
  const Eigen::Index cols = v.size() / r;
  Matrix a(r, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < r; ++i) a(i, j) = v(i + j * r);
  return a;
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("dimension " + std::to_string(n) + " is not a power of two");
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

void check_targets(std::span<const std::size_t> targets, std::size_t num_qubits) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= num_qubits)
      throw std::out_of_range("qubit index " + std::to_string(targets[i]) + " out of range for " +
                              std::to_string(num_qubits) + "-qubit register");
    for (std::size_t j = 0; j < i; ++j)
      if (targets[j] == targets[i]) throw std::invalid_argument("duplicate qubit index " + std::to_string(targets[i]));
  }
}

Matrix embed_operator(const Matrix& op, std::span<const std::size_t> targets, std::size_t num_qubits) {
  check_targets(targets, num_qubits);
  const std::size_t k = targets.size();
  if (static_cast<std::size_t>(op.rows()) != (std::size_t{1} << k) || op.rows() != op.cols())
    throw std::invalid_argument("operator dimension does not match target count");
  const std::size_t full = std::size_t{1} << num_qubits;
  std::size_t target_mask = 0;
  for (auto t : targets) target_mask |= std::size_t{1} << (num_qubits - 1 - t);

  auto local_index = [&](std::size_t idx) {
    std::size_t loc = 0;
    for (std::size_t p = 0; p < k; ++p)
      if (idx & (std::size_t{1} << (num_qubits - 1 - targets[p]))) loc |= std::size_t{1} << (k - 1 - p);
    return loc;
  };
  auto with_local = [&](std::size_t idx, std::size_t loc) {
    idx &= ~target_mask;
    for (std::size_t p = 0; p < k; ++p)
      if (loc & (std::size_t{1} << (k - 1 - p))) idx |= std::size_t{1} << (num_qubits - 1 - targets[p]);
    return idx;
  };

  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(full), static_cast<Eigen::Index>(full));
  for (std::size_t col = 0; col < full; ++col) {
    const std::size_t lc = local_index(col);
    for (std::size_t lr = 0; lr < (std::size_t{1} << k); ++lr) {
      const cplx v = op(static_cast<Eigen::Index>(lr), static_cast<Eigen::Index>(lc));
      if (v != cplx(0.0)) out(static_cast<Eigen::Index>(with_local(col, lr)), static_cast<Eigen::Index>(col)) = v;
    }
  }
  return out;
}

}  // namespace qrepsim
