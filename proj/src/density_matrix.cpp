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

#include "qrepsim/density_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <Eigen/Eigenvalues>

namespace qrepsim {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)), num_qubits_(log2_exact(rho_.rows())) {}

DensityMatrix DensityMatrix::from_matrix(Matrix rho, Normalization norm) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  const double tol = check_tolerance();
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol)
    throw NumericalError("density matrix not Hermitian (deviation " + num(herm) + ")");
  // Round-off accumulated by long channel sequences is removed here.
  DensityMatrix out(0.5 * (rho + rho.adjoint()));
  const Matrix& m = out.rho_;
  const double tr = m.trace().real();
  if (norm == Normalization::kUnit) {
    if (std::abs(tr - 1.0) > tol) throw NumericalError("density matrix trace deviates from 1 by " + num(tr - 1.0));
  } else if (!(tr > 0.0) || tr > 1.0 + tol) {
    throw NumericalError("branch state trace " + num(tr) + " outside (0, 1]");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw NumericalError("density matrix has negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  return out;
}

DensityMatrix DensityMatrix::from_pure(const Vector& psi) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) > check_tolerance()) throw NumericalError("state vector not normalized");
  return from_matrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::basis(std::span<const int> bits) {
  const std::size_t n = bits.size();
  std::size_t idx = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (bits[q] != 0 && bits[q] != 1) throw std::invalid_argument("basis bits must be 0 or 1");
    if (bits[q]) idx |= std::size_t{1} << (n - 1 - q);
  }
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix m = Matrix::Zero(d, d);
  m(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t num_qubits) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
}

bool DensityMatrix::is_normalized() const { return std::abs(trace() - 1.0) <= check_tolerance(); }

DensityMatrix DensityMatrix::normalized() const {
  const double tr = trace();
  if (!(tr > 0.0)) throw NumericalError("cannot normalize a state with non-positive trace");
  return DensityMatrix(rho_ / tr);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const auto norm = (a.is_normalized() && b.is_normalized()) ? DensityMatrix::Normalization::kUnit
                                                             : DensityMatrix::Normalization::kSubnormalized;
  return DensityMatrix::from_matrix(kron(a.matrix(), b.matrix()), norm);
}

Matrix partial_trace(const Matrix& rho, std::size_t num_qubits, std::span<const std::size_t> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep must be nonempty");
  check_targets(keep, num_qubits);
  if (static_cast<std::size_t>(rho.rows()) != (std::size_t{1} << num_qubits))
    throw std::invalid_argument("partial_trace: matrix dimension does not match qubit count");
  const std::size_t k = keep.size();
  const std::size_t n_out = std::size_t{1} << k;
  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < num_qubits; ++q) {
    bool kept = false;
    for (auto t : keep) kept = kept || (t == q);
    if (!kept) traced.push_back(q);
  }
  auto bitpos = [&](std::size_t q) { return num_qubits - 1 - q; };
  auto compose = [&](std::size_t local, std::size_t env) {
    std::size_t idx = 0;
    for (std::size_t p = 0; p < k; ++p)
      if (local & (std::size_t{1} << (k - 1 - p))) idx |= std::size_t{1} << bitpos(keep[p]);
    for (std::size_t p = 0; p < traced.size(); ++p)
      if (env & (std::size_t{1} << p)) idx |= std::size_t{1} << bitpos(traced[p]);
    return static_cast<Eigen::Index>(idx);
  };
  const std::size_t n_env = std::size_t{1} << traced.size();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n_out), static_cast<Eigen::Index>(n_out));
  for (std::size_t r = 0; r < n_out; ++r)
    for (std::size_t c = 0; c < n_out; ++c) {
      cplx acc = 0.0;
      for (std::size_t e = 0; e < n_env; ++e) acc += rho(compose(r, e), compose(c, e));
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const auto norm =
      rho.is_normalized() ? DensityMatrix::Normalization::kUnit : DensityMatrix::Normalization::kSubnormalized;
  return DensityMatrix::from_matrix(partial_trace(rho.matrix(), rho.num_qubits(), keep), norm);
}

Vector bell_vector(Bell which) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  switch (which) {
    case Bell::kPhiPlus: v(0) = s; v(3) = s; break;
    case Bell::kPhiMinus: v(0) = s; v(3) = -s; break;
    case Bell::kPsiPlus: v(1) = s; v(2) = s; break;
    case Bell::kPsiMinus: v(1) = s; v(2) = -s; break;
  }
  return v;
}

DensityMatrix bell_state(Bell which) { return DensityMatrix::from_pure(bell_vector(which)); }

double entanglement_fidelity(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("entanglement_fidelity requires a two-qubit state");
  const Vector phi = bell_vector(Bell::kPhiPlus);
  return (phi.adjoint() * rho.matrix() * phi)(0, 0).real();
}

namespace {
void check_fidelity(double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("fidelity " + std::to_string(f) + " outside [0, 1]");
}
Matrix projector(Bell b) {
  const Vector v = bell_vector(b);
  return v * v.adjoint();
}
}  // namespace

DensityMatrix werner_state(double fidelity) {
  check_fidelity(fidelity);
  const double rest = (1.0 - fidelity) / 3.0;
  return DensityMatrix::from_matrix(fidelity * projector(Bell::kPhiPlus) +
                                    rest * (projector(Bell::kPhiMinus) + projector(Bell::kPsiPlus) +
                                            projector(Bell::kPsiMinus)));
}

DensityMatrix binary_state(double fidelity) {
  check_fidelity(fidelity);
  return DensityMatrix::from_matrix(fidelity * projector(Bell::kPhiPlus) +
                                    (1.0 - fidelity) * projector(Bell::kPhiMinus));
}

DensityMatrix family_state(StateFamily family, double fidelity) {
  return family == StateFamily::kWerner ? werner_state(fidelity) : binary_state(fidelity);
}

}  // namespace qrepsim
