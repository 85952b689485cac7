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

#ifndef QREPSIM_CHANNEL_HPP
#define QREPSIM_CHANNEL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qrepsim/density_matrix.hpp"
#include "qrepsim/linalg.hpp"

namespace qrepsim {

/// Operator-sum representation rho -> sum_k E_k rho E_k^dagger.
struct KrausSet {
  std::vector<Matrix> operators;

  std::size_t dim() const { return operators.empty() ? 0 : static_cast<std::size_t>(operators.front().rows()); }
};

/// A quantum operation in superoperator (Liouville) form.
///
/// Vectorization is column-stacking, vec(A)[i + j*d] = A(i, j), so that
/// vec(E rho F) = (F^T (x) E) vec(rho) and a Kraus set maps to
/// sum_k conj(E_k) (x) E_k. Post-selected branches are represented as
/// trace-decreasing maps with `trace_preserving() == false`.
class Channel {
 public:
  Channel() = default;
  Channel(std::size_t dim, Matrix superop, bool trace_preserving);

  static Channel identity(std::size_t num_qubits);
  static Channel unitary(const Matrix& u);

  std::size_t dim() const { return dim_; }
  std::size_t num_qubits() const { return log2_exact(dim_); }
  const Matrix& superop() const { return superop_; }
  bool trace_preserving() const { return trace_preserving_; }

  Matrix choi() const;
  Matrix apply(const Matrix& rho) const;
  DensityMatrix apply(const DensityMatrix& rho) const;

  bool is_completely_positive(double tol) const;
  /// Partial trace of the Choi matrix over the output equals the identity.
  bool is_trace_preserving(double tol) const;
  /// Largest eigenvalue of sum_k E_k^dagger E_k does not exceed 1.
  bool is_trace_nonincreasing(double tol) const;

 private:
  std::size_t dim_ = 0;
  Matrix superop_;
  bool trace_preserving_ = true;
};

Channel kraus_to_channel(const KrausSet& kraus);
/// Kraus operators from the eigendecomposition of the Choi matrix;
/// eigenvalues below 1e-12 are dropped. Throws NumericalError for non-CP input.
KrausSet channel_to_kraus(const Channel& channel);

/// second o first
Channel compose(const Channel& second, const Channel& first);
/// a (x) b with a on the leading qubits.
Channel tensor_product(const Channel& a, const Channel& b);
/// Weighted sum of channels of equal dimension (branch recombination).
Channel sum(std::span<const Channel> channels);

/// Acts as `c` on `targets` (in order) and as identity on the rest.
Channel embed(const Channel& c, std::span<const std::size_t> targets, std::size_t system_qubits);

/// Applies a local channel to `targets` of an n-qubit register without
/// forming the full superoperator.
Matrix apply_local(const Channel& c, std::span<const std::size_t> targets, const Matrix& rho,
                   std::size_t num_qubits);

/// Feed-forward on classical records: sum_m |m><m| (x) branches[m], with the
/// record qubits leading. `branches.size()` must be 2^record_qubits.
Channel classically_controlled(std::span<const Channel> branches, std::size_t record_qubits);

/// Trace-preserving map sending every input to `target`.
Channel constant_channel(const DensityMatrix& target);

/// Text serialization: one header line, then dim^4 lines "re im" of the
/// row-major superoperator, printed in shortest round-trip form.
std::string serialize(const Channel& c);
Channel deserialize(const std::string& text);

}  // namespace qrepsim

#endif  // QREPSIM_CHANNEL_HPP
