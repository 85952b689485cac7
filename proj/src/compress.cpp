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

#include "qrepsim/compress.hpp"

#include <stdexcept>

namespace qrepsim {

Matrix run_pipeline(const Pipeline& pipeline, std::size_t system_qubits, Matrix rho) {
  for (const auto& step : pipeline) rho = apply_local(step.channel, step.targets, rho, system_qubits);
  return rho;
}

Matrix prepare_register(const Matrix& input, std::span<const std::size_t> inputs, std::size_t system_qubits) {
  check_targets(inputs, system_qubits);
  const std::size_t k = inputs.size();
  if (static_cast<std::size_t>(input.rows()) != (std::size_t{1} << k))
    throw std::invalid_argument("input operator does not match input qubits");
  std::vector<Eigen::Index> offset(std::size_t{1} << k);
  for (std::size_t loc = 0; loc < offset.size(); ++loc) {
    std::size_t idx = 0;
    for (std::size_t p = 0; p < k; ++p)
      if (loc & (std::size_t{1} << (k - 1 - p))) idx |= std::size_t{1} << (system_qubits - 1 - inputs[p]);
    offset[loc] = static_cast<Eigen::Index>(idx);
  }
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << system_qubits);
  Matrix full = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < offset.size(); ++i)
    for (std::size_t j = 0; j < offset.size(); ++j)
      full(offset[i], offset[j]) = input(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return full;
}

Channel postselection_channel(const PostSelection& postselect) {
  const std::size_t k = postselect.qubits.size();
  if (k == 0) throw std::invalid_argument("post-selection without qubits");
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << k);
  Matrix projector = Matrix::Zero(d, d);
  for (const auto& pattern : postselect.accepted) {
    if (pattern.size() != k) throw std::invalid_argument("post-selection pattern length mismatch");
    Eigen::Index idx = 0;
    for (int bit : pattern) idx = 2 * idx + (bit ? 1 : 0);
    projector(idx, idx) = 1.0;
  }
  return kraus_to_channel(KrausSet{{projector}});
}

CompressResult compress(const Pipeline& pipeline, std::size_t system_qubits, std::vector<std::size_t> keep,
                        const std::optional<PostSelection>& postselect,
                        const std::optional<DensityMatrix>& reference, std::vector<std::size_t> inputs) {
  if (pipeline.empty()) throw std::invalid_argument("compress: empty pipeline");
  if (inputs.empty()) inputs = keep;
  check_targets(keep, system_qubits);
  if (inputs.size() != keep.size()) throw std::invalid_argument("compress: input and output sizes differ");

  Pipeline steps = pipeline;
  if (postselect) steps.push_back({postselection_channel(*postselect), postselect->qubits});

  const std::size_t d = std::size_t{1} << keep.size();
  const auto di = static_cast<Eigen::Index>(d);
  Matrix superop(di * di, di * di);
  Matrix basis = Matrix::Zero(di, di);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      basis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
      const Matrix out = run_pipeline(steps, system_qubits, prepare_register(basis, inputs, system_qubits));
      superop.col(static_cast<Eigen::Index>(i + j * d)) = vec(partial_trace(out, system_qubits, keep));
      basis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.0;
    }

  bool tp = !postselect.has_value();
  for (const auto& step : pipeline) tp = tp && step.channel.trace_preserving();
  CompressResult result{Channel(d, std::move(superop), tp), 1.0};
  if (postselect) {
    const Matrix ref = reference ? reference->matrix() : DensityMatrix::maximally_mixed(keep.size()).matrix();
    if (static_cast<std::size_t>(ref.rows()) != d) throw std::invalid_argument("reference input has wrong size");
    result.success_probability = result.channel.apply(ref).trace().real();
    if (!(result.success_probability > 1e-14))
      throw NumericalError("post-selected branch has zero probability on the reference input");
  }
  return result;
}

}  // namespace qrepsim
