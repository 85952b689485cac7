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

#ifndef QREPSIM_COMPRESS_HPP
#define QREPSIM_COMPRESS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "qrepsim/channel.hpp"

namespace qrepsim {

struct PipelineStep {
  Channel channel;
  std::vector<std::size_t> targets;
};

using Pipeline = std::vector<PipelineStep>;

/// Keeps only the branches in which the listed (record) qubits read one of
/// the accepted bit patterns.
struct PostSelection {
  std::vector<std::size_t> qubits;
  std::vector<std::vector<int>> accepted;
};

struct CompressResult {
  Channel channel;
  /// Branch probability on the reference input; 1 without post-selection.
  double success_probability = 1.0;
};

/// Applies every step of a pipeline, in order, to an n-qubit operator.
Matrix run_pipeline(const Pipeline& pipeline, std::size_t system_qubits, Matrix rho);

/// Places `input` on the `inputs` qubits of an n-qubit register whose other
/// qubits start in |0>.
Matrix prepare_register(const Matrix& input, std::span<const std::size_t> inputs, std::size_t system_qubits);

/// Effective channel from the `inputs` qubits to the `keep` qubits obtained by
/// pushing the operator basis |i><j| through the pipeline (process
/// tomography). Qubits not listed in `inputs` start in |0>; preparing other
/// states is the pipeline's job. `inputs` defaults to `keep`.
///
/// With a post-selection the result is the unnormalized branch map and the
/// success probability refers to `reference` (maximally mixed if absent).
CompressResult compress(const Pipeline& pipeline, std::size_t system_qubits, std::vector<std::size_t> keep,
                        const std::optional<PostSelection>& postselect = std::nullopt,
                        const std::optional<DensityMatrix>& reference = std::nullopt,
                        std::vector<std::size_t> inputs = {});

/// Projector onto the accepted record patterns, as a one-Kraus channel.
Channel postselection_channel(const PostSelection& postselect);

}  // namespace qrepsim

#endif  // QREPSIM_COMPRESS_HPP
