// Copyright 2026 The surfacelab Authors
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

#ifndef SURFACELAB_FRAME_H
#define SURFACELAB_FRAME_H

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "surfacelab/circuit.h"
#include "surfacelab/pauli.h"

namespace surfacelab {

struct FrameRunResult {
    /// Tags of measurements whose outcome is flipped relative to the noiseless run,
    /// in circuit order.
    std::vector<uint32_t> flipped;
    /// Pauli frame on all qubits after the last layer.
    PauliString residual;
};

/// Propagates the given faults through the ideal Clifford circuit.
///
/// The frame starts at identity. Each fault is multiplied in right after its
/// location; preparations reset the frame on their qubit; MeasureZ flips iff the
/// frame has X or Y on the qubit, MeasureX iff it has Z or Y.
FrameRunResult frame_run(const Circuit &c, const FaultSet &faults);

/// Same, with faults given as full-width Pauli strings keyed by location index.
/// Throws std::invalid_argument if a fault has support outside its element.
FrameRunResult frame_run(
    const Circuit &c,
    const std::map<size_t, PauliString> &faults,
    std::span<const uint32_t> measurement_flips = {});

/// Reusable frame propagator for the Monte Carlo inner loop. The circuit is
/// flattened once; each run() touches every location exactly once.
///
/// A simulator instance is single-threaded; construct one per worker. The
/// underlying circuit is only read.
class FrameSimulator {
  public:
    explicit FrameSimulator(const Circuit &c);

    /// `faults.faults` must be sorted by location.
    void run(const FaultSet &faults);

    size_t num_qubits() const { return num_qubits_; }
    /// Flip bit per measurement in circuit order.
    const std::vector<uint8_t> &measurement_flips() const { return meas_; }
    /// Tag of the k-th measurement in circuit order.
    const std::vector<uint32_t> &measurement_tags() const { return tags_; }
    const std::vector<uint8_t> &frame_x() const { return x_; }
    const std::vector<uint8_t> &frame_z() const { return z_; }
    PauliString residual() const;

  private:
    size_t num_qubits_;
    std::vector<Element> flat_;
    std::vector<uint32_t> tags_;
    std::vector<int32_t> tag_to_ordinal_;
    std::vector<uint8_t> x_, z_, meas_;
};

}  // namespace surfacelab

#endif  // SURFACELAB_FRAME_H
