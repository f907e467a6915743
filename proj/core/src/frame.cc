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

#include "surfacelab/frame.h"

#include <algorithm>
#include <stdexcept>

namespace surfacelab {

FrameSimulator::FrameSimulator(const Circuit &c)
    : num_qubits_(c.num_qubits()), x_(c.num_qubits(), 0), z_(c.num_qubits(), 0) {
    flat_.reserve(c.num_elements());
    uint32_t max_tag = 0;
    for (const auto &layer : c.layers()) {
        for (const auto &e : layer) {
            if (e.q0 >= num_qubits_ || (e.kind == OpKind::CNOT && e.q1 >= num_qubits_)) {
                throw std::invalid_argument("qubit index out of range");
            }
            flat_.push_back(e);
            if (e.is_measurement()) {
                tags_.push_back(e.tag);
                max_tag = std::max(max_tag, e.tag);
            }
        }
    }
    tag_to_ordinal_.assign(tags_.empty() ? 0 : max_tag + 1, -1);
    for (size_t k = 0; k < tags_.size(); ++k) tag_to_ordinal_[tags_[k]] = static_cast<int32_t>(k);
    meas_.assign(tags_.size(), 0);
}

void FrameSimulator::run(const FaultSet &faults) {
    std::fill(x_.begin(), x_.end(), 0);
    std::fill(z_.begin(), z_.end(), 0);
    size_t m = 0;
    auto next = faults.faults.begin();
    auto end = faults.faults.end();
    for (size_t loc = 0; loc < flat_.size(); ++loc) {
        const Element &e = flat_[loc];
        switch (e.kind) {
            case OpKind::PrepZ:
            case OpKind::PrepX:
                x_[e.q0] = 0;
                z_[e.q0] = 0;
                break;
            case OpKind::CNOT:
                x_[e.q1] ^= x_[e.q0];
                z_[e.q0] ^= z_[e.q1];
                break;
            case OpKind::H: std::swap(x_[e.q0], z_[e.q0]); break;
            case OpKind::MeasureZ: meas_[m++] = x_[e.q0]; break;
            case OpKind::MeasureX: meas_[m++] = z_[e.q0]; break;
            case OpKind::Idle: break;
        }
        while (next != end && next->location == loc) {
            x_[e.q0] ^= has_x(next->first);
            z_[e.q0] ^= has_z(next->first);
            if (e.kind == OpKind::CNOT) {
                x_[e.q1] ^= has_x(next->second);
                z_[e.q1] ^= has_z(next->second);
            }
            ++next;
        }
    }
    for (uint32_t tag : faults.measurement_flips) {
        if (tag < tag_to_ordinal_.size() && tag_to_ordinal_[tag] >= 0) {
            meas_[static_cast<size_t>(tag_to_ordinal_[tag])] ^= 1;
        } else {
            throw std::invalid_argument("measurement flip refers to unknown tag " + std::to_string(tag));
        }
    }
}

PauliString FrameSimulator::residual() const {
    PauliString p(num_qubits_);
    for (size_t q = 0; q < num_qubits_; ++q) {
        if (x_[q] | z_[q]) p.set(q, make_pauli(x_[q], z_[q]));
    }
    return p;
}

FrameRunResult frame_run(const Circuit &c, const FaultSet &faults) {
    FaultSet sorted = faults;
    std::stable_sort(sorted.faults.begin(), sorted.faults.end(),
                     [](const Fault &a, const Fault &b) { return a.location < b.location; });
    size_t total = c.num_elements();
    for (const auto &f : sorted.faults) {
        if (f.location >= total) throw std::invalid_argument("fault location out of range");
    }
    FrameSimulator sim(c);
    sim.run(sorted);
    FrameRunResult result{{}, sim.residual()};
    const auto &flips = sim.measurement_flips();
    for (size_t k = 0; k < flips.size(); ++k) {
        if (flips[k]) result.flipped.push_back(sim.measurement_tags()[k]);
    }
    return result;
}

FrameRunResult frame_run(
    const Circuit &c,
    const std::map<size_t, PauliString> &faults,
    std::span<const uint32_t> measurement_flips) {
    auto locations = enumerate_locations(c);
    FaultSet set;
    for (const auto &[index, pauli] : faults) {
        if (index >= locations.size()) throw std::invalid_argument("fault location out of range");
        if (pauli.num_qubits() != c.num_qubits()) throw std::invalid_argument("fault width mismatch");
        const auto &loc = locations[index];
        const Element &e = c.layers()[loc.layer][loc.element];
        for (size_t q : pauli.support()) {
            if (q != e.q0 && !(e.kind == OpKind::CNOT && q == e.q1)) {
                throw std::invalid_argument(
                    "fault at location " + std::to_string(index) + " has support on qubit " +
                    std::to_string(q) + " outside its element");
            }
        }
        Fault f{index, pauli.get(e.q0), e.kind == OpKind::CNOT ? pauli.get(e.q1) : Pauli::I};
        set.faults.push_back(f);
    }
    set.measurement_flips.assign(measurement_flips.begin(), measurement_flips.end());
    return frame_run(c, set);
}

}  // namespace surfacelab
