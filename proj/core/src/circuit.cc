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

#include "surfacelab/circuit.h"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace surfacelab {

LocationKind location_kind(OpKind kind) {
    switch (kind) {
        case OpKind::PrepZ:
        case OpKind::PrepX: return LocationKind::Prep;
        case OpKind::CNOT: return LocationKind::Gate2;
        case OpKind::H: return LocationKind::Gate1;
        case OpKind::MeasureZ:
        case OpKind::MeasureX: return LocationKind::Measure;
        case OpKind::Idle: return LocationKind::Idle;
    }
    return LocationKind::Idle;
}

const char *op_name(OpKind kind) {
    switch (kind) {
        case OpKind::PrepZ: return "RZ";
        case OpKind::PrepX: return "RX";
        case OpKind::CNOT: return "CX";
        case OpKind::H: return "H";
        case OpKind::MeasureZ: return "MZ";
        case OpKind::MeasureX: return "MX";
        case OpKind::Idle: return "I";
    }
    return "?";
}

const char *location_kind_name(LocationKind kind) {
    switch (kind) {
        case LocationKind::Prep: return "prep";
        case LocationKind::Gate1: return "gate1";
        case LocationKind::Gate2: return "gate2";
        case LocationKind::Measure: return "measure";
        case LocationKind::Idle: return "idle";
    }
    return "?";
}

size_t Circuit::num_elements() const {
    size_t total = 0;
    for (const auto &layer : layers_) total += layer.size();
    return total;
}

size_t Circuit::num_measurements() const {
    size_t total = 0;
    for (const auto &layer : layers_) {
        for (const auto &e : layer) total += e.is_measurement();
    }
    return total;
}

size_t Circuit::count(OpKind kind) const {
    size_t total = 0;
    for (const auto &layer : layers_) {
        for (const auto &e : layer) total += e.kind == kind;
    }
    return total;
}

void Circuit::append_layer(Layer layer) {
    std::vector<uint8_t> used(num_qubits_, 0);
    auto touch = [&](uint32_t q) {
        if (q >= num_qubits_) {
            throw std::invalid_argument("qubit " + std::to_string(q) + " out of range");
        }
        if (used[q]) {
            throw std::invalid_argument("qubit " + std::to_string(q) + " used twice in one layer");
        }
        used[q] = 1;
    };
    for (const auto &e : layer) {
        touch(e.q0);
        if (e.kind == OpKind::CNOT) touch(e.q1);
    }
    for (uint32_t q = 0; q < num_qubits_; ++q) {
        if (!used[q]) layer.push_back(Element::idle(q));
    }
    layers_.push_back(std::move(layer));
}

void Circuit::append_raw_layer(Layer layer) { layers_.push_back(std::move(layer)); }

void Circuit::append(const Circuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("cannot append circuits of different widths");
    }
    for (const auto &layer : other.layers_) layers_.push_back(layer);
}

void Circuit::mark_round_start() { round_starts_.push_back(layers_.size()); }

void Circuit::set_roles(std::vector<QubitRole> roles) {
    if (roles.size() != num_qubits_) {
        throw std::invalid_argument("role vector size must equal qubit count");
    }
    roles_ = std::move(roles);
}

bool Circuit::operator==(const Circuit &other) const {
    return num_qubits_ == other.num_qubits_ && layers_ == other.layers_ &&
           round_starts_ == other.round_starts_ && roles_ == other.roles_;
}

std::vector<FaultLocation> enumerate_locations(const Circuit &c) {
    std::vector<FaultLocation> out;
    out.reserve(c.num_elements());
    const auto &layers = c.layers();
    for (size_t t = 0; t < layers.size(); ++t) {
        for (size_t e = 0; e < layers[t].size(); ++e) {
            out.push_back({out.size(), t, e, location_kind(layers[t][e].kind)});
        }
    }
    return out;
}

PauliString fault_pauli(const Circuit &c, const FaultLocation &loc, const Fault &f) {
    const Element &e = c.layers().at(loc.layer).at(loc.element);
    PauliString p(c.num_qubits());
    p.set(e.q0, f.first);
    if (e.kind == OpKind::CNOT) {
        p.set(e.q1, f.second);
    } else if (f.second != Pauli::I) {
        throw std::invalid_argument("single-qubit location carries a two-qubit fault");
    }
    return p;
}

bool validate_layers(const Circuit &c) {
    std::vector<size_t> stamp(c.num_qubits(), SIZE_MAX);
    const auto &layers = c.layers();
    for (size_t t = 0; t < layers.size(); ++t) {
        for (const auto &e : layers[t]) {
            uint32_t qs[2] = {e.q0, e.q1};
            for (size_t k = 0; k < e.arity(); ++k) {
                if (qs[k] >= c.num_qubits()) return false;
                if (stamp[qs[k]] == t) return false;
                stamp[qs[k]] = t;
            }
        }
    }
    return true;
}

std::string check_circuit(const Circuit &c) {
    if (!validate_layers(c)) {
        return "a layer reuses a qubit or indexes out of range";
    }
    std::unordered_set<uint32_t> tags;
    const auto &layers = c.layers();
    for (size_t t = 0; t < layers.size(); ++t) {
        std::vector<uint8_t> seen(c.num_qubits(), 0);
        for (const auto &e : layers[t]) {
            seen[e.q0] = 1;
            if (e.kind == OpKind::CNOT) {
                if (e.q0 == e.q1) return "CNOT with identical control and target in layer " + std::to_string(t);
                seen[e.q1] = 1;
            }
            if (e.is_measurement() && !tags.insert(e.tag).second) {
                return "duplicate measurement tag " + std::to_string(e.tag);
            }
        }
        if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
            return "layer " + std::to_string(t) + " does not cover every qubit";
        }
    }
    return {};
}

}  // namespace surfacelab
