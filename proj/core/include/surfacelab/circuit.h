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

#ifndef SURFACELAB_CIRCUIT_H
#define SURFACELAB_CIRCUIT_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "surfacelab/pauli.h"

namespace surfacelab {

enum class OpKind : uint8_t { PrepZ, PrepX, CNOT, H, MeasureZ, MeasureX, Idle };

/// Noise-model category of a spacetime location.
enum class LocationKind : uint8_t { Prep, Gate1, Gate2, Measure, Idle };

LocationKind location_kind(OpKind kind);
const char *op_name(OpKind kind);
const char *location_kind_name(LocationKind kind);

/// One circuit element. `q1` is only meaningful for CNOT (the target);
/// `tag` is only meaningful for measurements.
struct Element {
    OpKind kind = OpKind::Idle;
    uint32_t q0 = 0;
    uint32_t q1 = 0;
    uint32_t tag = 0;

    size_t arity() const { return kind == OpKind::CNOT ? 2 : 1; }
    bool is_measurement() const { return kind == OpKind::MeasureZ || kind == OpKind::MeasureX; }
    bool operator==(const Element &) const = default;

    static Element prep_z(uint32_t q) { return {OpKind::PrepZ, q, 0, 0}; }
    static Element prep_x(uint32_t q) { return {OpKind::PrepX, q, 0, 0}; }
    static Element cnot(uint32_t c, uint32_t t) { return {OpKind::CNOT, c, t, 0}; }
    static Element h(uint32_t q) { return {OpKind::H, q, 0, 0}; }
    static Element measure_z(uint32_t q, uint32_t tag) { return {OpKind::MeasureZ, q, 0, tag}; }
    static Element measure_x(uint32_t q, uint32_t tag) { return {OpKind::MeasureX, q, 0, tag}; }
    static Element idle(uint32_t q) { return {OpKind::Idle, q, 0, 0}; }
};

using Layer = std::vector<Element>;

enum class QubitRole : uint8_t { Data, Ancilla };

/// A timestepped Clifford circuit. Each layer is one timestep; every qubit is
/// expected to appear exactly once per layer (explicit Idle), which is what
/// makes the fault-location enumeration complete.
///
/// Round metadata (`round_starts`) and qubit roles are optional annotations
/// used by noise presets that only act between syndrome rounds.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(size_t num_qubits) : num_qubits_(num_qubits) {}

    size_t num_qubits() const { return num_qubits_; }
    const std::vector<Layer> &layers() const { return layers_; }
    size_t num_layers() const { return layers_.size(); }
    size_t num_elements() const;
    size_t num_measurements() const;

    /// Appends a layer; any qubit not mentioned receives an explicit Idle.
    /// Throws std::invalid_argument if a qubit appears twice or is out of range.
    void append_layer(Layer layer);
    /// Appends a layer verbatim without Idle padding (used by the parser and tests).
    void append_raw_layer(Layer layer);
    /// Appends all layers of `other` (qubit counts must match); round marks and
    /// roles of `other` are ignored.
    void append(const Circuit &other);

    /// Marks the next appended layer as the first layer of a syndrome round.
    void mark_round_start();
    const std::vector<size_t> &round_starts() const { return round_starts_; }
    void set_round_starts(std::vector<size_t> starts) { round_starts_ = std::move(starts); }

    void set_roles(std::vector<QubitRole> roles);
    const std::vector<QubitRole> &roles() const { return roles_; }
    bool has_roles() const { return roles_.size() == num_qubits_; }
    bool is_data(size_t q) const { return has_roles() && roles_[q] == QubitRole::Data; }

    /// Next unused measurement tag (tags are assigned by builders, not enforced unique here).
    uint32_t next_tag() { return next_tag_++; }
    void set_next_tag(uint32_t tag) { next_tag_ = tag; }

    /// Number of elements of the given kind across all layers.
    size_t count(OpKind kind) const;

    bool operator==(const Circuit &other) const;

  private:
    size_t num_qubits_ = 0;
    std::vector<Layer> layers_;
    std::vector<size_t> round_starts_;
    std::vector<QubitRole> roles_;
    uint32_t next_tag_ = 0;
};

/// A spacetime position where a fault may occur.
struct FaultLocation {
    size_t index = 0;  // position in enumerate_locations order
    size_t layer = 0;
    size_t element = 0;
    LocationKind kind = LocationKind::Idle;
};

/// A Pauli fault attached to a location. `first` acts on the element's first
/// qubit (control for CNOT), `second` on the CNOT target; `second` must be I
/// for single-qubit elements. The fault acts immediately after the element.
struct Fault {
    size_t location = 0;
    Pauli first = Pauli::I;
    Pauli second = Pauli::I;
    bool operator==(const Fault &) const = default;
};

/// Faults in a shot plus classical measurement flips (by measurement tag).
struct FaultSet {
    std::vector<Fault> faults;
    std::vector<uint32_t> measurement_flips;

    bool empty() const { return faults.empty() && measurement_flips.empty(); }
};

/// Expands a local fault into a full-width Pauli string.
PauliString fault_pauli(const Circuit &c, const FaultLocation &loc, const Fault &f);

/// Every element of every layer, layer-major then element order.
std::vector<FaultLocation> enumerate_locations(const Circuit &c);

/// True iff within every layer the elements touch pairwise-disjoint qubits.
bool validate_layers(const Circuit &c);

/// Full structural check: disjoint layers, indices in range, every qubit covered
/// in every layer, unique measurement tags. Returns an empty string when valid,
/// otherwise a description of the first problem.
std::string check_circuit(const Circuit &c);

}  // namespace surfacelab

#endif  // SURFACELAB_CIRCUIT_H
