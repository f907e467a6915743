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

#ifndef SURFACELAB_CODES_H
#define SURFACELAB_CODES_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfacelab/circuit.h"
#include "surfacelab/lattice.h"
#include "surfacelab/pauli.h"

namespace surfacelab {

/// Stabilizer code with one or more logical qubits.
struct StabilizerCode {
    std::string name;
    size_t n = 0;
    std::vector<PauliString> stabilizers;
    std::vector<PauliString> logical_x;
    std::vector<PauliString> logical_z;
    int distance = 0;

    /// Empty when generators commute pairwise, logicals commute with every
    /// generator, and X_L[i] anticommutes with Z_L[j] iff i == j.
    std::string problem() const;

    /// Bit i set iff the error anticommutes with stabilizer i. Needs <= 64 generators.
    uint64_t syndrome(const PauliString &error) const;

    /// Bit 2k: the operator anticommutes with Z_L[k] (acts as X_L[k]);
    /// bit 2k+1: anticommutes with X_L[k] (acts as Z_L[k]).
    uint64_t logical_action(const PauliString &op) const;

    nlohmann::json to_json() const;
};

enum class PauliFilter : uint8_t { All, XOnly, ZOnly };

/// Minimum weight of a Pauli (restricted by the filter) that commutes with
/// every stabilizer but acts nontrivially on the logical qubits. Exhaustive
/// search by increasing weight. Throws std::invalid_argument when n > 13.
int min_distance_bruteforce(const StabilizerCode &code, PauliFilter filter = PauliFilter::All);

/// Syndrome lookup table built from all errors up to a weight, first writer wins
/// in (weight, qubit, letter) order.
class LookupDecoder {
  public:
    LookupDecoder() = default;
    LookupDecoder(const StabilizerCode &code, PauliFilter filter, size_t max_weight = 1);

    /// Correction for a syndrome; identity for 0 and for unknown syndromes.
    PauliString decode(uint64_t syndrome) const;
    bool knows(uint64_t syndrome) const { return table_.contains(syndrome); }
    size_t size() const { return table_.size(); }
    /// True when every enumerated error got its own table entry.
    bool injective() const { return injective_; }

  private:
    size_t n_ = 0;
    std::map<uint64_t, PauliString> table_;
    bool injective_ = true;
};

/// A small code together with its syndrome-extraction circuit. Data qubits
/// come first (0..n-1), ancillas after. Stabilizer i is read out by the
/// measurement with tag syndrome_tags[i].
struct CodeCircuit {
    StabilizerCode code;
    Circuit circuit;
    std::vector<uint32_t> syndrome_tags;
    LookupDecoder decoder;

    /// Syndrome bits from a set of flipped measurement tags.
    uint64_t syndrome_from_flips(const std::vector<uint32_t> &flipped) const;
};

/// Three-bit repetition code (Z1Z2, Z2Z3) with 2 ancillas, 4 CNOTs and 2
/// measurements; the decoder corrects single X errors.
CodeCircuit repetition3();

/// Steane [[7,1,3]] code from the [7,4] Hamming parity checks. The syndrome
/// circuit uses 6 ancillas: X checks are read with H, CNOT ancilla -> data, H,
/// measure; Z checks with CNOT data -> ancilla, measure. The decoder corrects
/// all single-qubit X, Y and Z errors.
CodeCircuit steane7();

/// Encoder taking |0>^7 to the Steane logical |0>.
Circuit steane_encoding_circuit();

/// One layer of n CNOTs, control block qubit i -> target block qubit i.
Layer transversal_cnot(size_t n, size_t control_offset, size_t target_offset);

/// Effect of one single-location fault on a code circuit.
struct SingleFaultOutcome {
    size_t location = 0;
    Fault fault;
    /// True when the fault is a classical flip of measurement `location`'s outcome.
    bool measurement_flip = false;
    /// Syndrome reported by the faulty circuit.
    uint64_t syndrome = 0;
    /// Data-qubit error left behind by the fault.
    PauliString data_error;
    /// Logical action after one further ideal round of lookup decoding; all
    /// bits set when that round leaves a nonzero syndrome.
    uint64_t logical_action = 0;
};

/// Injects every non-identity Pauli at every location of `cc.circuit` (plus a
/// flip of every measurement), one fault at a time, and follows each with an
/// ideal round of error correction by the lookup decoder.
std::vector<SingleFaultOutcome> single_fault_survey(const CodeCircuit &cc);

/// Stabilizer code of a surface lattice over its data qubits (all checks,
/// including dependent ones on the torus).
StabilizerCode code_from_lattice(const SurfaceLattice &lat);

}  // namespace surfacelab

#endif  // SURFACELAB_CODES_H
