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

#ifndef SURFACELAB_TABLEAU_H
#define SURFACELAB_TABLEAU_H

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "surfacelab/circuit.h"
#include "surfacelab/pauli.h"

namespace surfacelab {

/// Stabilizer tableau with destabilizers (Aaronson-Gottesman layout).
///
/// Rows 0..n-1 are destabilizers and rows n..2n-1 stabilizers. Stabilizer signs
/// are tracked exactly; destabilizer phases are irrelevant and kept at +1.
class StabilizerTableau {
  public:
    /// The all-|0> state.
    explicit StabilizerTableau(size_t num_qubits);

    /// The state stabilized by `stabilizers` (n independent commuting Hermitian
    /// operators, signs taken from their phases).
    static StabilizerTableau from_stabilizers(std::span<const PauliString> stabilizers);

    size_t num_qubits() const { return n_; }
    const PauliString &destabilizer(size_t i) const { return rows_[i]; }
    const PauliString &stabilizer(size_t i) const { return rows_[n_ + i]; }
    std::vector<PauliString> stabilizers() const;

    void h(size_t q);
    void cnot(size_t control, size_t target);
    /// Applies a Pauli operator to the state (flips signs of anticommuting stabilizers).
    void apply_pauli(const PauliString &p);

    /// Returns +1 / -1 when the outcome of measuring `p` is determined, 0 when random.
    int expectation(const PauliString &p) const;
    bool is_stabilized_by(const PauliString &p) const { return expectation(p) == 1; }

    /// Measures a Hermitian Pauli observable. Returns true for outcome -1.
    bool measure(const PauliString &p, std::mt19937_64 &rng);
    bool measure_z(size_t q, std::mt19937_64 &rng);
    bool measure_x(size_t q, std::mt19937_64 &rng);
    void reset_z(size_t q, std::mt19937_64 &rng);
    void reset_x(size_t q, std::mt19937_64 &rng);

    /// Stabilizers pairwise commute, are independent, and pair symplectically
    /// with the destabilizers.
    bool check_invariants() const;

  private:
    size_t n_;
    std::vector<PauliString> rows_;
};

/// Largest width accepted by tableau_run; the oracle is meant for small codes.
inline constexpr size_t kTableauOracleMaxQubits = 32;

struct TableauRunResult {
    StabilizerTableau final_state;
    /// Measurement outcome (true = -1) keyed by measurement tag.
    std::map<uint32_t, bool> outcomes;
};

/// Executes `circuit` exactly on `initial`. Random outcomes draw from a
/// generator seeded with `seed`, so two runs with the same seed take the same
/// random branches. Optional faults are applied right after their location;
/// measurement flips invert the recorded outcome.
///
/// Throws std::invalid_argument when the circuit is wider than the tableau or
/// than kTableauOracleMaxQubits.
TableauRunResult tableau_run(
    const StabilizerTableau &initial,
    const Circuit &circuit,
    uint64_t seed,
    const FaultSet &faults = {});

}  // namespace surfacelab

#endif  // SURFACELAB_TABLEAU_H
