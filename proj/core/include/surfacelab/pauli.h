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

#ifndef SURFACELAB_PAULI_H
#define SURFACELAB_PAULI_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace surfacelab {

/// Single-qubit Pauli letter. Bit 0 is the X component, bit 1 the Z component,
/// so Y = X|Z is the Hermitian Y.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline constexpr bool has_x(Pauli p) { return (static_cast<uint8_t>(p) & 1) != 0; }
inline constexpr bool has_z(Pauli p) { return (static_cast<uint8_t>(p) & 2) != 0; }
inline constexpr Pauli make_pauli(bool x, bool z) {
    return static_cast<Pauli>((x ? 1 : 0) | (z ? 2 : 0));
}
char pauli_char(Pauli p);

/// Clifford gates that Pauli strings can be conjugated through.
enum class CliffordGate : uint8_t { Identity, H, CNOT };

/// A phased tensor product of Pauli letters, i^phase * P_0 (x) ... (x) P_{n-1}.
///
/// Stored in the symplectic bit-pair encoding: one x bit and one z bit per qubit,
/// packed into 64-bit words. The phase is kept mod 4 in units of i so that
/// products are exact, including anti-Hermitian intermediate results.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(size_t num_qubits);

    /// Parses strings like "+XIZ", "-iY_Z", "XX". '_' and 'I' both mean identity.
    static PauliString from_str(std::string_view text);
    /// Single non-identity letter at `qubit` on an otherwise identity string.
    static PauliString single(size_t num_qubits, size_t qubit, Pauli letter);
    /// Identity except `letter` on each listed qubit.
    static PauliString on(size_t num_qubits, std::span<const size_t> qubits, Pauli letter);

    size_t num_qubits() const { return num_qubits_; }
    /// 0: +1, 1: +i, 2: -1, 3: -i.
    uint8_t phase() const { return phase_; }
    void set_phase(uint8_t phase) { phase_ = phase & 3; }

    Pauli get(size_t qubit) const;
    void set(size_t qubit, Pauli letter);
    bool x(size_t qubit) const { return (xs_[qubit >> 6] >> (qubit & 63)) & 1; }
    bool z(size_t qubit) const { return (zs_[qubit >> 6] >> (qubit & 63)) & 1; }

    size_t weight() const;
    bool is_identity_up_to_phase() const;
    std::vector<size_t> support() const;

    /// In-place right multiplication: *this = *this * rhs. Throws on length mismatch.
    PauliString &operator*=(const PauliString &rhs);
    /// Letters and phase must both match.
    bool operator==(const PauliString &other) const = default;
    bool same_letters(const PauliString &other) const;

    /// Conjugation by Clifford gates: *this = U * this * U^dagger.
    void apply_h(size_t q);
    void apply_cnot(size_t control, size_t target);

    std::span<const uint64_t> x_words() const { return xs_; }
    std::span<const uint64_t> z_words() const { return zs_; }
    std::span<uint64_t> x_words_mut() { return xs_; }
    std::span<uint64_t> z_words_mut() { return zs_; }

    /// "+XIZ" style, using 'I' for identity; phases print as +, -, +i, -i.
    std::string str() const;

  private:
    size_t num_qubits_ = 0;
    uint8_t phase_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

/// Group product with the correct phase. Throws std::invalid_argument on length mismatch.
PauliString pauli_multiply(const PauliString &a, const PauliString &b);

/// True iff the two strings commute (symplectic inner product is zero).
/// Throws std::invalid_argument on length mismatch.
bool commutes(const PauliString &a, const PauliString &b);

/// Returns U p U^dagger for the given gate acting on `qubits`.
/// CNOT expects {control, target}; H and Identity expect one qubit.
PauliString conjugate_through_gate(const PauliString &p, CliffordGate gate, std::span<const size_t> qubits);

/// Resolves "CNOT", "CX", "H", "I" to a gate. Throws std::invalid_argument otherwise.
CliffordGate parse_gate_name(std::string_view name);

std::ostream &operator<<(std::ostream &out, const PauliString &p);

}  // namespace surfacelab

#endif  // SURFACELAB_PAULI_H
