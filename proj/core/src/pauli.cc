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

#include "surfacelab/pauli.h"

#include <bit>
#include <ostream>
#include <stdexcept>

namespace surfacelab {

namespace {

size_t num_words(size_t n) { return (n + 63) / 64; }

void require_same_length(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(
            "Pauli string length mismatch: " + std::to_string(a.num_qubits()) + " vs " +
            std::to_string(b.num_qubits()));
    }
}

}  // namespace

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

PauliString::PauliString(size_t num_qubits)
    : num_qubits_(num_qubits), xs_(num_words(num_qubits), 0), zs_(num_words(num_qubits), 0) {}

PauliString PauliString::from_str(std::string_view text) {
    uint8_t phase = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        if (text[0] == '-') phase = 2;
        text.remove_prefix(1);
    }
    if (!text.empty() && text[0] == 'i') {
        phase = (phase + 1) & 3;
        text.remove_prefix(1);
    }
    PauliString result(text.size());
    for (size_t q = 0; q < text.size(); ++q) {
        switch (text[q]) {
            case 'I':
            case '_': break;
            case 'X': result.set(q, Pauli::X); break;
            case 'Y': result.set(q, Pauli::Y); break;
            case 'Z': result.set(q, Pauli::Z); break;
            default:
                throw std::invalid_argument("bad Pauli character '" + std::string(1, text[q]) + "'");
        }
    }
    result.phase_ = phase;
    return result;
}

PauliString PauliString::single(size_t num_qubits, size_t qubit, Pauli letter) {
    PauliString result(num_qubits);
    result.set(qubit, letter);
    return result;
}

PauliString PauliString::on(size_t num_qubits, std::span<const size_t> qubits, Pauli letter) {
    PauliString result(num_qubits);
    for (size_t q : qubits) {
        result.set(q, letter);
    }
    return result;
}

Pauli PauliString::get(size_t qubit) const {
    if (qubit >= num_qubits_) {
        throw std::out_of_range("qubit index out of range");
    }
    return make_pauli(x(qubit), z(qubit));
}

void PauliString::set(size_t qubit, Pauli letter) {
    if (qubit >= num_qubits_) {
        throw std::out_of_range("qubit index out of range");
    }
    uint64_t bit = uint64_t{1} << (qubit & 63);
    size_t w = qubit >> 6;
    xs_[w] = has_x(letter) ? (xs_[w] | bit) : (xs_[w] & ~bit);
    zs_[w] = has_z(letter) ? (zs_[w] | bit) : (zs_[w] & ~bit);
}

size_t PauliString::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < xs_.size(); ++w) {
        total += std::popcount(xs_[w] | zs_[w]);
    }
    return total;
}

bool PauliString::is_identity_up_to_phase() const {
    for (size_t w = 0; w < xs_.size(); ++w) {
        if (xs_[w] | zs_[w]) return false;
    }
    return true;
}

std::vector<size_t> PauliString::support() const {
    std::vector<size_t> out;
    for (size_t w = 0; w < xs_.size(); ++w) {
        uint64_t bits = xs_[w] | zs_[w];
        while (bits) {
            out.push_back(w * 64 + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
    return out;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    require_same_length(*this, rhs);
    // Per qubit: X*Y = iZ, Y*Z = iX, Z*X = iY, and the reversed orders give -i.
    int plus = 0;
    int minus = 0;
    for (size_t w = 0; w < xs_.size(); ++w) {
        uint64_t x1 = xs_[w], z1 = zs_[w], x2 = rhs.xs_[w], z2 = rhs.zs_[w];
        uint64_t ax = x1 & ~z1, ay = x1 & z1, az = ~x1 & z1;
        uint64_t bx = x2 & ~z2, by = x2 & z2, bz = ~x2 & z2;
        plus += std::popcount((ax & by) | (ay & bz) | (az & bx));
        minus += std::popcount((ay & bx) | (az & by) | (ax & bz));
        xs_[w] = x1 ^ x2;
        zs_[w] = z1 ^ z2;
    }
    phase_ = static_cast<uint8_t>((phase_ + rhs.phase_ + plus + 3 * minus) & 3);
    return *this;
}

bool PauliString::same_letters(const PauliString &other) const {
    return num_qubits_ == other.num_qubits_ && xs_ == other.xs_ && zs_ == other.zs_;
}

void PauliString::apply_h(size_t q) {
    bool xb = x(q), zb = z(q);
    if (xb && zb) phase_ = (phase_ + 2) & 3;
    set(q, make_pauli(zb, xb));
}

void PauliString::apply_cnot(size_t control, size_t target) {
    if (control == target) {
        throw std::invalid_argument("CNOT control and target must differ");
    }
    bool xc = x(control), zc = z(control), xt = x(target), zt = z(target);
    // Sign rule for Hermitian-Y letters: flips iff xc & zt & (xt == zc).
    if (xc && zt && (xt == zc)) phase_ = (phase_ + 2) & 3;
    set(target, make_pauli(xt ^ xc, zt));
    set(control, make_pauli(xc, zc ^ zt));
}

std::string PauliString::str() const {
    static constexpr const char *kPhase[] = {"+", "+i", "-", "-i"};
    std::string out = kPhase[phase_];
    out.reserve(out.size() + num_qubits_);
    for (size_t q = 0; q < num_qubits_; ++q) {
        out.push_back(pauli_char(get(q)));
    }
    return out;
}

PauliString pauli_multiply(const PauliString &a, const PauliString &b) {
    PauliString out = a;
    out *= b;
    return out;
}

bool commutes(const PauliString &a, const PauliString &b) {
    require_same_length(a, b);
    auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
    uint64_t acc = 0;
    for (size_t w = 0; w < ax.size(); ++w) {
        acc ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
    }
    return (std::popcount(acc) & 1) == 0;
}

PauliString conjugate_through_gate(const PauliString &p, CliffordGate gate, std::span<const size_t> qubits) {
    PauliString out = p;
    for (size_t q : qubits) {
        if (q >= p.num_qubits()) {
            throw std::out_of_range("gate qubit index out of range");
        }
    }
    switch (gate) {
        case CliffordGate::Identity:
            if (qubits.size() != 1) throw std::invalid_argument("identity takes one qubit");
            break;
        case CliffordGate::H:
            if (qubits.size() != 1) throw std::invalid_argument("H takes one qubit");
            out.apply_h(qubits[0]);
            break;
        case CliffordGate::CNOT:
            if (qubits.size() != 2) throw std::invalid_argument("CNOT takes two qubits");
            if (qubits[0] == qubits[1]) throw std::invalid_argument("CNOT control and target must differ");
            out.apply_cnot(qubits[0], qubits[1]);
            break;
    }
    return out;
}

CliffordGate parse_gate_name(std::string_view name) {
    if (name == "CNOT" || name == "CX") return CliffordGate::CNOT;
    if (name == "H") return CliffordGate::H;
    if (name == "I" || name == "IDLE" || name == "identity") return CliffordGate::Identity;
    throw std::invalid_argument("unsupported gate '" + std::string(name) + "'");
}

std::ostream &operator<<(std::ostream &out, const PauliString &p) { return out << p.str(); }

}  // namespace surfacelab
