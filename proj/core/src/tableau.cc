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

#include "surfacelab/tableau.h"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "surfacelab/symplectic.h"

namespace surfacelab {

StabilizerTableau::StabilizerTableau(size_t num_qubits) : n_(num_qubits) {
    rows_.reserve(2 * n_);
    for (size_t q = 0; q < n_; ++q) rows_.push_back(PauliString::single(n_, q, Pauli::X));
    for (size_t q = 0; q < n_; ++q) rows_.push_back(PauliString::single(n_, q, Pauli::Z));
}

StabilizerTableau StabilizerTableau::from_stabilizers(std::span<const PauliString> stabilizers) {
    for (const auto &s : stabilizers) {
        if (s.phase() & 1) throw std::invalid_argument("stabilizer generators must be Hermitian");
    }
    auto destab = find_destabilizers(stabilizers);
    StabilizerTableau t(stabilizers.size());
    for (size_t i = 0; i < t.n_; ++i) {
        t.rows_[i] = destab[i];
        t.rows_[t.n_ + i] = stabilizers[i];
    }
    return t;
}

std::vector<PauliString> StabilizerTableau::stabilizers() const {
    return {rows_.begin() + static_cast<std::ptrdiff_t>(n_), rows_.end()};
}

void StabilizerTableau::h(size_t q) {
    for (auto &row : rows_) row.apply_h(q);
    for (size_t i = 0; i < n_; ++i) rows_[i].set_phase(0);
}

void StabilizerTableau::cnot(size_t control, size_t target) {
    for (auto &row : rows_) row.apply_cnot(control, target);
    for (size_t i = 0; i < n_; ++i) rows_[i].set_phase(0);
}

void StabilizerTableau::apply_pauli(const PauliString &p) {
    for (size_t i = n_; i < 2 * n_; ++i) {
        if (!commutes(rows_[i], p)) rows_[i].set_phase(rows_[i].phase() + 2);
    }
}

int StabilizerTableau::expectation(const PauliString &p) const {
    for (size_t i = n_; i < 2 * n_; ++i) {
        if (!commutes(rows_[i], p)) return 0;
    }
    PauliString acc(n_);
    for (size_t i = 0; i < n_; ++i) {
        if (!commutes(rows_[i], p)) acc *= rows_[n_ + i];
    }
    if (!acc.same_letters(p)) {
        throw std::logic_error("tableau invariant broken: commuting Pauli not in stabilizer group");
    }
    uint8_t rel = static_cast<uint8_t>((acc.phase() - p.phase()) & 3);
    return rel == 0 ? 1 : -1;
}

bool StabilizerTableau::measure(const PauliString &p, std::mt19937_64 &rng) {
    if (p.num_qubits() != n_) throw std::invalid_argument("observable width mismatch");
    if (p.phase() & 1) throw std::invalid_argument("observable must be Hermitian");
    size_t pivot = SIZE_MAX;
    for (size_t i = n_; i < 2 * n_; ++i) {
        if (!commutes(rows_[i], p)) {
            pivot = i;
            break;
        }
    }
    if (pivot == SIZE_MAX) {
        return expectation(p) == -1;
    }
    for (size_t i = 0; i < 2 * n_; ++i) {
        if (i != pivot && i != pivot - n_ && !commutes(rows_[i], p)) {
            rows_[i] *= rows_[pivot];
            if (i < n_) rows_[i].set_phase(0);
        }
    }
    rows_[pivot - n_] = rows_[pivot];
    rows_[pivot - n_].set_phase(0);
    bool outcome = (rng() & 1) != 0;
    rows_[pivot] = p;
    if (outcome) rows_[pivot].set_phase(p.phase() + 2);
    return outcome;
}

bool StabilizerTableau::measure_z(size_t q, std::mt19937_64 &rng) {
    return measure(PauliString::single(n_, q, Pauli::Z), rng);
}

bool StabilizerTableau::measure_x(size_t q, std::mt19937_64 &rng) {
    return measure(PauliString::single(n_, q, Pauli::X), rng);
}

void StabilizerTableau::reset_z(size_t q, std::mt19937_64 &rng) {
    if (measure_z(q, rng)) apply_pauli(PauliString::single(n_, q, Pauli::X));
}

void StabilizerTableau::reset_x(size_t q, std::mt19937_64 &rng) {
    if (measure_x(q, rng)) apply_pauli(PauliString::single(n_, q, Pauli::Z));
}

bool StabilizerTableau::check_invariants() const {
    for (size_t i = 0; i < n_; ++i) {
        for (size_t j = 0; j < n_; ++j) {
            if (!commutes(rows_[n_ + i], rows_[n_ + j])) return false;
            if (!commutes(rows_[i], rows_[j])) return false;
            bool anti = !commutes(rows_[i], rows_[n_ + j]);
            if (anti != (i == j)) return false;
        }
    }
    return symplectic_rank(rows_) == 2 * n_;
}

TableauRunResult tableau_run(
    const StabilizerTableau &initial,
    const Circuit &circuit,
    uint64_t seed,
    const FaultSet &faults) {
    if (circuit.num_qubits() > kTableauOracleMaxQubits) {
        throw std::invalid_argument("tableau oracle is limited to 32 qubits");
    }
    if (circuit.num_qubits() != initial.num_qubits()) {
        throw std::invalid_argument("circuit width does not match tableau width");
    }
    std::unordered_map<size_t, std::vector<const Fault *>> by_location;
    for (const auto &f : faults.faults) by_location[f.location].push_back(&f);
    std::unordered_set<uint32_t> flips(faults.measurement_flips.begin(), faults.measurement_flips.end());

    std::mt19937_64 rng(seed);
    TableauRunResult result{initial, {}};
    StabilizerTableau &t = result.final_state;
    size_t n = circuit.num_qubits();
    size_t index = 0;
    for (size_t layer = 0; layer < circuit.num_layers(); ++layer) {
        const auto &elements = circuit.layers()[layer];
        for (size_t e = 0; e < elements.size(); ++e, ++index) {
            const Element &el = elements[e];
            if (el.q0 >= n || (el.kind == OpKind::CNOT && el.q1 >= n)) {
                throw std::invalid_argument("qubit index out of range");
            }
            switch (el.kind) {
                case OpKind::PrepZ: t.reset_z(el.q0, rng); break;
                case OpKind::PrepX: t.reset_x(el.q0, rng); break;
                case OpKind::CNOT: t.cnot(el.q0, el.q1); break;
                case OpKind::H: t.h(el.q0); break;
                case OpKind::MeasureZ:
                case OpKind::MeasureX: {
                    bool m = el.kind == OpKind::MeasureZ ? t.measure_z(el.q0, rng) : t.measure_x(el.q0, rng);
                    result.outcomes[el.tag] = m ^ flips.contains(el.tag);
                    break;
                }
                case OpKind::Idle: break;
            }
            auto it = by_location.find(index);
            if (it != by_location.end()) {
                FaultLocation loc{index, layer, e, location_kind(el.kind)};
                for (const Fault *f : it->second) t.apply_pauli(fault_pauli(circuit, loc, *f));
            }
        }
    }
    return result;
}

}  // namespace surfacelab
