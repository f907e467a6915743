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

#include "surfacelab/symplectic.h"

#include <stdexcept>

namespace surfacelab {

namespace {

struct BitVec {
    std::vector<uint64_t> words;

    explicit BitVec(size_t bits = 0) : words((bits + 63) / 64, 0) {}
    bool get(size_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
    void flip(size_t i) { words[i >> 6] ^= uint64_t{1} << (i & 63); }
    void set(size_t i) { words[i >> 6] |= uint64_t{1} << (i & 63); }
    void operator^=(const BitVec &o) {
        for (size_t w = 0; w < words.size(); ++w) words[w] ^= o.words[w];
    }
    bool any_below(size_t bits) const {
        for (size_t i = 0; i < bits; ++i) {
            if (get(i)) return true;
        }
        return false;
    }
};

// Layout: [x_0..x_{n-1}, z_0..z_{n-1}, extra...]
BitVec pack(const PauliString &p, size_t extra) {
    size_t n = p.num_qubits();
    BitVec v(2 * n + extra);
    for (size_t q = 0; q < n; ++q) {
        if (p.x(q)) v.set(q);
        if (p.z(q)) v.set(n + q);
    }
    return v;
}

void require_uniform(std::span<const PauliString> ops, size_t n) {
    for (const auto &op : ops) {
        if (op.num_qubits() != n) throw std::invalid_argument("operators have mismatched lengths");
    }
}

// Row-reduces `rows` on the first `cols` columns; returns pivot column per kept row.
std::vector<size_t> eliminate(std::vector<BitVec> &rows, size_t cols) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t found = r;
        while (found < rows.size() && !rows[found].get(c)) ++found;
        if (found == rows.size()) continue;
        std::swap(rows[r], rows[found]);
        for (size_t k = 0; k < rows.size(); ++k) {
            if (k != r && rows[k].get(c)) rows[k] ^= rows[r];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

}  // namespace

size_t symplectic_rank(std::span<const PauliString> ops) {
    if (ops.empty()) return 0;
    size_t n = ops[0].num_qubits();
    require_uniform(ops, n);
    std::vector<BitVec> rows;
    rows.reserve(ops.size());
    for (const auto &op : ops) rows.push_back(pack(op, 0));
    return eliminate(rows, 2 * n).size();
}

std::optional<std::vector<size_t>> decompose(std::span<const PauliString> basis, const PauliString &target) {
    size_t n = target.num_qubits();
    require_uniform(basis, n);
    size_t m = basis.size();
    std::vector<BitVec> rows;
    rows.reserve(m);
    for (size_t i = 0; i < m; ++i) {
        rows.push_back(pack(basis[i], m));
        rows.back().set(2 * n + i);
    }
    auto pivots = eliminate(rows, 2 * n);
    BitVec t = pack(target, m);
    for (size_t k = 0; k < pivots.size(); ++k) {
        if (t.get(pivots[k])) t ^= rows[k];
    }
    if (t.any_below(2 * n)) return std::nullopt;
    std::vector<size_t> used;
    for (size_t i = 0; i < m; ++i) {
        if (t.get(2 * n + i)) used.push_back(i);
    }
    return used;
}

std::vector<PauliString> find_destabilizers(std::span<const PauliString> stabilizers) {
    size_t n = stabilizers.empty() ? 0 : stabilizers[0].num_qubits();
    if (stabilizers.size() != n) {
        throw std::invalid_argument("need exactly n stabilizers for n qubits");
    }
    require_uniform(stabilizers, n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (!commutes(stabilizers[i], stabilizers[j])) {
                throw std::invalid_argument("stabilizer generators do not commute");
            }
        }
    }
    // Row j of W is s_j with halves swapped, so W d = e_i encodes <d, s_j> = delta_ij.
    std::vector<BitVec> rows;
    for (size_t j = 0; j < n; ++j) {
        BitVec v(2 * n + n);
        for (size_t q = 0; q < n; ++q) {
            if (stabilizers[j].z(q)) v.set(q);
            if (stabilizers[j].x(q)) v.set(n + q);
        }
        v.set(2 * n + j);
        rows.push_back(std::move(v));
    }
    auto pivots = eliminate(rows, 2 * n);
    if (pivots.size() != n) {
        throw std::invalid_argument("stabilizer generators are not independent");
    }
    std::vector<PauliString> destab;
    destab.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        PauliString d(n);
        for (size_t k = 0; k < n; ++k) {
            if (!rows[k].get(2 * n + i)) continue;
            size_t c = pivots[k];
            if (c < n) {
                d.set(c, make_pauli(true, d.z(c)));
            } else {
                d.set(c - n, make_pauli(d.x(c - n), true));
            }
        }
        destab.push_back(std::move(d));
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < i; ++j) {
            if (!commutes(destab[i], destab[j])) destab[i] *= stabilizers[j];
        }
        destab[i].set_phase(0);
    }
    return destab;
}

}  // namespace surfacelab
