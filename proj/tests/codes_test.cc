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


#include "surfacelab/codes.h"

#include <algorithm>
#include <bitset>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "surfacelab/frame.h"
#include "surfacelab/lattice.h"

using namespace surfacelab;

namespace {

// Rank over GF(2) of operators written as 2n-bit rows, by plain elimination.
size_t gf2_rank(const std::vector<PauliString> &ops) {
    if (ops.empty()) return 0;
    const size_t n = ops[0].num_qubits();
    std::vector<std::vector<uint8_t>> rows;
    for (const auto &p : ops) {
        std::vector<uint8_t> r(2 * n);
        for (size_t q = 0; q < n; ++q) {
            r[q] = p.x(q);
            r[n + q] = p.z(q);
        }
        rows.push_back(r);
    }
    size_t rank = 0;
    for (size_t col = 0; col < 2 * n && rank < rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && !rows[piv][col]) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i != rank && rows[i][col]) {
                for (size_t k = 0; k < 2 * n; ++k) rows[i][k] ^= rows[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

// Index of the data-idle location of qubit q in the first layer.
size_t first_layer_location(const Circuit &c, uint32_t q) {
    const Layer &l = c.layers()[0];
    for (size_t i = 0; i < l.size(); ++i) {
        if (l[i].kind == OpKind::Idle && l[i].q0 == q) return i;
    }
    ADD_FAILURE() << "no idle for qubit " << q;
    return 0;
}

}  // namespace

TEST(Repetition, CircuitShape) {
    auto cc = repetition3();
    EXPECT_EQ(cc.code.problem(), "");
    EXPECT_EQ(cc.circuit.num_qubits(), 5u);
    EXPECT_EQ(cc.circuit.count(OpKind::CNOT), 4u);
    EXPECT_EQ(cc.circuit.num_measurements(), 2u);
    EXPECT_TRUE(validate_layers(cc.circuit));
    EXPECT_EQ(min_distance_bruteforce(cc.code, PauliFilter::XOnly), 3);
}

TEST(Repetition, LookupDecodesSingleXErrors) {
    auto cc = repetition3();
    // Syndrome bit i is set iff X_q anticommutes with stabilizer i.
    const uint64_t expected[3] = {0b01, 0b11, 0b10};
    for (uint32_t q = 0; q < 3; ++q) {
        FaultSet fs;
        fs.faults.push_back({first_layer_location(cc.circuit, q), Pauli::X, Pauli::I});
        auto run = frame_run(cc.circuit, fs);
        uint64_t s = cc.syndrome_from_flips(run.flipped);
        EXPECT_EQ(s, expected[q]) << q;
        EXPECT_EQ(cc.decoder.decode(s), PauliString::single(3, q, Pauli::X));
    }
    EXPECT_EQ(cc.decoder.decode(0), PauliString(3));
}

TEST(Steane, GeneratorsAndDistance) {
    auto cc = steane7();
    EXPECT_EQ(cc.code.problem(), "");
    ASSERT_EQ(cc.code.stabilizers.size(), 6u);
    EXPECT_EQ(gf2_rank(cc.code.stabilizers), 6u);
    EXPECT_EQ(min_distance_bruteforce(cc.code), 3);
    EXPECT_EQ(cc.circuit.num_qubits(), 13u);
    EXPECT_EQ(cc.circuit.count(OpKind::H), 6u);
    EXPECT_EQ(cc.circuit.count(OpKind::CNOT), 24u);
    EXPECT_TRUE(validate_layers(cc.circuit));
}

TEST(Steane, CircuitSyndromesOfAllSingleErrorsAreDistinctAndDecoded) {
    auto cc = steane7();
    // Column q of the Hamming parity-check matrix is the binary expansion of q+1.
    std::set<uint64_t> seen;
    for (uint32_t q = 0; q < 7; ++q) {
        const uint64_t col = q + 1;
        for (Pauli letter : {Pauli::X, Pauli::Y, Pauli::Z}) {
            FaultSet fs;
            fs.faults.push_back({first_layer_location(cc.circuit, q), letter, Pauli::I});
            auto run = frame_run(cc.circuit, fs);
            uint64_t s = cc.syndrome_from_flips(run.flipped);
            // X checks (bits 0..2) see Z components, Z checks (bits 3..5) see X components.
            uint64_t want = (has_z(letter) ? col : 0) | (has_x(letter) ? col << 3 : 0);
            EXPECT_EQ(s, want) << q << pauli_char(letter);
            EXPECT_TRUE(seen.insert(s).second);
            auto fix = cc.decoder.decode(s);
            EXPECT_TRUE(fix.same_letters(PauliString::single(7, q, letter)));
        }
    }
    EXPECT_EQ(seen.size(), 21u);
    EXPECT_EQ(seen.count(0), 0u);
    EXPECT_TRUE(cc.decoder.injective());
}

TEST(Steane, ZeroErrorHasZeroSyndrome) {
    auto cc = steane7();
    EXPECT_TRUE(frame_run(cc.circuit, FaultSet{}).flipped.empty());
    EXPECT_EQ(cc.decoder.decode(0), PauliString(7));
}

TEST(Steane, TransversalCnotHasSevenGates) {
    Layer l = transversal_cnot(7, 0, 7);
    ASSERT_EQ(l.size(), 7u);
    for (uint32_t i = 0; i < 7; ++i) EXPECT_EQ(l[i], Element::cnot(i, 7 + i));
}

TEST(Steane, SyndromeCircuitIsNotFaultTolerant) {
    auto cc = steane7();
    auto survey = single_fault_survey(cc);
    size_t bad = 0;
    for (const auto &o : survey) {
        if (o.data_error.weight() >= 2 && o.logical_action != 0) ++bad;
    }
    EXPECT_GT(bad, 0u);
    // A single data error before the circuit is always repaired.
    for (const auto &o : survey) {
        if (o.location < 7 && o.data_error.weight() <= 1) {
            EXPECT_EQ(o.logical_action, 0u);
        }
    }
}

TEST(Surface, PlanarCounts) {
    for (int d : {1, 3, 5, 7}) {
        auto lat = SurfaceLattice::planar(d);
        EXPECT_EQ(lat.num_data(), static_cast<size_t>(d * d + (d - 1) * (d - 1)));
        EXPECT_EQ(lat.num_checks(), static_cast<size_t>(2 * d * (d - 1)));
        for (const auto &ch : lat.checks()) {
            // Weight 3 exactly on the edge that truncates the check.
            bool edge = ch.type == CheckType::Z ? (ch.pos.c == 0 || ch.pos.c == lat.cols() - 1)
                                                : (ch.pos.r == 0 || ch.pos.r == lat.rows() - 1);
            EXPECT_EQ(ch.support.size(), edge ? 3u : 4u);
        }
    }
    EXPECT_EQ(SurfaceLattice::planar(3).num_data(), 13u);
    EXPECT_EQ(SurfaceLattice::planar(1).num_checks(), 0u);
}

TEST(Surface, PlanarThreeHasDistanceThree) {
    auto code = code_from_lattice(SurfaceLattice::planar(3));
    EXPECT_EQ(code.problem(), "");
    EXPECT_EQ(min_distance_bruteforce(code), 3);
}

TEST(Surface, LogicalsHaveWeightDAndCommute) {
    for (int d : {3, 5, 9}) {
        auto lat = SurfaceLattice::planar(d);
        auto code = code_from_lattice(lat);
        EXPECT_EQ(code.problem(), "");
        EXPECT_EQ(lat.logical_x().weight(), static_cast<size_t>(d));
        EXPECT_EQ(lat.logical_z().weight(), static_cast<size_t>(d));
        EXPECT_EQ(gf2_rank(code.stabilizers), code.stabilizers.size());
    }
}

TEST(Surface, ToricCountsAndDependencies) {
    auto lat = SurfaceLattice::toric(4);
    EXPECT_EQ(lat.num_data(), 32u);
    EXPECT_EQ(lat.checks_of_type(CheckType::X).size(), 16u);
    EXPECT_EQ(lat.checks_of_type(CheckType::Z).size(), 16u);
    EXPECT_EQ(lat.num_data() + lat.num_checks(), 64u);
    auto code = code_from_lattice(lat);
    EXPECT_EQ(code.problem(), "");
    EXPECT_EQ(gf2_rank(code.stabilizers), 30u);
    for (const auto &ch : lat.checks()) EXPECT_EQ(ch.support.size(), 4u);
}

TEST(Surface, RejectsBadSizes) {
    EXPECT_THROW(SurfaceLattice::planar(4), std::invalid_argument);
    EXPECT_THROW(SurfaceLattice::planar(0), std::invalid_argument);
    EXPECT_THROW(SurfaceLattice::toric(1), std::invalid_argument);
}

TEST(Surface, StaggeredSlicesMeasureOneQuarter) {
    for (int L : {2, 3, 5}) {
        auto lat = SurfaceLattice::toric(L);
        SyndromeCircuitOptions opt;
        opt.layout = RoundLayout::Staggered;
        auto sc = surface_syndrome_circuit(lat, 2, opt);
        const size_t total = sc.circuit.num_qubits();
        ASSERT_EQ(total, static_cast<size_t>(4 * L * L));
        size_t slices = 0;
        for (const auto &layer : sc.circuit.layers()) {
            size_t measured = 0;
            for (const auto &e : layer) {
                if (!e.is_measurement()) continue;
                ++measured;
                EXPECT_GE(e.q0, sc.num_data);
            }
            if (measured == 0) continue;
            ++slices;
            EXPECT_EQ(measured * 4, total);
        }
        EXPECT_EQ(slices, 4u);
    }
}

TEST(Surface, DataErrorFlipsOnlyNeighbouringPlaquettes) {
    auto lat = SurfaceLattice::planar(3);
    auto sc = surface_syndrome_circuit(lat, 2);
    const size_t round2 = sc.circuit.round_starts()[1];
    for (uint32_t q = 0; q < lat.num_data(); ++q) {
        size_t loc = 0;
        for (size_t l = 0; l < round2; ++l) loc += sc.circuit.layers()[l].size();
        const Layer &layer = sc.circuit.layers()[round2];
        size_t el = 0;
        while (!(layer[el].kind == OpKind::Idle && layer[el].q0 == q)) ++el;
        FaultSet fs;
        fs.faults.push_back({loc + el, Pauli::X, Pauli::I});
        auto run = frame_run(sc.circuit, fs);
        std::set<uint32_t> flipped(run.flipped.begin(), run.flipped.end());
        // Plaquettes sit one grid step away from the data qubit.
        std::set<uint32_t> want;
        const GridPos p = lat.data_pos(q);
        const int dr[4] = {-1, 1, 0, 0}, dc[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
            int32_t ch = lat.check_at(p.r + dr[k], p.c + dc[k]);
            if (ch >= 0 && lat.check(ch).type == CheckType::Z) want.insert(sc.tag[1][ch]);
        }
        EXPECT_EQ(flipped, want) << "qubit " << q;
        EXPECT_LE(want.size(), 2u);
    }
}

TEST(Surface, NoiselessRoundsAreTrivial) {
    auto lat = SurfaceLattice::planar(3);
    auto sc = surface_syndrome_circuit(lat, 3);
    EXPECT_TRUE(validate_layers(sc.circuit));
    EXPECT_EQ(check_circuit(sc.circuit), "");
    EXPECT_TRUE(frame_run(sc.circuit, FaultSet{}).flipped.empty());
}

TEST(Surface, JsonListsSitesAndLogicals) {
    auto j = code_from_lattice(SurfaceLattice::planar(3)).to_json();
    EXPECT_EQ(j["n"], 13);
    EXPECT_EQ(j["stabilizers"].size(), 12u);
    EXPECT_EQ(j["logical_x"].size(), 1u);
    auto lj = SurfaceLattice::planar(3).to_json();
    EXPECT_FALSE(lj.empty());
}
