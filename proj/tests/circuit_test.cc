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

#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "surfacelab/circuit_text.h"
#include "surfacelab/codes.h"
#include "surfacelab/lattice.h"

using namespace surfacelab;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST(Circuit, EmptyCircuitHasNoLocations) {
    Circuit c(3);
    EXPECT_TRUE(enumerate_locations(c).empty());
    EXPECT_TRUE(validate_layers(c));
}

TEST(Circuit, OneLayerCnotAndIdle) {
    Circuit c(3);
    c.append_layer({Element::cnot(0, 1)});
    auto locs = enumerate_locations(c);
    ASSERT_EQ(locs.size(), 2u);
    EXPECT_EQ(locs[0].kind, LocationKind::Gate2);
    EXPECT_EQ(locs[1].kind, LocationKind::Idle);
    EXPECT_EQ(c.layers()[0][1], Element::idle(2));
}

TEST(Circuit, RepetitionLocationCountMatchesTraversal) {
    auto rep = repetition3();
    size_t expected = 0;
    for (const auto &layer : rep.circuit.layers()) expected += layer.size();
    auto locs = enumerate_locations(rep.circuit);
    EXPECT_EQ(locs.size(), expected);
    EXPECT_EQ(rep.circuit.count(OpKind::CNOT), 4u);
    EXPECT_EQ(rep.circuit.num_measurements(), 2u);
    std::set<std::pair<size_t, size_t>> seen;
    for (size_t i = 0; i < locs.size(); ++i) {
        EXPECT_EQ(locs[i].index, i);
        EXPECT_TRUE(seen.insert({locs[i].layer, locs[i].element}).second);
    }
}

TEST(Circuit, ValidateLayersRejectsQubitReuse) {
    Circuit c(2);
    c.append_raw_layer({Element::cnot(0, 1), Element::h(1)});
    EXPECT_FALSE(validate_layers(c));
    EXPECT_FALSE(check_circuit(c).empty());
    EXPECT_THROW(Circuit(2).append_layer({Element::cnot(0, 1), Element::h(1)}), std::invalid_argument);
    EXPECT_THROW(Circuit(2).append_layer({Element::h(2)}), std::invalid_argument);
}

TEST(Circuit, SurfaceRoundsAreValid) {
    for (auto lat : {SurfaceLattice::planar(3), SurfaceLattice::planar(5), SurfaceLattice::toric(3)}) {
        auto sc = surface_syndrome_circuit(lat, 2);
        EXPECT_TRUE(validate_layers(sc.circuit)) << lat.name();
        EXPECT_EQ(check_circuit(sc.circuit), "") << lat.name();
    }
}

TEST(Circuit, LocationCountInvariantUnderReorderingWithinLayer) {
    auto rep = repetition3();
    Circuit reordered(rep.circuit.num_qubits());
    for (auto layer : rep.circuit.layers()) {
        std::reverse(layer.begin(), layer.end());
        reordered.append_raw_layer(layer);
    }
    EXPECT_EQ(enumerate_locations(reordered).size(), enumerate_locations(rep.circuit).size());
}

TEST(Circuit, SurfaceLocationCountIsLinearInRounds) {
    auto lat = SurfaceLattice::planar(3);
    size_t per_round = enumerate_locations(surface_syndrome_circuit(lat, 1).circuit).size();
    size_t qubits = lat.num_data() + lat.num_checks();
    size_t cnots = 0;
    for (const auto &ch : lat.checks()) cnots += ch.support.size();
    // Six layers with every qubit present; a CNOT is one location covering two qubits.
    EXPECT_EQ(per_round, 6 * qubits - cnots);
    for (size_t f : {2u, 3u, 7u}) {
        EXPECT_EQ(enumerate_locations(surface_syndrome_circuit(lat, f).circuit).size(), f * per_round);
    }
}

TEST(CircuitText, RoundTrips) {
    for (const auto &c : {repetition3().circuit, steane7().circuit,
                          surface_syndrome_circuit(SurfaceLattice::planar(3), 2).circuit}) {
        std::string text = circuit_to_text(c);
        Circuit back = circuit_from_text(text);
        EXPECT_EQ(back, c);
        EXPECT_EQ(circuit_to_text(back), text);
    }
}

TEST(CircuitText, MatchesGoldenFile) {
    std::string golden = read_file(std::string(SURFACELAB_TEST_DATA_DIR) + "/golden/repetition3.circuit");
    ASSERT_FALSE(golden.empty());
    EXPECT_EQ(circuit_to_text(repetition3().circuit), golden);
}

TEST(CircuitText, ReportsLineOfError) {
    std::string bad = "circuit v1\nqubits 2\n# comment\nlayer CX 0 1\nlayer H 0 | FOO 1\n";
    try {
        circuit_from_text(bad);
        FAIL() << "parse should fail";
    } catch (const CircuitParseError &e) {
        EXPECT_EQ(e.line(), 5u);
    }
    EXPECT_THROW(circuit_from_text("circuit v1\nqubits 2\nlayer CX 0 1 | I 1\n"), CircuitParseError);
    EXPECT_THROW(circuit_from_text("circuit v2\n"), CircuitParseError);
}
