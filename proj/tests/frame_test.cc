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

#include "surfacelab/frame.h"

#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "surfacelab/circuit_text.h"
#include "surfacelab/codes.h"
#include "surfacelab/lattice.h"
#include "surfacelab/tableau.h"

using namespace surfacelab;

namespace {

// Random Clifford circuit with measurements; every qubit is measured at the end.
Circuit random_circuit(size_t n, size_t layers, std::mt19937_64 &rng) {
    Circuit c(n);
    for (size_t t = 0; t < layers; ++t) {
        std::vector<uint32_t> order(n);
        for (size_t q = 0; q < n; ++q) order[q] = static_cast<uint32_t>(q);
        std::shuffle(order.begin(), order.end(), rng);
        Layer layer;
        for (size_t i = 0; i < n;) {
            switch (rng() % 6) {
                case 0:
                    if (i + 1 < n) {
                        layer.push_back(Element::cnot(order[i], order[i + 1]));
                        i += 2;
                        continue;
                    }
                    break;
                case 1: layer.push_back(Element::h(order[i])); break;
                case 2: layer.push_back(Element::prep_z(order[i])); break;
                case 3: layer.push_back(Element::prep_x(order[i])); break;
                case 4:
                    layer.push_back(rng() % 2 ? Element::measure_z(order[i], c.next_tag())
                                              : Element::measure_x(order[i], c.next_tag()));
                    break;
                default: break;
            }
            ++i;
        }
        c.append_layer(layer);
    }
    Layer last;
    for (uint32_t q = 0; q < n; ++q) last.push_back(Element::measure_z(q, c.next_tag()));
    c.append_layer(last);
    return c;
}

// Replays the circuit on a tableau and reports whether every measurement
// outcome is forced. Preparations count as measurements here: resetting an
// entangled qubit collapses its partners at random.
bool all_measurements_deterministic(const Circuit &c) {
    StabilizerTableau t(c.num_qubits());
    std::mt19937_64 rng(0);
    size_t n = c.num_qubits();
    for (const auto &layer : c.layers()) {
        for (const auto &e : layer) {
            switch (e.kind) {
                case OpKind::PrepZ:
                case OpKind::PrepX: {
                    auto op = PauliString::single(n, e.q0, e.kind == OpKind::PrepZ ? Pauli::Z : Pauli::X);
                    if (t.expectation(op) == 0) return false;
                    e.kind == OpKind::PrepZ ? t.reset_z(e.q0, rng) : t.reset_x(e.q0, rng);
                    break;
                }
                case OpKind::H: t.h(e.q0); break;
                case OpKind::CNOT: t.cnot(e.q0, e.q1); break;
                case OpKind::MeasureZ:
                case OpKind::MeasureX: {
                    auto op = PauliString::single(n, e.q0, e.kind == OpKind::MeasureZ ? Pauli::Z : Pauli::X);
                    if (t.expectation(op) == 0) return false;
                    t.measure(op, rng);
                    break;
                }
                case OpKind::Idle: break;
            }
        }
    }
    return true;
}

std::set<uint32_t> outcome_difference(const std::map<uint32_t, bool> &a, const std::map<uint32_t, bool> &b) {
    std::set<uint32_t> out;
    for (auto [tag, v] : a) {
        if (b.at(tag) != v) out.insert(tag);
    }
    return out;
}

std::set<uint32_t> as_set(const std::vector<uint32_t> &v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Frame, NoFaultsNoFlips) {
    auto rep = repetition3();
    auto r = frame_run(rep.circuit, FaultSet{});
    EXPECT_TRUE(r.flipped.empty());
    EXPECT_TRUE(r.residual.is_identity_up_to_phase());
}

TEST(Frame, DataErrorFlipsAdjacentCheckOnly) {
    auto rep = repetition3();
    // Layer 0 idles data qubit 0; an X there precedes every syndrome CNOT.
    size_t loc = 0;
    for (const auto &l : enumerate_locations(rep.circuit)) {
        const auto &e = rep.circuit.layers()[l.layer][l.element];
        if (l.layer == 0 && e.kind == OpKind::Idle && e.q0 == 0) loc = l.index;
    }
    FaultSet fs;
    fs.faults.push_back({loc, Pauli::X, Pauli::I});
    auto r = frame_run(rep.circuit, fs);
    EXPECT_EQ(as_set(r.flipped), std::set<uint32_t>{rep.syndrome_tags[0]});

    auto clean = tableau_run(StabilizerTableau(5), rep.circuit, 3);
    auto faulty = tableau_run(StabilizerTableau(5), rep.circuit, 3, fs);
    EXPECT_EQ(outcome_difference(clean.outcomes, faulty.outcomes), as_set(r.flipped));
}

TEST(Frame, AgreesWithTableauOnRandomSingleFaults) {
    std::mt19937_64 rng(2024);
    int trials = 0;
    while (trials < 1000) {
        size_t n = 2 + rng() % 9;
        Circuit c = random_circuit(n, 3 + rng() % 6, rng);
        if (!all_measurements_deterministic(c)) continue;
        auto locs = enumerate_locations(c);
        uint64_t seed = rng();
        auto clean = tableau_run(StabilizerTableau(n), c, seed);
        for (int k = 0; k < 10; ++k, ++trials) {
            const auto &l = locs[rng() % locs.size()];
            Fault f{l.index, static_cast<Pauli>(1 + rng() % 3), Pauli::I};
            if (l.kind == LocationKind::Gate2) f.second = static_cast<Pauli>(rng() % 4);
            FaultSet fs;
            fs.faults.push_back(f);
            auto faulty = tableau_run(StabilizerTableau(n), c, seed, fs);
            auto frame = frame_run(c, fs);
            ASSERT_EQ(as_set(frame.flipped), outcome_difference(clean.outcomes, faulty.outcomes))
                << "trial " << trials << " location " << l.index << " fault " << pauli_char(f.first) << pauli_char(f.second)
                << "\n"
                << circuit_to_text(c);
        }
    }
}

TEST(Frame, FlipsAreLinear) {
    auto sc = surface_syndrome_circuit(SurfaceLattice::planar(3), 2);
    auto locs = enumerate_locations(sc.circuit);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        FaultSet a, b, both;
        a.faults.push_back({rng() % locs.size(), static_cast<Pauli>(1 + rng() % 3), Pauli::I});
        b.faults.push_back({rng() % locs.size(), static_cast<Pauli>(1 + rng() % 3), Pauli::I});
        if (locs[a.faults[0].location].kind == LocationKind::Gate2) a.faults[0].second = Pauli::X;
        if (a.faults[0].location > b.faults[0].location) std::swap(a, b);
        if (a.faults[0].location == b.faults[0].location) continue;
        both.faults = {a.faults[0], b.faults[0]};
        std::set<uint32_t> fa = as_set(frame_run(sc.circuit, a).flipped);
        std::set<uint32_t> expected;
        for (uint32_t t : fa) expected.insert(t);
        for (uint32_t t : as_set(frame_run(sc.circuit, b).flipped)) {
            if (!expected.erase(t)) expected.insert(t);
        }
        EXPECT_EQ(as_set(frame_run(sc.circuit, both).flipped), expected);
    }
}

TEST(Frame, SimulatorMatchesFreeFunction) {
    auto sc = surface_syndrome_circuit(SurfaceLattice::planar(3), 3);
    FrameSimulator sim(sc.circuit);
    auto locs = enumerate_locations(sc.circuit);
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        FaultSet fs;
        size_t at = rng() % locs.size();
        fs.faults.push_back({at, Pauli::Y, Pauli::I});
        fs.measurement_flips.push_back(static_cast<uint32_t>(rng() % sc.circuit.num_measurements()));
        sim.run(fs);
        auto ref = frame_run(sc.circuit, fs);
        std::set<uint32_t> flipped;
        for (size_t k = 0; k < sim.measurement_flips().size(); ++k) {
            if (sim.measurement_flips()[k]) flipped.insert(sim.measurement_tags()[k]);
        }
        EXPECT_EQ(flipped, as_set(ref.flipped));
        EXPECT_TRUE(sim.residual().same_letters(ref.residual));
    }
}

TEST(Frame, RejectsFaultOutsideElement) {
    Circuit c(3);
    c.append_layer({Element::cnot(0, 1)});
    std::map<size_t, PauliString> faults{{0, PauliString::from_str("IIX")}};
    EXPECT_THROW(frame_run(c, faults), std::invalid_argument);
    std::map<size_t, PauliString> ok{{0, PauliString::from_str("XZI")}};
    EXPECT_NO_THROW(frame_run(c, ok));
}
