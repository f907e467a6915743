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

#include <complex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "matrix_oracle.h"

using namespace surfacelab;
using surfacelab::testing::Matrix;
using surfacelab::testing::matrix_of;

namespace {

PauliString random_pauli(size_t n, std::mt19937_64 &rng) {
    PauliString p(n);
    for (size_t q = 0; q < n; ++q) p.set(q, static_cast<Pauli>(rng() & 3));
    p.set_phase(static_cast<uint8_t>(rng() & 3));
    return p;
}

std::vector<PauliString> all_paulis(size_t n) {
    std::vector<PauliString> out;
    for (size_t code = 0; code < (size_t{1} << (2 * n)); ++code) {
        PauliString p(n);
        for (size_t q = 0; q < n; ++q) p.set(q, static_cast<Pauli>((code >> (2 * q)) & 3));
        out.push_back(p);
    }
    return out;
}

}  // namespace

TEST(PauliString, ParsesAndPrints) {
    auto p = PauliString::from_str("-iY_Z");
    EXPECT_EQ(p.num_qubits(), 3u);
    EXPECT_EQ(p.phase(), 3);
    EXPECT_EQ(p.get(0), Pauli::Y);
    EXPECT_EQ(p.get(1), Pauli::I);
    EXPECT_EQ(p.get(2), Pauli::Z);
    EXPECT_EQ(p.str(), "-iYIZ");
    EXPECT_EQ(p.weight(), 2u);
    EXPECT_THROW(PauliString::from_str("XQ"), std::invalid_argument);
}

TEST(PauliString, XTimesZIsMinusIY) {
    auto r = pauli_multiply(PauliString::from_str("X"), PauliString::from_str("Z"));
    EXPECT_EQ(r, PauliString::from_str("-iY"));
}

TEST(PauliString, IdentityIsNeutral) {
    auto p = PauliString::from_str("+XY");
    EXPECT_EQ(pauli_multiply(PauliString::from_str("II"), p), p);
}

TEST(PauliString, SquareIsIdentity) {
    auto p = PauliString::from_str("XZ");
    EXPECT_EQ(pauli_multiply(p, p), PauliString::from_str("+II"));
}

TEST(PauliString, LengthMismatchThrows) {
    EXPECT_THROW(pauli_multiply(PauliString(2), PauliString(3)), std::invalid_argument);
    EXPECT_THROW(commutes(PauliString(2), PauliString(3)), std::invalid_argument);
}

TEST(PauliString, ProductsMatchMatrixProductsExhaustively) {
    auto ps = all_paulis(2);
    for (const auto &a : ps) {
        for (const auto &b : ps) {
            for (uint8_t phase = 0; phase < 4; ++phase) {
                PauliString pa = a;
                pa.set_phase(phase);
                Matrix expected = matrix_of(pa) * matrix_of(b);
                EXPECT_TRUE(surfacelab::testing::approx_equal(matrix_of(pauli_multiply(pa, b)), expected))
                    << pa << " * " << b;
            }
        }
    }
}

TEST(PauliString, Commutation) {
    EXPECT_FALSE(commutes(PauliString::from_str("X"), PauliString::from_str("Z")));
    EXPECT_TRUE(commutes(PauliString::from_str("XX"), PauliString::from_str("ZZ")));
    EXPECT_FALSE(commutes(PauliString::from_str("XI"), PauliString::from_str("ZZ")));
}

TEST(PauliString, CommutationMatchesMatrixCommutator) {
    auto ps = all_paulis(2);
    for (const auto &a : ps) {
        for (const auto &b : ps) {
            Matrix ab = matrix_of(a) * matrix_of(b);
            Matrix ba = matrix_of(b) * matrix_of(a);
            EXPECT_EQ(commutes(a, b), surfacelab::testing::approx_equal(ab, ba)) << a << " " << b;
        }
    }
}

TEST(PauliString, CommutesIffProductsAgree) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        size_t n = 1 + rng() % 130;
        auto a = random_pauli(n, rng);
        auto b = random_pauli(n, rng);
        EXPECT_EQ(commutes(a, b), pauli_multiply(a, b) == pauli_multiply(b, a));
    }
}

TEST(PauliString, MultiplicationIsAssociative) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = 1 + rng() % 70;
        auto a = random_pauli(n, rng), b = random_pauli(n, rng), c = random_pauli(n, rng);
        EXPECT_EQ(pauli_multiply(pauli_multiply(a, b), c), pauli_multiply(a, pauli_multiply(b, c)));
    }
}

TEST(Conjugation, CnotCopiesXForwardAndZBackward) {
    std::vector<size_t> q{0, 1};
    EXPECT_EQ(conjugate_through_gate(PauliString::from_str("XI"), CliffordGate::CNOT, q), PauliString::from_str("XX"));
    EXPECT_EQ(conjugate_through_gate(PauliString::from_str("IZ"), CliffordGate::CNOT, q), PauliString::from_str("ZZ"));
    EXPECT_EQ(conjugate_through_gate(PauliString::from_str("ZI"), CliffordGate::CNOT, q), PauliString::from_str("ZI"));
    EXPECT_EQ(conjugate_through_gate(PauliString::from_str("IX"), CliffordGate::CNOT, q), PauliString::from_str("IX"));
}

TEST(Conjugation, HadamardSwapsXAndZ) {
    std::vector<size_t> q{0};
    EXPECT_EQ(conjugate_through_gate(PauliString::from_str("X"), CliffordGate::H, q), PauliString::from_str("Z"));
    EXPECT_EQ(conjugate_through_gate(PauliString::from_str("Y"), CliffordGate::H, q), PauliString::from_str("-Y"));
}

TEST(Conjugation, MatchesMatrixConjugationExhaustively) {
    Matrix cnot = surfacelab::testing::cnot_matrix(2, 0, 1);
    Matrix cnot_rev = surfacelab::testing::cnot_matrix(2, 1, 0);
    Matrix h0 = surfacelab::testing::h_matrix(2, 0);
    for (const auto &p : all_paulis(2)) {
        std::vector<size_t> fwd{0, 1}, rev{1, 0}, one{0};
        EXPECT_TRUE(surfacelab::testing::approx_equal(
            matrix_of(conjugate_through_gate(p, CliffordGate::CNOT, fwd)), cnot * matrix_of(p) * cnot.adjoint()));
        EXPECT_TRUE(surfacelab::testing::approx_equal(
            matrix_of(conjugate_through_gate(p, CliffordGate::CNOT, rev)),
            cnot_rev * matrix_of(p) * cnot_rev.adjoint()));
        EXPECT_TRUE(surfacelab::testing::approx_equal(
            matrix_of(conjugate_through_gate(p, CliffordGate::H, one)), h0 * matrix_of(p) * h0.adjoint()));
        EXPECT_EQ(conjugate_through_gate(p, CliffordGate::Identity, one), p);
    }
}

TEST(Conjugation, PreservesCommutationAndBoundsWeight) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        size_t n = 2 + rng() % 10;
        auto a = random_pauli(n, rng), b = random_pauli(n, rng);
        size_t c = rng() % n, t = (c + 1 + rng() % (n - 1)) % n;
        std::vector<size_t> q{c, t};
        auto ca = conjugate_through_gate(a, CliffordGate::CNOT, q);
        auto cb = conjugate_through_gate(b, CliffordGate::CNOT, q);
        EXPECT_EQ(commutes(a, b), commutes(ca, cb));
        EXPECT_LE(ca.weight(), a.weight() + 2);
    }
}

TEST(Conjugation, RejectsBadInput) {
    std::vector<size_t> q{0, 0};
    EXPECT_THROW(conjugate_through_gate(PauliString(2), CliffordGate::CNOT, q), std::invalid_argument);
    std::vector<size_t> far{0, 5};
    EXPECT_THROW(conjugate_through_gate(PauliString(2), CliffordGate::CNOT, far), std::out_of_range);
    EXPECT_THROW(parse_gate_name("T"), std::invalid_argument);
    EXPECT_EQ(parse_gate_name("CX"), CliffordGate::CNOT);
}
