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

#include "surfacelab/frame.h"

#include <algorithm>
#include <stdexcept>

namespace surfacelab {

namespace {

constexpr int kHamming[3][7] = {
    {1, 0, 1, 0, 1, 0, 1},
    {0, 1, 1, 0, 0, 1, 1},
    {0, 0, 0, 1, 1, 1, 1},
};

std::vector<Pauli> allowed_letters(PauliFilter filter) {
    switch (filter) {
        case PauliFilter::XOnly: return {Pauli::X};
        case PauliFilter::ZOnly: return {Pauli::Z};
        case PauliFilter::All: break;
    }
    return {Pauli::X, Pauli::Y, Pauli::Z};
}

// Calls visit(p) for each Pauli of exactly weight w built from the letters;
// stops early when visit returns true.
template <typename Visit>
bool for_each_of_weight(size_t n, size_t w, const std::vector<Pauli> &letters, Visit &&visit) {
    std::vector<size_t> pos(w);
    for (size_t i = 0; i < w; ++i) pos[i] = i;
    std::vector<size_t> pick(w, 0);
    while (true) {
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            PauliString p(n);
            for (size_t i = 0; i < w; ++i) p.set(pos[i], letters[pick[i]]);
            if (visit(p)) return true;
            size_t k = 0;
            while (k < w && ++pick[k] == letters.size()) pick[k++] = 0;
            if (k == w) break;
        }
        if (w == 0) return false;
        size_t i = w;
        while (i > 0 && pos[i - 1] == n - w + i - 1) --i;
        if (i == 0) return false;
        ++pos[i - 1];
        for (size_t j = i; j < w; ++j) pos[j] = pos[j - 1] + 1;
    }
}

}  // namespace

std::string StabilizerCode::problem() const {
    for (const auto &s : stabilizers) {
        if (s.num_qubits() != n) return "stabilizer width mismatch";
    }
    for (size_t i = 0; i < stabilizers.size(); ++i) {
        for (size_t j = i + 1; j < stabilizers.size(); ++j) {
            if (!commutes(stabilizers[i], stabilizers[j])) {
                return "stabilizers " + std::to_string(i) + " and " + std::to_string(j) + " anticommute";
            }
        }
    }
    if (logical_x.size() != logical_z.size()) return "logical operator count mismatch";
    for (size_t k = 0; k < logical_x.size(); ++k) {
        for (const auto &s : stabilizers) {
            if (!commutes(s, logical_x[k]) || !commutes(s, logical_z[k])) {
                return "logical " + std::to_string(k) + " anticommutes with a stabilizer";
            }
        }
        for (size_t j = 0; j < logical_z.size(); ++j) {
            if (commutes(logical_x[k], logical_z[j]) == (k == j)) {
                return "logical commutation table broken at " + std::to_string(k) + "," + std::to_string(j);
            }
            if (!commutes(logical_x[k], logical_x[j]) || !commutes(logical_z[k], logical_z[j])) {
                return "logicals of the same type anticommute";
            }
        }
    }
    return {};
}

uint64_t StabilizerCode::syndrome(const PauliString &error) const {
    if (stabilizers.size() > 64) throw std::invalid_argument("syndrome bitmask supports at most 64 generators");
    uint64_t s = 0;
    for (size_t i = 0; i < stabilizers.size(); ++i) {
        if (!commutes(error, stabilizers[i])) s |= uint64_t{1} << i;
    }
    return s;
}

uint64_t StabilizerCode::logical_action(const PauliString &op) const {
    uint64_t a = 0;
    for (size_t k = 0; k < logical_x.size(); ++k) {
        if (!commutes(op, logical_z[k])) a |= uint64_t{1} << (2 * k);
        if (!commutes(op, logical_x[k])) a |= uint64_t{1} << (2 * k + 1);
    }
    return a;
}

nlohmann::json StabilizerCode::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["n"] = n;
    j["distance"] = distance;
    auto strs = [](const std::vector<PauliString> &ps) {
        std::vector<std::string> out;
        for (const auto &p : ps) out.push_back(p.str());
        return out;
    };
    j["stabilizers"] = strs(stabilizers);
    j["logical_x"] = strs(logical_x);
    j["logical_z"] = strs(logical_z);
    return j;
}

int min_distance_bruteforce(const StabilizerCode &code, PauliFilter filter) {
    if (code.n > 13) throw std::invalid_argument("brute-force distance is limited to n <= 13");
    auto letters = allowed_letters(filter);
    for (size_t w = 1; w <= code.n; ++w) {
        bool found = for_each_of_weight(code.n, w, letters, [&](const PauliString &p) {
            for (const auto &s : code.stabilizers) {
                if (!commutes(p, s)) return false;
            }
            return code.logical_action(p) != 0;
        });
        if (found) return static_cast<int>(w);
    }
    return -1;
}

LookupDecoder::LookupDecoder(const StabilizerCode &code, PauliFilter filter, size_t max_weight) : n_(code.n) {
    auto letters = allowed_letters(filter);
    for (size_t w = 1; w <= max_weight && w <= code.n; ++w) {
        for_each_of_weight(code.n, w, letters, [&](const PauliString &p) {
            uint64_t s = code.syndrome(p);
            if (s == 0 || table_.contains(s)) {
                injective_ = false;
            } else {
                table_.emplace(s, p);
            }
            return false;
        });
    }
}

PauliString LookupDecoder::decode(uint64_t syndrome) const {
    auto it = table_.find(syndrome);
    if (it == table_.end()) return PauliString(n_);
    return it->second;
}

uint64_t CodeCircuit::syndrome_from_flips(const std::vector<uint32_t> &flipped) const {
    uint64_t s = 0;
    for (size_t i = 0; i < syndrome_tags.size(); ++i) {
        if (std::find(flipped.begin(), flipped.end(), syndrome_tags[i]) != flipped.end()) s |= uint64_t{1} << i;
    }
    return s;
}

CodeCircuit repetition3() {
    CodeCircuit cc;
    cc.code.name = "repetition3";
    cc.code.n = 3;
    cc.code.stabilizers = {PauliString::from_str("ZZI"), PauliString::from_str("IZZ")};
    cc.code.logical_x = {PauliString::from_str("XXX")};
    cc.code.logical_z = {PauliString::from_str("ZII")};
    cc.code.distance = 3;

    Circuit &c = cc.circuit = Circuit(5);
    c.set_roles({QubitRole::Data, QubitRole::Data, QubitRole::Data, QubitRole::Ancilla, QubitRole::Ancilla});
    c.mark_round_start();
    c.append_layer({Element::prep_z(3), Element::prep_z(4)});
    c.append_layer({Element::cnot(0, 3), Element::cnot(1, 4)});
    c.append_layer({Element::cnot(1, 3), Element::cnot(2, 4)});
    uint32_t t0 = c.next_tag();
    uint32_t t1 = c.next_tag();
    c.append_layer({Element::measure_z(3, t0), Element::measure_z(4, t1)});
    cc.syndrome_tags = {t0, t1};
    cc.decoder = LookupDecoder(cc.code, PauliFilter::XOnly, 1);
    return cc;
}

CodeCircuit steane7() {
    CodeCircuit cc;
    StabilizerCode &code = cc.code;
    code.name = "steane7";
    code.n = 7;
    for (Pauli letter : {Pauli::X, Pauli::Z}) {
        for (const auto &row : kHamming) {
            PauliString s(7);
            for (size_t q = 0; q < 7; ++q) {
                if (row[q]) s.set(q, letter);
            }
            code.stabilizers.push_back(s);
        }
    }
    code.logical_x = {PauliString::from_str("XXXXXXX")};
    code.logical_z = {PauliString::from_str("ZZZZZZZ")};
    code.distance = 3;

    // Ancillas 7..9 read the X checks, 10..12 the Z checks.
    Circuit &c = cc.circuit = Circuit(13);
    std::vector<QubitRole> roles(13, QubitRole::Ancilla);
    std::fill(roles.begin(), roles.begin() + 7, QubitRole::Data);
    c.set_roles(std::move(roles));
    c.mark_round_start();
    Layer prep;
    for (uint32_t a = 7; a < 13; ++a) prep.push_back(Element::prep_z(a));
    c.append_layer(prep);
    c.append_layer({Element::h(7), Element::h(8), Element::h(9)});

    std::vector<Element> cnots;
    for (uint32_t k = 0; k < 3; ++k) {
        for (uint32_t q = 0; q < 7; ++q) {
            if (kHamming[k][q]) cnots.push_back(Element::cnot(7 + k, q));
        }
    }
    for (uint32_t k = 0; k < 3; ++k) {
        for (uint32_t q = 0; q < 7; ++q) {
            if (kHamming[k][q]) cnots.push_back(Element::cnot(q, 10 + k));
        }
    }
    // As-soon-as-possible packing that keeps the per-qubit gate order.
    std::vector<size_t> ready(13, 0);
    std::vector<Layer> layers;
    for (const auto &g : cnots) {
        size_t t = std::max(ready[g.q0], ready[g.q1]);
        if (t >= layers.size()) layers.resize(t + 1);
        layers[t].push_back(g);
        ready[g.q0] = ready[g.q1] = t + 1;
    }
    for (auto &layer : layers) c.append_layer(std::move(layer));

    c.append_layer({Element::h(7), Element::h(8), Element::h(9)});
    Layer meas;
    for (uint32_t a = 7; a < 13; ++a) {
        uint32_t tag = c.next_tag();
        cc.syndrome_tags.push_back(tag);
        meas.push_back(Element::measure_z(a, tag));
    }
    c.append_layer(std::move(meas));
    cc.decoder = LookupDecoder(code, PauliFilter::All, 1);
    return cc;
}

Circuit steane_encoding_circuit() {
    Circuit c(7);
    constexpr uint32_t pivots[3] = {0, 1, 3};
    c.append_layer({Element::h(0), Element::h(1), Element::h(3)});
    std::vector<Element> cnots;
    for (size_t k = 0; k < 3; ++k) {
        for (uint32_t q = 0; q < 7; ++q) {
            if (kHamming[k][q] && q != pivots[k]) cnots.push_back(Element::cnot(pivots[k], q));
        }
    }
    std::vector<size_t> ready(7, 0);
    std::vector<Layer> layers;
    for (const auto &g : cnots) {
        size_t t = std::max(ready[g.q0], ready[g.q1]);
        if (t >= layers.size()) layers.resize(t + 1);
        layers[t].push_back(g);
        ready[g.q0] = ready[g.q1] = t + 1;
    }
    for (auto &layer : layers) c.append_layer(std::move(layer));
    return c;
}

Layer transversal_cnot(size_t n, size_t control_offset, size_t target_offset) {
    Layer layer;
    for (size_t i = 0; i < n; ++i) {
        layer.push_back(Element::cnot(static_cast<uint32_t>(control_offset + i),
                                      static_cast<uint32_t>(target_offset + i)));
    }
    return layer;
}

std::vector<SingleFaultOutcome> single_fault_survey(const CodeCircuit &cc) {
    const size_t n = cc.code.n;
    auto finish = [&](SingleFaultOutcome &o, const FrameRunResult &run) {
        o.syndrome = cc.syndrome_from_flips(run.flipped);
        o.data_error = PauliString(n);
        for (size_t q = 0; q < n; ++q) o.data_error.set(q, run.residual.get(q));
        PauliString after = pauli_multiply(cc.decoder.decode(cc.code.syndrome(o.data_error)), o.data_error);
        o.logical_action = cc.code.syndrome(after) == 0 ? cc.code.logical_action(after) : ~uint64_t{0};
    };
    std::vector<SingleFaultOutcome> out;
    constexpr Pauli kLetters[4] = {Pauli::I, Pauli::X, Pauli::Z, Pauli::Y};
    for (const auto &loc : enumerate_locations(cc.circuit)) {
        const Element &e = cc.circuit.layers()[loc.layer][loc.element];
        for (Pauli a : kLetters) {
            for (Pauli b : kLetters) {
                if (e.arity() == 1 && b != Pauli::I) continue;
                if (a == Pauli::I && b == Pauli::I) continue;
                SingleFaultOutcome o;
                o.location = loc.index;
                o.fault = {loc.index, a, b};
                FaultSet fs;
                fs.faults.push_back(o.fault);
                finish(o, frame_run(cc.circuit, fs));
                out.push_back(std::move(o));
            }
        }
        if (e.is_measurement()) {
            SingleFaultOutcome o;
            o.location = loc.index;
            o.fault = {loc.index, Pauli::I, Pauli::I};
            o.measurement_flip = true;
            FaultSet fs;
            fs.measurement_flips.push_back(e.tag);
            finish(o, frame_run(cc.circuit, fs));
            out.push_back(std::move(o));
        }
    }
    return out;
}

StabilizerCode code_from_lattice(const SurfaceLattice &lat) {
    StabilizerCode code;
    code.name = lat.name();
    code.n = lat.num_data();
    for (size_t i = 0; i < lat.num_checks(); ++i) code.stabilizers.push_back(lat.check_pauli(i));
    for (size_t k = 0; k < lat.num_logical(); ++k) {
        code.logical_x.push_back(lat.logical_x(k));
        code.logical_z.push_back(lat.logical_z(k));
    }
    code.distance = lat.size();
    return code;
}

}  // namespace surfacelab
