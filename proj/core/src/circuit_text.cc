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

#include "surfacelab/circuit_text.h"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <vector>

namespace surfacelab {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t end = s.find(sep, start);
        if (end == std::string_view::npos) end = s.size();
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::vector<std::string_view> words(std::string_view s) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

uint32_t parse_u32(std::string_view s, size_t line) {
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw CircuitParseError(line, "expected a non-negative integer, got '" + std::string(s) + "'");
    }
    return v;
}

Element parse_element(std::string_view text, size_t line) {
    auto w = words(text);
    if (w.empty()) throw CircuitParseError(line, "empty element");
    auto expect = [&](size_t n) {
        if (w.size() != n) {
            throw CircuitParseError(line, "element '" + std::string(text) + "' has wrong arity");
        }
    };
    std::string_view op = w[0];
    if (op == "CX") {
        expect(3);
        return Element::cnot(parse_u32(w[1], line), parse_u32(w[2], line));
    }
    if (op == "MZ" || op == "MX") {
        expect(3);
        if (w[2].empty() || w[2][0] != '@') throw CircuitParseError(line, "measurement tag must start with '@'");
        uint32_t q = parse_u32(w[1], line);
        uint32_t tag = parse_u32(w[2].substr(1), line);
        return op == "MZ" ? Element::measure_z(q, tag) : Element::measure_x(q, tag);
    }
    expect(2);
    uint32_t q = parse_u32(w[1], line);
    if (op == "RZ") return Element::prep_z(q);
    if (op == "RX") return Element::prep_x(q);
    if (op == "H") return Element::h(q);
    if (op == "I") return Element::idle(q);
    throw CircuitParseError(line, "unknown operation '" + std::string(op) + "'");
}

}  // namespace

std::string circuit_to_text(const Circuit &c) {
    std::ostringstream out;
    out << "circuit v1\n";
    out << "qubits " << c.num_qubits() << "\n";
    if (c.has_roles()) {
        out << "roles ";
        for (auto r : c.roles()) out << (r == QubitRole::Data ? 'D' : 'A');
        out << "\n";
    }
    const auto &starts = c.round_starts();
    for (size_t t = 0; t < c.num_layers(); ++t) {
        for (size_t s : starts) {
            if (s == t) out << "round\n";
        }
        out << "layer";
        const auto &layer = c.layers()[t];
        for (size_t i = 0; i < layer.size(); ++i) {
            const Element &e = layer[i];
            out << (i == 0 ? " " : " | ") << op_name(e.kind) << ' ' << e.q0;
            if (e.kind == OpKind::CNOT) out << ' ' << e.q1;
            if (e.is_measurement()) out << " @" << e.tag;
        }
        out << "\n";
    }
    return out.str();
}

Circuit circuit_from_text(std::string_view text) {
    auto lines = split(text, '\n');
    Circuit c;
    bool have_header = false;
    bool have_qubits = false;
    std::vector<size_t> round_starts;
    std::vector<QubitRole> roles;
    std::vector<Layer> layers;
    uint32_t max_tag = 0;
    bool any_tag = false;
    for (size_t i = 0; i < lines.size(); ++i) {
        size_t line_no = i + 1;
        std::string_view line = lines[i];
        size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        auto w = words(line);
        if (w.empty()) continue;
        if (!have_header) {
            if (w.size() != 2 || w[0] != "circuit" || w[1] != "v1") {
                throw CircuitParseError(line_no, "expected header 'circuit v1'");
            }
            have_header = true;
            continue;
        }
        if (w[0] == "qubits") {
            if (w.size() != 2 || have_qubits) throw CircuitParseError(line_no, "bad qubits line");
            c = Circuit(parse_u32(w[1], line_no));
            have_qubits = true;
        } else if (!have_qubits) {
            throw CircuitParseError(line_no, "'qubits' must precede other content");
        } else if (w[0] == "roles") {
            if (w.size() != 2 || w[1].size() != c.num_qubits()) {
                throw CircuitParseError(line_no, "roles must list one letter per qubit");
            }
            for (char ch : w[1]) {
                if (ch != 'D' && ch != 'A') throw CircuitParseError(line_no, "role letters must be D or A");
                roles.push_back(ch == 'D' ? QubitRole::Data : QubitRole::Ancilla);
            }
        } else if (w[0] == "round") {
            if (w.size() != 1) throw CircuitParseError(line_no, "'round' takes no arguments");
            round_starts.push_back(layers.size());
        } else if (w[0] == "layer") {
            std::string_view body = line.substr(line.find("layer") + 5);
            Layer layer;
            if (!words(body).empty()) {
                for (auto part : split(body, '|')) {
                    Element e = parse_element(part, line_no);
                    if (e.q0 >= c.num_qubits() || (e.kind == OpKind::CNOT && e.q1 >= c.num_qubits())) {
                        throw CircuitParseError(line_no, "qubit index out of range");
                    }
                    if (e.is_measurement()) {
                        max_tag = std::max(max_tag, e.tag);
                        any_tag = true;
                    }
                    layer.push_back(e);
                }
            }
            layers.push_back(std::move(layer));
        } else {
            throw CircuitParseError(line_no, "unknown directive '" + std::string(w[0]) + "'");
        }
    }
    if (!have_header || !have_qubits) throw CircuitParseError(lines.size(), "missing header or qubit count");
    for (auto &layer : layers) c.append_raw_layer(std::move(layer));
    c.set_round_starts(std::move(round_starts));
    if (!roles.empty()) c.set_roles(std::move(roles));
    c.set_next_tag(any_tag ? max_tag + 1 : 0);
    if (auto problem = check_circuit(c); !problem.empty()) {
        throw CircuitParseError(lines.size(), problem);
    }
    return c;
}

}  // namespace surfacelab
