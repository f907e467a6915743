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

#include "surfacelab/lattice.h"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace surfacelab {

namespace {

constexpr int kDr[4] = {-1, 0, 0, 1};
constexpr int kDc[4] = {0, 1, -1, 0};

}  // namespace

const char *direction_name(Direction d) {
    switch (d) {
        case Direction::N: return "N";
        case Direction::E: return "E";
        case Direction::W: return "W";
        case Direction::S: return "S";
    }
    return "?";
}

Direction parse_direction(char c) {
    switch (c) {
        case 'N': return Direction::N;
        case 'E': return Direction::E;
        case 'W': return Direction::W;
        case 'S': return Direction::S;
        default: throw std::invalid_argument(std::string("unknown direction '") + c + "'");
    }
}

SurfaceLattice SurfaceLattice::planar(int d) {
    if (d < 1 || d % 2 == 0) throw std::invalid_argument("planar distance must be odd and >= 1");
    SurfaceLattice lat;
    lat.topology_ = Topology::Planar;
    lat.size_ = d;
    lat.rows_ = lat.cols_ = 2 * d - 1;
    lat.build();
    return lat;
}

SurfaceLattice SurfaceLattice::toric(int L) {
    if (L < 2) throw std::invalid_argument("toric size must be >= 2");
    SurfaceLattice lat;
    lat.topology_ = Topology::Toric;
    lat.size_ = L;
    lat.rows_ = lat.cols_ = 2 * L;
    lat.build();
    return lat;
}

int SurfaceLattice::wrap_r(int r) const {
    if (topology_ == Topology::Toric) return ((r % rows_) + rows_) % rows_;
    return r;
}

int SurfaceLattice::wrap_c(int c) const {
    if (topology_ == Topology::Toric) return ((c % cols_) + cols_) % cols_;
    return c;
}

int SurfaceLattice::delta(int a, int b, int period) const {
    int d = b - a;
    if (topology_ == Topology::Toric) {
        d = ((d % period) + period) % period;
        if (d > period / 2) d -= period;
    }
    return d;
}

void SurfaceLattice::build() {
    site_data_.assign(static_cast<size_t>(rows_ * cols_), -1);
    site_check_.assign(static_cast<size_t>(rows_ * cols_), -1);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            if ((r + c) % 2 == 0) {
                site_data_[static_cast<size_t>(r * cols_ + c)] = static_cast<int32_t>(data_.size());
                data_.push_back({r, c});
            }
        }
    }
    for (CheckType type : {CheckType::X, CheckType::Z}) {
        for (int r = 0; r < rows_; ++r) {
            for (int c = 0; c < cols_; ++c) {
                bool is_x = r % 2 == 0 && c % 2 == 1;
                bool is_z = r % 2 == 1 && c % 2 == 0;
                if (!(type == CheckType::X ? is_x : is_z)) continue;
                Check ch;
                ch.type = type;
                ch.pos = {r, c};
                for (int k = 0; k < 4; ++k) {
                    int32_t q = data_at(r + kDr[k], c + kDc[k]);
                    ch.contact[static_cast<size_t>(k)] = q;
                    if (q >= 0) ch.support.push_back(static_cast<uint32_t>(q));
                }
                std::sort(ch.support.begin(), ch.support.end());
                auto index = static_cast<uint32_t>(checks_.size());
                site_check_[static_cast<size_t>(r * cols_ + c)] = static_cast<int32_t>(index);
                (type == CheckType::X ? x_checks_ : z_checks_).push_back(index);
                checks_.push_back(std::move(ch));
            }
        }
    }
}

int32_t SurfaceLattice::data_at(int r, int c) const {
    r = wrap_r(r);
    c = wrap_c(c);
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) return -1;
    return site_data_[static_cast<size_t>(r * cols_ + c)];
}

int32_t SurfaceLattice::check_at(int r, int c) const {
    r = wrap_r(r);
    c = wrap_c(c);
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) return -1;
    return site_check_[static_cast<size_t>(r * cols_ + c)];
}

PauliString SurfaceLattice::check_pauli(size_t i) const {
    const Check &ch = checks_.at(i);
    PauliString p(num_data());
    Pauli letter = ch.type == CheckType::X ? Pauli::X : Pauli::Z;
    for (uint32_t q : ch.support) p.set(q, letter);
    return p;
}

PauliString SurfaceLattice::logical_x(size_t k) const {
    if (k >= num_logical()) throw std::out_of_range("logical index out of range");
    PauliString p(num_data());
    if (k == 0) {
        for (int r = 0; r < rows_; r += 2) p.set(static_cast<size_t>(data_at(r, 0)), Pauli::X);
    } else {
        for (int c = 1; c < cols_; c += 2) p.set(static_cast<size_t>(data_at(1, c)), Pauli::X);
    }
    return p;
}

PauliString SurfaceLattice::logical_z(size_t k) const {
    if (k >= num_logical()) throw std::out_of_range("logical index out of range");
    PauliString p(num_data());
    if (k == 0) {
        for (int c = 0; c < cols_; c += 2) p.set(static_cast<size_t>(data_at(0, c)), Pauli::Z);
    } else {
        for (int r = 1; r < rows_; r += 2) p.set(static_cast<size_t>(data_at(r, 1)), Pauli::Z);
    }
    return p;
}

int SurfaceLattice::check_distance(size_t a, size_t b) const {
    const GridPos &pa = checks_.at(a).pos;
    const GridPos &pb = checks_.at(b).pos;
    return (std::abs(delta(pa.r, pb.r, rows_)) + std::abs(delta(pa.c, pb.c, cols_))) / 2;
}

int SurfaceLattice::boundary_distance(size_t i) const {
    if (topology_ == Topology::Toric) return -1;
    const Check &ch = checks_.at(i);
    if (ch.type == CheckType::Z) return std::min((ch.pos.r + 1) / 2, (rows_ - ch.pos.r) / 2);
    return std::min((ch.pos.c + 1) / 2, (cols_ - ch.pos.c) / 2);
}

std::vector<uint32_t> SurfaceLattice::chain_between(size_t a, size_t b) const {
    const GridPos &pa = checks_.at(a).pos;
    const GridPos &pb = checks_.at(b).pos;
    if (checks_[a].type != checks_[b].type) throw std::invalid_argument("checks of different type");
    std::vector<uint32_t> chain;
    int dr = delta(pa.r, pb.r, rows_);
    int dc = delta(pa.c, pb.c, cols_);
    int r = pa.r;
    int c = pa.c;
    int sr = dr > 0 ? 2 : -2;
    for (int k = 0; k < std::abs(dr) / 2; ++k) {
        chain.push_back(static_cast<uint32_t>(data_at(r + sr / 2, c)));
        r += sr;
    }
    int sc = dc > 0 ? 2 : -2;
    for (int k = 0; k < std::abs(dc) / 2; ++k) {
        chain.push_back(static_cast<uint32_t>(data_at(r, c + sc / 2)));
        c += sc;
    }
    return chain;
}

std::vector<uint32_t> SurfaceLattice::chain_to_boundary(size_t i) const {
    if (topology_ == Topology::Toric) throw std::logic_error("the torus has no boundary");
    const Check &ch = checks_.at(i);
    std::vector<uint32_t> chain;
    int r = ch.pos.r;
    int c = ch.pos.c;
    if (ch.type == CheckType::Z) {
        if ((r + 1) / 2 <= (rows_ - r) / 2) {
            for (int rr = r - 1; rr >= 0; rr -= 2) chain.push_back(static_cast<uint32_t>(data_at(rr, c)));
        } else {
            for (int rr = r + 1; rr < rows_; rr += 2) chain.push_back(static_cast<uint32_t>(data_at(rr, c)));
        }
    } else {
        if ((c + 1) / 2 <= (cols_ - c) / 2) {
            for (int cc = c - 1; cc >= 0; cc -= 2) chain.push_back(static_cast<uint32_t>(data_at(r, cc)));
        } else {
            for (int cc = c + 1; cc < cols_; cc += 2) chain.push_back(static_cast<uint32_t>(data_at(r, cc)));
        }
    }
    return chain;
}

std::string SurfaceLattice::name() const {
    return (topology_ == Topology::Planar ? "planar(" : "toric(") + std::to_string(size_) + ")";
}

nlohmann::json SurfaceLattice::to_json() const {
    nlohmann::json j;
    j["topology"] = topology_ == Topology::Planar ? "planar" : "toric";
    j["size"] = size_;
    j["rows"] = rows_;
    j["cols"] = cols_;
    auto &data = j["data"] = nlohmann::json::array();
    for (const auto &p : data_) data.push_back({p.r, p.c});
    auto &checks = j["checks"] = nlohmann::json::array();
    for (const auto &ch : checks_) {
        checks.push_back({{"type", ch.type == CheckType::X ? "X" : "Z"},
                          {"r", ch.pos.r},
                          {"c", ch.pos.c},
                          {"support", ch.support}});
    }
    auto &logicals = j["logicals"] = nlohmann::json::array();
    for (size_t k = 0; k < num_logical(); ++k) {
        logicals.push_back({{"x", logical_x(k).support()}, {"z", logical_z(k).support()}});
    }
    return j;
}

std::string CnotSchedule::str() const {
    std::string s;
    for (auto d : x_order) s += direction_name(d);
    s += '/';
    for (auto d : z_order) s += direction_name(d);
    return s;
}

CnotSchedule CnotSchedule::parse(const std::string &text) {
    if (text.size() != 9 || text[4] != '/') throw std::invalid_argument("schedule must look like NEWS/NEWS");
    CnotSchedule s;
    for (size_t k = 0; k < 4; ++k) {
        s.x_order[k] = parse_direction(text[k]);
        s.z_order[k] = parse_direction(text[5 + k]);
    }
    if (auto p = s.problem(); !p.empty()) throw std::invalid_argument(p);
    return s;
}

std::string CnotSchedule::problem() const {
    for (const auto *order : {&x_order, &z_order}) {
        std::array<bool, 4> seen{};
        for (auto d : *order) seen[static_cast<size_t>(d)] = true;
        if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
            return "each order must visit all four directions once";
        }
    }
    for (size_t k = 0; k < 4; ++k) {
        auto a = static_cast<size_t>(x_order[k]);
        auto b = static_cast<size_t>(z_order[k]);
        bool same = a == b;
        bool opposite = kDr[a] == -kDr[b] && kDc[a] == -kDc[b];
        if (!same && !opposite) return "step " + std::to_string(k) + " directions collide on a data qubit";
    }
    std::array<size_t, 4> tx{}, tz{};
    for (size_t k = 0; k < 4; ++k) {
        tx[static_cast<size_t>(x_order[k])] = k;
        tz[static_cast<size_t>(z_order[k])] = k;
    }
    // A Z check diagonal to an X check shares two data qubits with it; the X
    // check must go first on both or on neither.
    for (int dr : {-1, 1}) {
        for (int dc : {-1, 1}) {
            int x_first = 0;
            for (size_t a = 0; a < 4; ++a) {
                for (size_t b = 0; b < 4; ++b) {
                    if (kDr[a] == dr + kDr[b] && kDc[a] == dc + kDc[b]) x_first += tx[a] < tz[b];
                }
            }
            if (x_first % 2 != 0) return "X and Z checks would not commute under this order";
        }
    }
    return {};
}

CnotSchedule default_schedule() {
    return CnotSchedule{};
}

namespace {

void append_cnot_layers(
    const SurfaceLattice &lat,
    SyndromeCircuit &out,
    const CnotSchedule &schedule,
    const std::vector<bool> &active,
    bool do_x,
    bool do_z) {
    for (size_t k = 0; k < 4; ++k) {
        Layer layer;
        for (size_t i = 0; i < lat.num_checks(); ++i) {
            if (!active[i]) continue;
            const Check &ch = lat.check(i);
            if ((ch.type == CheckType::X && !do_x) || (ch.type == CheckType::Z && !do_z)) continue;
            Direction dir = ch.type == CheckType::X ? schedule.x_order[k] : schedule.z_order[k];
            int32_t q = ch.contact[static_cast<size_t>(dir)];
            if (q < 0) continue;
            auto anc = out.ancilla(i);
            auto data = static_cast<uint32_t>(q);
            layer.push_back(ch.type == CheckType::X ? Element::cnot(anc, data) : Element::cnot(data, anc));
        }
        out.circuit.append_layer(std::move(layer));
    }
}

void append_block(
    const SurfaceLattice &lat,
    SyndromeCircuit &out,
    const SyndromeCircuitOptions &options,
    const std::vector<bool> &active,
    size_t round,
    bool do_x,
    bool do_z) {
    auto wanted = [&](size_t i) {
        if (!active[i]) return false;
        return lat.check(i).type == CheckType::X ? do_x : do_z;
    };
    Layer prep;
    for (size_t i = 0; i < lat.num_checks(); ++i) {
        if (!wanted(i)) continue;
        auto anc = out.ancilla(i);
        prep.push_back(lat.check(i).type == CheckType::X ? Element::prep_x(anc) : Element::prep_z(anc));
    }
    out.circuit.append_layer(std::move(prep));
    append_cnot_layers(lat, out, options.schedule, active, do_x, do_z);
    Layer meas;
    for (size_t i = 0; i < lat.num_checks(); ++i) {
        if (!wanted(i)) continue;
        auto anc = out.ancilla(i);
        uint32_t tag = out.circuit.next_tag();
        out.tag[round][i] = tag;
        meas.push_back(lat.check(i).type == CheckType::X ? Element::measure_x(anc, tag)
                                                         : Element::measure_z(anc, tag));
    }
    out.circuit.append_layer(std::move(meas));
}

}  // namespace

SyndromeCircuit surface_syndrome_circuit(
    const SurfaceLattice &lat, size_t rounds, const SyndromeCircuitOptions &options) {
    if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    if (auto p = options.schedule.problem(); !p.empty()) throw std::invalid_argument(p);
    std::vector<bool> active = options.active;
    if (active.empty()) active.assign(lat.num_checks(), true);
    if (active.size() != lat.num_checks()) throw std::invalid_argument("activity mask size mismatch");

    SyndromeCircuit out;
    out.rounds = rounds;
    out.num_data = lat.num_data();
    out.circuit = Circuit(lat.num_data() + lat.num_checks());
    out.tag.assign(rounds, std::vector<int64_t>(lat.num_checks(), -1));
    std::vector<QubitRole> roles(lat.num_data() + lat.num_checks(), QubitRole::Ancilla);
    std::fill(roles.begin(), roles.begin() + static_cast<std::ptrdiff_t>(lat.num_data()), QubitRole::Data);
    out.circuit.set_roles(std::move(roles));

    for (size_t t = 0; t < rounds; ++t) {
        out.circuit.mark_round_start();
        if (options.layout == RoundLayout::Interleaved) {
            append_block(lat, out, options, active, t, true, true);
        } else {
            append_block(lat, out, options, active, t, true, false);
            append_block(lat, out, options, active, t, false, true);
        }
    }
    return out;
}

}  // namespace surfacelab
