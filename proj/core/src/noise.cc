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

#include "surfacelab/noise.h"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace surfacelab {

const char *preset_name(NoisePreset preset) {
    switch (preset) {
        case NoisePreset::CodeCapacity: return "code_capacity";
        case NoisePreset::Phenomenological: return "phenomenological";
        case NoisePreset::CircuitLevel: return "circuit_level";
    }
    return "?";
}

NoisePreset parse_preset(const std::string &name) {
    if (name == "code_capacity") return NoisePreset::CodeCapacity;
    if (name == "phenomenological") return NoisePreset::Phenomenological;
    if (name == "circuit_level") return NoisePreset::CircuitLevel;
    throw std::invalid_argument("unknown noise preset '" + name + "'");
}

void NoiseModel::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise strength p must lie in [0, 1]");
}

double ChannelRow::total() const {
    double t = 0.0;
    for (const auto &e : entries) t += e.probability;
    return t;
}

std::vector<ChannelRow> channel_table(const NoiseModel &m) {
    m.validate();
    double p = m.p;
    auto single = [&](LocationKind kind, std::string scope) {
        return ChannelRow{kind, std::move(scope), {{"X", p / 3}, {"Y", p / 3}, {"Z", p / 3}}};
    };
    auto none = [](LocationKind kind) { return ChannelRow{kind, "none", {}}; };
    std::vector<ChannelRow> rows;
    bool circuit = m.preset == NoisePreset::CircuitLevel;
    rows.push_back(circuit ? single(LocationKind::Prep, "all") : none(LocationKind::Prep));
    rows.push_back(circuit ? single(LocationKind::Gate1, "all") : none(LocationKind::Gate1));
    if (circuit) {
        ChannelRow row{LocationKind::Gate2, "all", {}};
        const char letters[4] = {'I', 'X', 'Z', 'Y'};
        for (int k = 1; k < 16; ++k) {
            std::string name{letters[k & 3], letters[k >> 2]};
            row.entries.push_back({name, p / 15});
        }
        rows.push_back(row);
    } else {
        rows.push_back(none(LocationKind::Gate2));
    }
    if (m.preset == NoisePreset::CodeCapacity) {
        rows.push_back(ChannelRow{LocationKind::Measure, "all", {{"flip", 0.0}}});
    } else {
        rows.push_back(ChannelRow{LocationKind::Measure, "all", {{"flip", p}}});
    }
    if (circuit) {
        rows.push_back(single(LocationKind::Idle, "all"));
    } else {
        rows.push_back(ChannelRow{LocationKind::Idle,
                                  "data qubits, first layer of each round; independent X and Z flips",
                                  {{"X", p * (1 - p)}, {"Y", p * p}, {"Z", p * (1 - p)}}});
    }
    return rows;
}

std::string format_channel_table(const NoiseModel &m) {
    std::ostringstream out;
    out << "preset " << preset_name(m.preset) << ", p = " << m.p << "\n";
    for (const auto &row : channel_table(m)) {
        out << std::left << std::setw(8) << location_kind_name(row.kind) << " [" << row.scope << "]";
        if (row.entries.empty()) out << " noiseless";
        for (const auto &e : row.entries) out << ' ' << e.outcome << '=' << std::setprecision(6) << e.probability;
        out << "\n";
    }
    return out.str();
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

ShotRng::ShotRng(uint64_t master_seed, uint64_t shot_index)
    : state_(splitmix64(splitmix64(master_seed) ^ (shot_index * 0xD1B54A32D192ED03ULL))) {}

ShotRng::result_type ShotRng::operator()() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double ShotRng::uniform_open_closed() {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
}

uint64_t ShotRng::below(uint64_t n) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>((*this)()) * n) >> 64);
}

FaultSampler::FaultSampler(const Circuit &c, const NoiseModel &m) : model_(m) {
    m.validate();
    bool between_rounds = m.preset != NoisePreset::CircuitLevel;
    std::vector<bool> round_start(c.num_layers(), false);
    if (between_rounds) {
        if (c.round_starts().empty() || !c.has_roles()) {
            throw std::invalid_argument(std::string(preset_name(m.preset)) +
                                        " noise needs round and qubit-role metadata on the circuit");
        }
        for (size_t s : c.round_starts()) {
            if (s < round_start.size()) round_start[s] = true;
        }
    }
    size_t index = 0;
    for (size_t t = 0; t < c.num_layers(); ++t) {
        for (const auto &e : c.layers()[t]) {
            LocationKind kind = location_kind(e.kind);
            if (!between_rounds) {
                if (kind == LocationKind::Measure) {
                    sites_.push_back({index, NoiseSite::MeasureFlip, e.tag});
                } else {
                    sites_.push_back({index, kind == LocationKind::Gate2 ? NoiseSite::Depolarize2 : NoiseSite::Depolarize1, 0});
                }
            } else if (kind == LocationKind::Idle && round_start[t] && c.is_data(e.q0)) {
                sites_.push_back({index, NoiseSite::FlipX, 0});
                sites_.push_back({index, NoiseSite::FlipZ, 0});
            } else if (kind == LocationKind::Measure && m.preset == NoisePreset::Phenomenological) {
                sites_.push_back({index, NoiseSite::MeasureFlip, e.tag});
            }
            ++index;
        }
    }
    if (m.p > 0.0 && m.p < 1.0) log1mp_ = std::log1p(-m.p);
}

void FaultSampler::sample_into(uint64_t master_seed, uint64_t shot_index, FaultSet &out) const {
    out.faults.clear();
    out.measurement_flips.clear();
    if (model_.p == 0.0 || sites_.empty()) return;
    ShotRng rng(master_seed, shot_index);
    size_t i = 0;
    while (true) {
        if (model_.p < 1.0) {
            double gap = std::floor(std::log(rng.uniform_open_closed()) / log1mp_);
            if (gap >= static_cast<double>(sites_.size() - i)) break;
            i += static_cast<size_t>(gap);
        }
        if (i >= sites_.size()) break;
        const NoiseSite &s = sites_[i];
        switch (s.kind) {
            case NoiseSite::Depolarize1: out.faults.push_back({s.location, static_cast<Pauli>(1 + rng.below(3)), Pauli::I}); break;
            case NoiseSite::Depolarize2: {
                auto k = static_cast<uint8_t>(1 + rng.below(15));
                out.faults.push_back({s.location, static_cast<Pauli>(k & 3), static_cast<Pauli>(k >> 2)});
                break;
            }
            case NoiseSite::MeasureFlip: out.measurement_flips.push_back(s.tag); break;
            default: {
                Pauli letter = s.kind == NoiseSite::FlipX ? Pauli::X : Pauli::Z;
                if (!out.faults.empty() && out.faults.back().location == s.location) {
                    out.faults.back().first = Pauli::Y;
                } else {
                    out.faults.push_back({s.location, letter, Pauli::I});
                }
                break;
            }
        }
        ++i;
    }
}

FaultSet FaultSampler::sample(uint64_t master_seed, uint64_t shot_index) const {
    FaultSet out;
    sample_into(master_seed, shot_index, out);
    return out;
}

FaultSet sample_faults(const Circuit &c, const NoiseModel &m, uint64_t master_seed, uint64_t shot_index) {
    return FaultSampler(c, m).sample(master_seed, shot_index);
}

}  // namespace surfacelab
