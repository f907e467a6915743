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

#include "surfacelab/decoder.h"

#include <cstdlib>
#include <deque>
#include <limits>
#include <stdexcept>

namespace surfacelab {

SyndromeRecord::SyndromeRecord(size_t rounds, size_t num_checks)
    : rounds_(rounds), checks_(num_checks), bits_((rounds + 1) * num_checks, 0) {}

SyndromeRecord SyndromeRecord::from_frame(
    const SurfaceLattice &lat, const SyndromeCircuit &sc, const FrameSimulator &sim) {
    SyndromeRecord rec(sc.rounds, lat.num_checks());
    const auto &flips = sim.measurement_flips();
    const auto &tags = sim.measurement_tags();
    std::vector<int32_t> ordinal_of_tag;
    for (size_t k = 0; k < tags.size(); ++k) {
        if (tags[k] >= ordinal_of_tag.size()) ordinal_of_tag.resize(tags[k] + 1, -1);
        ordinal_of_tag[tags[k]] = static_cast<int32_t>(k);
    }
    for (size_t t = 0; t < sc.rounds; ++t) {
        for (size_t i = 0; i < lat.num_checks(); ++i) {
            int64_t tag = sc.tag[t][i];
            if (tag < 0) continue;
            rec.set(t, i, flips[static_cast<size_t>(ordinal_of_tag[static_cast<size_t>(tag)])]);
        }
    }
    const auto &fx = sim.frame_x();
    const auto &fz = sim.frame_z();
    for (size_t i = 0; i < lat.num_checks(); ++i) {
        const Check &ch = lat.check(i);
        uint8_t bit = 0;
        for (uint32_t q : ch.support) bit ^= ch.type == CheckType::X ? fz[q] : fx[q];
        rec.set(sc.rounds, i, bit);
    }
    return rec;
}

void SyndromeRecord::set_final_from_error(const SurfaceLattice &lat, const PauliString &data_error) {
    for (size_t i = 0; i < lat.num_checks(); ++i) {
        set(rounds_, i, commutes(data_error, lat.check_pauli(i)) ? 0 : 1);
    }
}

std::vector<DetectionEvent> detection_events(const SyndromeRecord &s) {
    std::vector<DetectionEvent> events;
    for (size_t row = 0; row < s.num_rows(); ++row) {
        for (size_t i = 0; i < s.num_checks(); ++i) {
            uint8_t prev = row == 0 ? 0 : s.at(row - 1, i);
            if (s.at(row, i) != prev) events.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(row)});
        }
    }
    return events;
}

const char *outcome_name(LogicalOutcome o) {
    switch (o) {
        case LogicalOutcome::Success: return "success";
        case LogicalOutcome::LogicalX: return "logical_X";
        case LogicalOutcome::LogicalZ: return "logical_Z";
        case LogicalOutcome::LogicalY: return "logical_Y";
    }
    return "?";
}

DecodingGraph DecodingGraph::build(const SurfaceLattice &lat, const SyndromeCircuit &sc, NoisePreset preset) {
    DecodingGraph g;
    g.rows_ = sc.rounds + 1;
    g.type_.resize(lat.num_checks());
    g.index_.resize(lat.num_checks());
    for (int t = 0; t < 2; ++t) {
        const auto &ids = lat.checks_of_type(t == 0 ? CheckType::X : CheckType::Z);
        for (size_t k = 0; k < ids.size(); ++k) {
            g.type_[ids[k]] = static_cast<uint8_t>(t);
            g.index_[ids[k]] = static_cast<uint32_t>(k);
        }
        g.nodes_[static_cast<size_t>(t)] = ids.size() * g.rows_;
    }

    // Adjacency per type; node nodes_[t] is the boundary.
    std::array<std::vector<std::vector<uint32_t>>, 2> adj;
    for (size_t t = 0; t < 2; ++t) adj[t].resize(g.nodes_[t] + 1);
    auto add_edge = [&](size_t t, size_t a, size_t b) {
        for (uint32_t x : adj[t][a]) {
            if (x == b) return;
        }
        adj[t][a].push_back(static_cast<uint32_t>(b));
        adj[t][b].push_back(static_cast<uint32_t>(a));
        ++g.num_edges_;
    };

    const Circuit &c = sc.circuit;
    FaultSampler sampler(c, NoiseModel{preset, 0.0});
    auto locations = enumerate_locations(c);
    FrameSimulator sim(c);
    FaultSet fs;
    auto inject = [&]() {
        sim.run(fs);
        auto events = detection_events(SyndromeRecord::from_frame(lat, sc, sim));
        for (size_t t = 0; t < 2; ++t) {
            std::vector<size_t> mine;
            for (const auto &e : events) {
                if (g.type_[e.check] == t) mine.push_back(g.node(e));
            }
            if (mine.size() == 1) add_edge(t, mine[0], g.nodes_[t]);
            if (mine.size() == 2) add_edge(t, mine[0], mine[1]);
        }
    };
    for (const NoiseSite &site : sampler.sites()) {
        fs.faults.clear();
        fs.measurement_flips.clear();
        const FaultLocation &loc = locations[site.location];
        switch (site.kind) {
            case NoiseSite::MeasureFlip:
                fs.measurement_flips.push_back(site.tag);
                inject();
                break;
            case NoiseSite::FlipX:
            case NoiseSite::FlipZ:
            case NoiseSite::Depolarize1:
                for (Pauli p : {Pauli::X, Pauli::Z}) {
                    if ((site.kind == NoiseSite::FlipX && p != Pauli::X) ||
                        (site.kind == NoiseSite::FlipZ && p != Pauli::Z)) {
                        continue;
                    }
                    fs.faults = {{loc.index, p, Pauli::I}};
                    inject();
                }
                break;
            case NoiseSite::Depolarize2:
                // Events of each check type depend only on one component of
                // the fault, so the X-only and Z-only faults cover all 15.
                for (Pauli p : {Pauli::X, Pauli::Z}) {
                    for (auto [a, b] : {std::pair{p, Pauli::I}, std::pair{Pauli::I, p}, std::pair{p, p}}) {
                        fs.faults = {{loc.index, a, b}};
                        inject();
                    }
                }
                break;
        }
    }

    for (size_t t = 0; t < 2; ++t) {
        size_t n = g.nodes_[t];
        g.dist_[t].assign(n * n, -1);
        g.boundary_[t].assign(n, -1);
        std::vector<int32_t> d(n + 1);
        std::deque<uint32_t> queue;
        for (size_t s = 0; s < n; ++s) {
            std::fill(d.begin(), d.end(), -1);
            d[s] = 0;
            queue.assign(1, static_cast<uint32_t>(s));
            while (!queue.empty()) {
                uint32_t u = queue.front();
                queue.pop_front();
                if (u == n) continue;
                for (uint32_t v : adj[t][u]) {
                    if (d[v] < 0) {
                        d[v] = d[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if (d[n] > std::numeric_limits<int16_t>::max()) throw std::length_error("decoding graph too large");
            for (size_t v = 0; v < n; ++v) g.dist_[t][s * n + v] = static_cast<int16_t>(d[v]);
            g.boundary_[t][s] = static_cast<int16_t>(d[n]);
        }
    }
    return g;
}

size_t DecodingGraph::node(const DetectionEvent &e) const {
    if (e.check >= index_.size() || e.round >= rows_) throw std::out_of_range("event outside the decoding graph");
    return static_cast<size_t>(index_[e.check]) * rows_ + e.round;
}

int DecodingGraph::distance(const DetectionEvent &a, const DetectionEvent &b) const {
    size_t t = type_.at(a.check);
    if (type_.at(b.check) != t) throw std::invalid_argument("events of different check types");
    return dist_[t][node(a) * nodes_[t] + node(b)];
}

int DecodingGraph::boundary_distance(const DetectionEvent &e) const {
    return boundary_[type_.at(e.check)][node(e)];
}

SurfaceDecoder::SurfaceDecoder(const SurfaceLattice &lat) : lat_(lat) {}

SurfaceDecoder::SurfaceDecoder(const SurfaceLattice &lat, std::shared_ptr<const DecodingGraph> graph)
    : lat_(lat), graph_(std::move(graph)) {}

MatchingGraph SurfaceDecoder::graph(const std::vector<DetectionEvent> &events, CheckType type) const {
    std::vector<const DetectionEvent *> mine;
    for (const auto &e : events) {
        if (lat_.check(e.check).type == type) mine.push_back(&e);
    }
    MatchingGraph g(mine.size());
    if (graph_) {
        for (size_t a = 0; a < mine.size(); ++a) {
            g.set_boundary(a, graph_->boundary_distance(*mine[a]));
            for (size_t b = a + 1; b < mine.size(); ++b) g.set_edge(a, b, graph_->distance(*mine[a], *mine[b]));
        }
        return g;
    }
    for (size_t a = 0; a < mine.size(); ++a) {
        g.set_boundary(a, lat_.boundary_distance(mine[a]->check));
        for (size_t b = a + 1; b < mine.size(); ++b) {
            int w = lat_.check_distance(mine[a]->check, mine[b]->check) +
                    std::abs(static_cast<int>(mine[a]->round) - static_cast<int>(mine[b]->round));
            g.set_edge(a, b, w);
        }
    }
    return g;
}

void SurfaceDecoder::decode_type(
    const std::vector<DetectionEvent> &events,
    CheckType type,
    PauliString &correction,
    nlohmann::json *debug) const {
    std::vector<const DetectionEvent *> mine;
    for (const auto &e : events) {
        if (lat_.check(e.check).type == type) mine.push_back(&e);
    }
    if (mine.empty()) return;
    MatchingGraph g = graph(events, type);
    Matching m = mwpm(g);
    // X checks detect Z errors and vice versa.
    Pauli letter = type == CheckType::X ? Pauli::Z : Pauli::X;
    auto flip = [&](const std::vector<uint32_t> &chain) {
        for (uint32_t q : chain) {
            Pauli cur = correction.get(q);
            correction.set(q, static_cast<Pauli>(static_cast<uint8_t>(cur) ^ static_cast<uint8_t>(letter)));
        }
    };
    nlohmann::json pairs = nlohmann::json::array();
    for (size_t a = 0; a < mine.size(); ++a) {
        int32_t b = m.mate[a];
        if (b < 0) {
            flip(lat_.chain_to_boundary(mine[a]->check));
            if (debug) pairs.push_back({{"a", {mine[a]->check, mine[a]->round}}, {"b", "boundary"}});
        } else if (static_cast<size_t>(b) > a) {
            const auto *eb = mine[static_cast<size_t>(b)];
            if (eb->check != mine[a]->check) flip(lat_.chain_between(mine[a]->check, eb->check));
            if (debug) pairs.push_back({{"a", {mine[a]->check, mine[a]->round}}, {"b", {eb->check, eb->round}}});
        }
    }
    if (debug) {
        (*debug)[type == CheckType::X ? "x_checks" : "z_checks"] = {{"weight", m.weight}, {"pairs", pairs}};
    }
}

PauliString SurfaceDecoder::decode(const std::vector<DetectionEvent> &events) const {
    return decode(events, nullptr);
}

PauliString SurfaceDecoder::decode(const std::vector<DetectionEvent> &events, nlohmann::json *debug) const {
    PauliString correction(lat_.num_data());
    decode_type(events, CheckType::X, correction, debug);
    decode_type(events, CheckType::Z, correction, debug);
    return correction;
}

LogicalOutcome judge(const PauliString &correction, const PauliString &residual, const SurfaceLattice &lat) {
    if (correction.num_qubits() != lat.num_data() || residual.num_qubits() != lat.num_data()) {
        throw std::invalid_argument("judge operands must act on exactly the data qubits");
    }
    PauliString net = pauli_multiply(correction, residual);
    for (size_t i = 0; i < lat.num_checks(); ++i) {
        if (!commutes(net, lat.check_pauli(i))) throw std::logic_error("correction leaves a nonzero syndrome");
    }
    bool x = false;
    bool z = false;
    for (size_t k = 0; k < lat.num_logical(); ++k) {
        x |= !commutes(net, lat.logical_z(k));
        z |= !commutes(net, lat.logical_x(k));
    }
    if (x && z) return LogicalOutcome::LogicalY;
    if (x) return LogicalOutcome::LogicalX;
    if (z) return LogicalOutcome::LogicalZ;
    return LogicalOutcome::Success;
}

PauliString data_part(const PauliString &frame, size_t num_data) {
    if (frame.num_qubits() < num_data) throw std::invalid_argument("frame narrower than the data register");
    PauliString p(num_data);
    for (size_t q = 0; q < num_data; ++q) p.set(q, frame.get(q));
    return p;
}

}  // namespace surfacelab
