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

#include "surfacelab/experiment.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>

namespace surfacelab {

namespace {

constexpr uint64_t kBlockShots = 256;

}  // namespace

std::string ExperimentConfig::problem() const {
    if (distances.empty()) return "distances must not be empty";
    for (int d : distances) {
        if (topology == Topology::Planar && (d < 1 || d % 2 == 0)) return "planar distances must be odd and >= 1";
        if (topology == Topology::Toric && d < 2) return "toric sizes must be >= 2";
    }
    if (ps.empty()) return "p grid must not be empty";
    if (!std::is_sorted(ps.begin(), ps.end())) return "p grid must be sorted";
    for (double p : ps) {
        if (!(p >= 0.0 && p <= 1.0)) return "p values must lie in [0, 1]";
    }
    if (shots < 1) return "shots must be >= 1";
    if (threads < 1) return "threads must be >= 1";
    if (auto s = schedule.problem(); !s.empty()) return s;
    return {};
}

MemoryExperiment::MemoryExperiment(
    SurfaceLattice lattice, size_t rounds, NoisePreset preset, const SyndromeCircuitOptions &options)
    : lattice_(std::move(lattice)),
      syndrome_(surface_syndrome_circuit(lattice_, rounds, options)),
      graph_(std::make_shared<const DecodingGraph>(DecodingGraph::build(lattice_, syndrome_, preset))),
      decoder_(lattice_, graph_) {}

LogicalOutcome MemoryExperiment::run_shot(FrameSimulator &sim, const FaultSet &faults, nlohmann::json *debug) const {
    sim.run(faults);
    SyndromeRecord rec = SyndromeRecord::from_frame(lattice_, syndrome_, sim);
    auto events = detection_events(rec);
    if (debug) {
        auto &ev = (*debug)["events"] = nlohmann::json::array();
        for (const auto &e : events) ev.push_back({e.check, e.round});
    }
    PauliString correction = decoder_.decode(events, debug);
    PauliString residual(lattice_.num_data());
    const auto &fx = sim.frame_x();
    const auto &fz = sim.frame_z();
    for (size_t q = 0; q < lattice_.num_data(); ++q) {
        if (fx[q] | fz[q]) residual.set(q, make_pauli(fx[q], fz[q]));
    }
    return judge(correction, residual, lattice_);
}

uint64_t point_seed(uint64_t master_seed, int d, double p) {
    uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ static_cast<uint64_t>(d));
    h = splitmix64(h ^ std::bit_cast<uint64_t>(p));
    return h;
}

PointCounts run_memory_point(
    const MemoryExperiment &exp, const NoiseModel &noise, uint64_t shots, uint64_t seed, unsigned threads) {
    FaultSampler sampler(exp.syndrome().circuit, noise);
    uint64_t blocks = (shots + kBlockShots - 1) / kBlockShots;
    std::atomic<uint64_t> next{0};
    std::mutex mu;
    PointCounts total;
    std::exception_ptr error;

    auto worker = [&] {
        PointCounts local;
        try {
            FrameSimulator sim(exp.syndrome().circuit);
            FaultSet faults;
            while (true) {
                uint64_t b = next.fetch_add(1);
                if (b >= blocks) break;
                uint64_t end = std::min(shots, (b + 1) * kBlockShots);
                for (uint64_t shot = b * kBlockShots; shot < end; ++shot) {
                    sampler.sample_into(seed, shot, faults);
                    ++local.shots;
                    if (faults.empty()) continue;
                    switch (exp.run_shot(sim, faults)) {
                        case LogicalOutcome::Success: break;
                        case LogicalOutcome::LogicalX: ++local.failures, ++local.logical_x; break;
                        case LogicalOutcome::LogicalZ: ++local.failures, ++local.logical_z; break;
                        case LogicalOutcome::LogicalY: ++local.failures, ++local.logical_y; break;
                    }
                }
            }
        } catch (...) {
            std::lock_guard lock(mu);
            if (!error) error = std::current_exception();
            next.store(blocks);
        }
        std::lock_guard lock(mu);
        total.shots += local.shots;
        total.failures += local.failures;
        total.logical_x += local.logical_x;
        total.logical_z += local.logical_z;
        total.logical_y += local.logical_y;
    };

    unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<uint64_t>(blocks, 1))));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto &t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return total;
}

ResultTable run_memory_experiment(const ExperimentConfig &cfg, const std::function<void(const ResultRow &)> &progress) {
    if (auto problem = cfg.problem(); !problem.empty()) throw std::invalid_argument(problem);
    ResultTable table;
    for (int d : cfg.distances) {
        size_t rounds = cfg.rounds == 0 ? static_cast<size_t>(d) : cfg.rounds;
        SurfaceLattice lat = cfg.topology == Topology::Planar ? SurfaceLattice::planar(d) : SurfaceLattice::toric(d);
        SyndromeCircuitOptions options;
        options.schedule = cfg.schedule;
        options.layout = cfg.layout;
        MemoryExperiment exp(std::move(lat), rounds, cfg.preset, options);
        for (double p : cfg.ps) {
            NoiseModel noise{cfg.preset, p};
            PointCounts counts = run_memory_point(exp, noise, cfg.shots, point_seed(cfg.seed, d, p), cfg.threads);
            ResultRow row;
            row.preset = preset_name(cfg.preset);
            row.d = d;
            row.p = p;
            row.rounds = rounds;
            row.shots = counts.shots;
            row.failures = counts.failures;
            row.finish();
            table.rows.push_back(row);
            if (progress) progress(row);
        }
    }
    return table;
}

}  // namespace surfacelab
