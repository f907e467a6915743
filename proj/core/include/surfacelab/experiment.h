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

#ifndef SURFACELAB_EXPERIMENT_H
#define SURFACELAB_EXPERIMENT_H

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "surfacelab/decoder.h"
#include "surfacelab/frame.h"
#include "surfacelab/lattice.h"
#include "surfacelab/noise.h"
#include "surfacelab/threshold.h"

namespace surfacelab {

struct ExperimentConfig {
    Topology topology = Topology::Planar;
    std::vector<int> distances{3};
    NoisePreset preset = NoisePreset::CircuitLevel;
    std::vector<double> ps{0.001};
    /// Rounds per shot; 0 means one round per unit of distance.
    size_t rounds = 0;
    uint64_t shots = 1000;
    uint64_t seed = 1;
    unsigned threads = 1;
    CnotSchedule schedule = default_schedule();
    RoundLayout layout = RoundLayout::Interleaved;

    /// Empty when valid, otherwise the first problem found.
    std::string problem() const;
};

/// Shared read-only state for decoding shots of one (lattice, rounds) memory
/// experiment. The decoder uses the DecodingGraph of `preset`. Shots run
/// through run_shot, which needs a FrameSimulator built from
/// `syndrome.circuit` (one per thread).
class MemoryExperiment {
  public:
    MemoryExperiment(SurfaceLattice lattice, size_t rounds, NoisePreset preset,
                     const SyndromeCircuitOptions &options = {});
    MemoryExperiment(const MemoryExperiment &) = delete;
    MemoryExperiment &operator=(const MemoryExperiment &) = delete;

    const SurfaceLattice &lattice() const { return lattice_; }
    const SyndromeCircuit &syndrome() const { return syndrome_; }
    const SurfaceDecoder &decoder() const { return decoder_; }
    const DecodingGraph &graph() const { return *graph_; }

    /// Simulates the faults, decodes and judges one shot.
    LogicalOutcome run_shot(FrameSimulator &sim, const FaultSet &faults, nlohmann::json *debug = nullptr) const;

  private:
    SurfaceLattice lattice_;
    SyndromeCircuit syndrome_;
    std::shared_ptr<const DecodingGraph> graph_;
    SurfaceDecoder decoder_;
};

struct PointCounts {
    uint64_t shots = 0;
    uint64_t failures = 0;
    uint64_t logical_x = 0;
    uint64_t logical_z = 0;
    uint64_t logical_y = 0;
};

/// Seed for one (d, p) point, derived from the master seed.
uint64_t point_seed(uint64_t master_seed, int d, double p);

/// Runs `shots` shots at one noise point with the given number of threads.
/// Shot i always uses the fault sample keyed by (seed, i), so the counts do
/// not depend on the thread count.
PointCounts run_memory_point(
    const MemoryExperiment &exp, const NoiseModel &noise, uint64_t shots, uint64_t seed, unsigned threads);

/// Every (d, p) point of the config, distances outer, p inner.
/// `progress` (optional) is called after each point.
ResultTable run_memory_experiment(
    const ExperimentConfig &cfg, const std::function<void(const ResultRow &)> &progress = {});

}  // namespace surfacelab

#endif  // SURFACELAB_EXPERIMENT_H
