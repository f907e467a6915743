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


#include <random>

#include <benchmark/benchmark.h>

#include "surfacelab/defects.h"
#include "surfacelab/experiment.h"
#include "surfacelab/matching.h"
#include "surfacelab/planner.h"

using namespace surfacelab;

namespace {

void BM_FrameRun(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    SyndromeCircuit sc = surface_syndrome_circuit(SurfaceLattice::planar(d), static_cast<size_t>(d));
    FaultSampler sampler(sc.circuit, NoiseModel{NoisePreset::CircuitLevel, 0.005});
    FrameSimulator sim(sc.circuit);
    FaultSet faults;
    uint64_t shot = 0;
    for (auto _ : state) {
        sampler.sample_into(1, shot++, faults);
        sim.run(faults);
        benchmark::DoNotOptimize(sim.measurement_flips().data());
    }
}
BENCHMARK(BM_FrameRun)->Arg(3)->Arg(5)->Arg(7);

void BM_SampleFaults(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    SyndromeCircuit sc = surface_syndrome_circuit(SurfaceLattice::planar(d), static_cast<size_t>(d));
    FaultSampler sampler(sc.circuit, NoiseModel{NoisePreset::CircuitLevel, 0.005});
    FaultSet faults;
    uint64_t shot = 0;
    for (auto _ : state) {
        sampler.sample_into(1, shot++, faults);
        benchmark::DoNotOptimize(faults.faults.data());
    }
}
BENCHMARK(BM_SampleFaults)->Arg(3)->Arg(7);

void BM_Mwpm(benchmark::State &state) {
    const size_t n = static_cast<size_t>(state.range(0));
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int32_t> w(1, 20);
    MatchingGraph g(n);
    for (size_t u = 0; u < n; ++u) {
        g.set_boundary(u, w(rng));
        for (size_t v = u + 1; v < n; ++v) g.set_edge(u, v, w(rng));
    }
    for (auto _ : state) benchmark::DoNotOptimize(mwpm(g).weight);
}
BENCHMARK(BM_Mwpm)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_MemoryShot(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    MemoryExperiment exp(SurfaceLattice::planar(d), static_cast<size_t>(d), NoisePreset::CircuitLevel);
    FaultSampler sampler(exp.syndrome().circuit, NoiseModel{NoisePreset::CircuitLevel, 0.005});
    FrameSimulator sim(exp.syndrome().circuit);
    FaultSet faults;
    uint64_t shot = 0;
    for (auto _ : state) {
        sampler.sample_into(1, shot++, faults);
        benchmark::DoNotOptimize(exp.run_shot(sim, faults));
    }
}
BENCHMARK(BM_MemoryShot)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_BraidVerify(benchmark::State &state) {
    const DefectLayout layout = default_braid_layout();
    const DeformationScript script = braid_cnot(layout, 0, 1);
    for (auto _ : state) benchmark::DoNotOptimize(verify_pauli_map(script, layout));
}
BENCHMARK(BM_BraidVerify)->Unit(benchmark::kMillisecond);

void BM_Floorplan(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Floorplan f = generate_tiling(SurfaceLattice::planar(d));
        f = assign_frequencies(std::move(f), nearest_neighbor_radius(f));
        benchmark::DoNotOptimize(check_floorplan(f));
    }
}
BENCHMARK(BM_Floorplan)->Arg(5)->Arg(11)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
