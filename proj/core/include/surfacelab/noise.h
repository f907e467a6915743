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

#ifndef SURFACELAB_NOISE_H
#define SURFACELAB_NOISE_H

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "surfacelab/circuit.h"

namespace surfacelab {

enum class NoisePreset : uint8_t { CodeCapacity, Phenomenological, CircuitLevel };

const char *preset_name(NoisePreset preset);
/// Accepts "code_capacity", "phenomenological", "circuit_level".
NoisePreset parse_preset(const std::string &name);

/// Noise at strength p applied per location kind:
///
///   preset             prep    gate1   gate2     idle               measure
///   code_capacity      -       -       -         data, round start  -
///   phenomenological   -       -       -         data, round start  flip p
///   circuit_level      X,Y,Z   X,Y,Z   15 x p/15 X,Y,Z              flip p
///
/// Circuit-level single-qubit channels put p/3 on each of X, Y, Z. The data
/// noise of the two between-round presets flips X and Z independently, each
/// with probability p.
struct NoiseModel {
    NoisePreset preset = NoisePreset::CircuitLevel;
    double p = 0.0;

    /// Throws std::invalid_argument unless 0 <= p <= 1.
    void validate() const;
};

struct ChannelEntry {
    std::string outcome;  // "X", "IZ", "flip", ...
    double probability = 0.0;
};

struct ChannelRow {
    LocationKind kind = LocationKind::Idle;
    std::string scope;  // which locations of this kind are noisy
    std::vector<ChannelEntry> entries;

    double total() const;
};

/// One row per location kind, in {prep, gate1, gate2, measure, idle} order.
std::vector<ChannelRow> channel_table(const NoiseModel &m);
/// Plain-text rendering of channel_table.
std::string format_channel_table(const NoiseModel &m);

/// Small counter-style generator: the stream is a pure function of (seed, shot),
/// so shots can be generated in any order on any thread.
class ShotRng {
  public:
    using result_type = uint64_t;
    ShotRng(uint64_t master_seed, uint64_t shot_index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<uint64_t>::max(); }
    result_type operator()();
    /// Uniform in (0, 1].
    double uniform_open_closed();
    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n);

  private:
    uint64_t state_;
};

uint64_t splitmix64(uint64_t x);

/// Precomputed list of noisy locations of a circuit under a model; sampling a
/// shot costs time proportional to the number of faults drawn, not to the
/// number of locations.
/// One independent fault mechanism of a noise model, firing with probability p.
struct NoiseSite {
    enum Kind : uint8_t {
        Depolarize1,  // X, Y or Z on the element's qubit
        Depolarize2,  // one of the 15 non-identity two-qubit Paulis
        MeasureFlip,
        FlipX,
        FlipZ,
    };
    size_t location = 0;
    Kind kind = Depolarize1;
    uint32_t tag = 0;  // measurement tag for MeasureFlip
};

class FaultSampler {
  public:
    /// Throws std::invalid_argument for invalid p, or when a between-round
    /// preset is used on a circuit without round and role metadata.
    FaultSampler(const Circuit &c, const NoiseModel &m);

    /// Faults sorted by location, measurement flips by tag.
    FaultSet sample(uint64_t master_seed, uint64_t shot_index) const;
    void sample_into(uint64_t master_seed, uint64_t shot_index, FaultSet &out) const;

    const std::vector<NoiseSite> &sites() const { return sites_; }
    const NoiseModel &model() const { return model_; }

  private:
    NoiseModel model_;
    std::vector<NoiseSite> sites_;
    double log1mp_ = 0.0;
};

/// Convenience wrapper building a FaultSampler for one draw.
FaultSet sample_faults(const Circuit &c, const NoiseModel &m, uint64_t master_seed, uint64_t shot_index);

}  // namespace surfacelab

#endif  // SURFACELAB_NOISE_H
