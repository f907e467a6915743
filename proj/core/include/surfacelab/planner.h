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


#ifndef SURFACELAB_PLANNER_H
#define SURFACELAB_PLANNER_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfacelab/lattice.h"

namespace surfacelab {

/// Corner of a tile; tiles are squares rotated 45 degrees so corners point
/// at the four lattice neighbours.
enum class Corner : uint8_t { N = 0, E = 1, S = 2, W = 3 };

const char *corner_name(Corner c);

struct PhysQubit {
    uint32_t id = 0;
    uint32_t tile = 0;
    Corner corner = Corner::N;
    double x = 0.0;
    double y = 0.0;
};

struct Tile {
    uint32_t id = 0;
    int r = 0;
    int c = 0;
    /// "data", "x_check", "z_check" or "site" when built without a lattice.
    std::string kind;
    /// Qubit ids in N, E, S, W order.
    std::array<uint32_t, 4> qubits{};
    /// Corner holding the surface-code qubit in each of the four phases.
    std::array<Corner, 4> rotation{Corner::N, Corner::E, Corner::S, Corner::W};
};

/// A resonator is one side of the skewed square filling the gap to the upper
/// left of tile (gap_r, gap_c). Side k joins ring corners k and k+1 of
/// N(r,c), E(r,c-1), S(r-1,c-1), W(r-1,c). A side with one missing corner is
/// a stub ending at (end_x, end_y).
struct Resonator {
    uint32_t id = 0;
    int gap_r = 0;
    int gap_c = 0;
    int side = 0;
    uint32_t a = 0;
    std::optional<uint32_t> b;
    double end_x = 0.0;
    double end_y = 0.0;
    /// Closes across the periodic boundary; excluded from the planarity sweep.
    bool wraps = false;
    /// Frequency class, -1 before assign_frequencies.
    int freq_class = -1;

    bool stub() const { return !b.has_value(); }
};

struct FloorplanStats {
    size_t qubits = 0;
    size_t tiles = 0;
    size_t resonators = 0;
    size_t stubs = 0;
    size_t freq_classes = 0;
    /// Histogram of per-qubit direct QF, index = QF.
    std::vector<size_t> qubit_qf;

    bool operator==(const FloorplanStats &) const = default;
};

struct Floorplan {
    std::string topology = "planar";
    int size = 1;
    int rows = 1;
    int cols = 1;
    double conflict_radius = -1.0;
    std::vector<Tile> tiles;
    std::vector<PhysQubit> qubits;
    std::vector<Resonator> resonators;

    /// Tile index at a grid site, -1 outside (wrapped when periodic).
    int32_t tile_at(int r, int c) const;
    bool periodic() const { return topology == "toric"; }
};

/// Resonator length for a frequency class: 8 mm plus 0.25 mm per class.
double resonator_length_mm(int freq_class);

/// Lays one tile on every grid site, four corner qubits per tile, and the
/// gap resonators. Tile pitch is 1, corners sit 0.25 from the tile centre.
Floorplan generate_tiling(int rows, int cols, bool periodic);
Floorplan generate_tiling(const SurfaceLattice &lat);

/// Pairs of resonators that must get distinct classes: sharing a qubit, or
/// with midpoints no farther apart than `radius`.
std::vector<std::pair<uint32_t, uint32_t>> conflict_edges(const Floorplan &f, double radius);

/// Smallest midpoint distance between two resonators that share no qubit.
double nearest_neighbor_radius(const Floorplan &f);

/// Greedy colouring of the conflict graph in resonator order.
Floorplan assign_frequencies(Floorplan f, double radius);

/// Monochromatic conflict edges under the plan's own radius.
size_t coloring_conflicts(const Floorplan &f);

/// First pair of properly crossing resonator segments, if any.
std::optional<std::pair<uint32_t, uint32_t>> find_crossing(const Floorplan &f);

/// Smallest row and column translations (in tiles, up to `max_period`) that
/// map the class pattern onto itself on gaps at least `margin` from the edge.
struct Periodicity {
    std::optional<int> rows;
    std::optional<int> cols;
};
Periodicity find_period(const Floorplan &f, int max_period = 8, int margin = 2);

struct FanoutReport {
    /// Distinct partner qubits reachable through each qubit's resonators.
    std::vector<uint32_t> qubit_qf;
    /// Distinct neighbouring tiles reachable from each tile.
    std::vector<uint32_t> tile_qf;
    /// Tiles with effective QF below 4.
    std::vector<uint32_t> flagged;
};
FanoutReport fanout_report(const Floorplan &f);

FloorplanStats floorplan_stats(const Floorplan &f);

/// Empty when degree, tile size, planarity, colouring and role rotation hold.
std::string check_floorplan(const Floorplan &f);

nlohmann::json floorplan_to_json(const Floorplan &f);
/// Throws std::invalid_argument on a structurally bad document.
Floorplan floorplan_from_json(const nlohmann::json &j);

}  // namespace surfacelab

#endif  // SURFACELAB_PLANNER_H
