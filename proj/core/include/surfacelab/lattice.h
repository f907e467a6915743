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

#ifndef SURFACELAB_LATTICE_H
#define SURFACELAB_LATTICE_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfacelab/circuit.h"
#include "surfacelab/pauli.h"

namespace surfacelab {

enum class Topology : uint8_t { Planar, Toric };

/// X checks are stars (measured with X-basis ancillas), Z checks are plaquettes.
enum class CheckType : uint8_t { X, Z };

/// Data-contact directions of a check, as seen from the check site.
enum class Direction : uint8_t { N = 0, E = 1, W = 2, S = 3 };

const char *direction_name(Direction d);
Direction parse_direction(char c);

struct GridPos {
    int r = 0;
    int c = 0;
    bool operator==(const GridPos &) const = default;
};

struct Check {
    CheckType type = CheckType::X;
    GridPos pos;
    /// Data index reached in each Direction, -1 where the check is truncated.
    std::array<int32_t, 4> contact{-1, -1, -1, -1};
    /// Sorted data indices.
    std::vector<uint32_t> support;
};

/// Surface code on a square grid. Sites with r + c even hold data qubits, sites
/// (even r, odd c) hold X checks and sites (odd r, even c) hold Z checks.
///
/// planar(d) uses a (2d-1) x (2d-1) grid with d^2 + (d-1)^2 data qubits; Z
/// checks are truncated on the left and right edges, X checks on the top and
/// bottom edges. X_L runs down column 0 and Z_L along row 0.
///
/// toric(L) uses a periodic 2L x 2L grid with 2L^2 data qubits and two
/// logical qubits.
class SurfaceLattice {
  public:
    /// Throws std::invalid_argument unless d is odd and >= 1.
    static SurfaceLattice planar(int d);
    /// Throws std::invalid_argument unless L >= 2.
    static SurfaceLattice toric(int L);

    Topology topology() const { return topology_; }
    int size() const { return size_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    size_t num_data() const { return data_.size(); }
    const GridPos &data_pos(size_t i) const { return data_[i]; }
    /// Data index at a grid site (wrapped for toric), -1 if none.
    int32_t data_at(int r, int c) const;

    size_t num_checks() const { return checks_.size(); }
    const std::vector<Check> &checks() const { return checks_; }
    const Check &check(size_t i) const { return checks_[i]; }
    /// Check index at a grid site (wrapped for toric), -1 if none.
    int32_t check_at(int r, int c) const;
    /// Indices of all checks of one type, row-major.
    const std::vector<uint32_t> &checks_of_type(CheckType t) const {
        return t == CheckType::X ? x_checks_ : z_checks_;
    }

    /// Check as a Pauli over the data qubits.
    PauliString check_pauli(size_t i) const;

    size_t num_logical() const { return topology_ == Topology::Planar ? 1 : 2; }
    PauliString logical_x(size_t k = 0) const;
    PauliString logical_z(size_t k = 0) const;

    /// Number of single-qubit error steps between two checks of the same type.
    int check_distance(size_t a, size_t b) const;
    /// Steps from a check to the nearest boundary that absorbs its defects;
    /// -1 on the torus.
    int boundary_distance(size_t i) const;

    /// Data indices of a minimal error chain connecting two checks of the same
    /// type (vertical leg first, then horizontal). Applying the chain's letter
    /// flips exactly those two checks.
    std::vector<uint32_t> chain_between(size_t a, size_t b) const;
    /// Data indices of a minimal chain from a check to its nearest absorbing
    /// boundary (planar only).
    std::vector<uint32_t> chain_to_boundary(size_t i) const;

    std::string name() const;
    nlohmann::json to_json() const;

  private:
    SurfaceLattice() = default;
    void build();
    int wrap_r(int r) const;
    int wrap_c(int c) const;
    int delta(int a, int b, int period) const;

    Topology topology_ = Topology::Planar;
    int size_ = 1;
    int rows_ = 1;
    int cols_ = 1;
    std::vector<GridPos> data_;
    std::vector<Check> checks_;
    std::vector<uint32_t> x_checks_, z_checks_;
    std::vector<int32_t> site_data_;
    std::vector<int32_t> site_check_;
};

/// Per-step data contact directions for X and Z checks. At each step the two
/// directions must be equal or opposite, which keeps every layer free of
/// qubit conflicts, and an X check and a diagonal Z check must touch their two
/// shared data qubits in the same relative order so the measured operators
/// commute.
struct CnotSchedule {
    std::array<Direction, 4> x_order{Direction::N, Direction::E, Direction::W, Direction::S};
    std::array<Direction, 4> z_order{Direction::N, Direction::E, Direction::W, Direction::S};

    /// "NEWS/NEWS" style text, X order first.
    std::string str() const;
    static CnotSchedule parse(const std::string &text);
    /// Empty when the schedule is admissible, otherwise the reason.
    std::string problem() const;
};

/// The schedule used by default for memory experiments: NEWS/NEWS.
CnotSchedule default_schedule();

enum class RoundLayout : uint8_t {
    /// Both check species share prep, CNOT and measurement layers (6 layers per round).
    Interleaved,
    /// X checks run a full prep/CNOT/measure block, then Z checks (12 layers per
    /// round); each measurement layer measures one species only.
    Staggered,
};

struct SyndromeCircuitOptions {
    CnotSchedule schedule = default_schedule();
    RoundLayout layout = RoundLayout::Interleaved;
    /// Per-check activity flag; empty means all checks active.
    std::vector<bool> active;
};

/// A syndrome-extraction circuit plus the bookkeeping to read it.
/// Qubits 0..num_data-1 are data; check i uses ancilla num_data + i.
struct SyndromeCircuit {
    Circuit circuit;
    size_t rounds = 0;
    size_t num_data = 0;
    /// Measurement tag of check i in round t, -1 when the check is inactive.
    std::vector<std::vector<int64_t>> tag;

    uint32_t ancilla(size_t check) const { return static_cast<uint32_t>(num_data + check); }
};

/// Builds `rounds` rounds of syndrome extraction: ancilla prep, four CNOT
/// layers following the schedule, ancilla measurement. X checks use PrepX,
/// CNOT ancilla -> data, MeasureX; Z checks use PrepZ, CNOT data -> ancilla,
/// MeasureZ. Data qubits are never measured.
SyndromeCircuit surface_syndrome_circuit(
    const SurfaceLattice &lat, size_t rounds, const SyndromeCircuitOptions &options = {});

}  // namespace surfacelab

#endif  // SURFACELAB_LATTICE_H
