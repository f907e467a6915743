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

#ifndef SURFACELAB_DECODER_H
#define SURFACELAB_DECODER_H

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfacelab/frame.h"
#include "surfacelab/lattice.h"
#include "surfacelab/matching.h"
#include "surfacelab/noise.h"
#include "surfacelab/pauli.h"

namespace surfacelab {

/// Measured check outcomes as flips relative to the noiseless run, one row per
/// round, plus a final row reconstructed from a perfect readout of the data.
class SyndromeRecord {
  public:
    SyndromeRecord() = default;
    SyndromeRecord(size_t rounds, size_t num_checks);

    size_t rounds() const { return rounds_; }
    size_t num_checks() const { return checks_; }
    /// Rows 0..rounds-1 are measured rounds; row `rounds` is the final readout.
    size_t num_rows() const { return rounds_ + 1; }
    uint8_t at(size_t row, size_t check) const { return bits_[row * checks_ + check]; }
    void set(size_t row, size_t check, uint8_t bit) { bits_[row * checks_ + check] = bit; }

    /// Fills the measured rows from a frame simulation of a syndrome circuit
    /// and the final row from the residual data frame.
    static SyndromeRecord from_frame(
        const SurfaceLattice &lat, const SyndromeCircuit &sc, const FrameSimulator &sim);
    /// Final-row helper: check outcomes for a data-qubit Pauli error.
    void set_final_from_error(const SurfaceLattice &lat, const PauliString &data_error);

  private:
    size_t rounds_ = 0;
    size_t checks_ = 0;
    std::vector<uint8_t> bits_;
};

struct DetectionEvent {
    uint32_t check = 0;
    uint32_t round = 0;
    bool operator==(const DetectionEvent &) const = default;
};

/// Events where a check differs from the previous row; row 0 is compared with
/// the noiseless initialization (all zero). Ordered by round, then check.
std::vector<DetectionEvent> detection_events(const SyndromeRecord &s);

enum class LogicalOutcome : uint8_t { Success, LogicalX, LogicalZ, LogicalY };
const char *outcome_name(LogicalOutcome o);

/// Unit-weight graph over event sites (check, row) of one memory experiment.
/// Every elementary fault mechanism of a noise preset that produces one or two
/// events of a check type contributes an edge (one event: an edge to the
/// boundary). Distances are shortest paths that do not pass through the
/// boundary.
///
/// For phenomenological noise this is the lattice metric (check distance plus
/// round difference), except that the final readout row has no spatial edges:
/// no data noise acts after the last round, so two final-row events are joined
/// through the row above. Code-capacity noise has no time edges at all. At
/// circuit level the graph also holds the space-time diagonals created by
/// faults in the middle of a round.
class DecodingGraph {
  public:
    static DecodingGraph build(const SurfaceLattice &lat, const SyndromeCircuit &sc, NoisePreset preset);

    /// Shortest path length, -1 when unreachable. Events must be of the same check type.
    int distance(const DetectionEvent &a, const DetectionEvent &b) const;
    /// Shortest path length to the boundary, -1 when there is none.
    int boundary_distance(const DetectionEvent &e) const;
    size_t num_edges() const { return num_edges_; }
    size_t num_rows() const { return rows_; }

  private:
    size_t node(const DetectionEvent &e) const;

    size_t rows_ = 0;
    size_t num_edges_ = 0;
    std::vector<uint8_t> type_;         // per check: 0 X, 1 Z
    std::vector<uint32_t> index_;       // per check: position among checks of its type
    std::array<size_t, 2> nodes_{};     // per type: checks * rows
    std::array<std::vector<int16_t>, 2> dist_;
    std::array<std::vector<int16_t>, 2> boundary_;
};

/// Minimum-weight matching decoder for surface lattices. X-check and Z-check
/// events are decoded independently. Without a DecodingGraph the edge weight is
/// the check distance plus the round difference and the boundary weight the
/// distance to the nearest absorbing boundary.
class SurfaceDecoder {
  public:
    explicit SurfaceDecoder(const SurfaceLattice &lat);
    SurfaceDecoder(const SurfaceLattice &lat, std::shared_ptr<const DecodingGraph> graph);

    /// Graph over the events of one check type (events of the other type are ignored).
    MatchingGraph graph(const std::vector<DetectionEvent> &events, CheckType type) const;

    /// Data-qubit correction for all events.
    PauliString decode(const std::vector<DetectionEvent> &events) const;

    /// Same, also reporting the matchings for debugging.
    PauliString decode(const std::vector<DetectionEvent> &events, nlohmann::json *debug) const;

    const SurfaceLattice &lattice() const { return lat_; }

  private:
    void decode_type(const std::vector<DetectionEvent> &events, CheckType type, PauliString &correction,
                     nlohmann::json *debug) const;
    const SurfaceLattice &lat_;
    std::shared_ptr<const DecodingGraph> graph_;
};

/// Logical class of correction * residual on the data qubits. Throws
/// std::invalid_argument on width mismatch and std::logic_error when the
/// product still anticommutes with a check (the correction did not clear the
/// syndrome).
LogicalOutcome judge(const PauliString &correction, const PauliString &residual, const SurfaceLattice &lat);

/// Restriction of a full-circuit frame to the data qubits 0..num_data-1.
PauliString data_part(const PauliString &frame, size_t num_data);

}  // namespace surfacelab

#endif  // SURFACELAB_DECODER_H
