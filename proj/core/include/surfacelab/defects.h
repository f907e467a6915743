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


#ifndef SURFACELAB_DEFECTS_H
#define SURFACELAB_DEFECTS_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfacelab/circuit.h"
#include "surfacelab/lattice.h"
#include "surfacelab/pauli.h"

namespace surfacelab {

/// Primal holes switch off Z plaquettes and measure their interior data in
/// the X basis; dual holes switch off X stars and measure interior data in Z.
enum class HoleType : uint8_t { Primal, Dual };

const char *hole_type_name(HoleType t);

struct Hole {
    HoleType type = HoleType::Primal;
    /// Switched-off checks, sorted.
    std::vector<uint32_t> checks;
};

/// Two holes carrying one logical qubit. For a primal pair X_L is a chain of
/// X joining the holes and Z_L a Z loop around hole `a`; a dual pair swaps
/// the roles (Z chain, X loop).
struct HolePair {
    uint32_t a = 0;
    uint32_t b = 0;
    HoleType type = HoleType::Primal;
    PauliString x;
    PauliString z;
    bool alive = true;
};

struct DeformationStep {
    enum Phase : uint8_t { Expand, Contract };
    Phase phase = Expand;
    uint32_t hole = 0;
    /// Hole checks after the step, sorted.
    std::vector<uint32_t> checks;
    /// Bookkeeping derived from the layout before the step.
    std::vector<uint32_t> stopped;
    std::vector<uint32_t> resumed;
    std::vector<uint32_t> measured_out;
    std::vector<uint32_t> reprepared;
};

/// A sequence of hole deformations. `control` and `target` name the pairs
/// whose logical operators verify_pauli_map reports.
struct DeformationScript {
    uint32_t control = 0;
    uint32_t target = 1;
    std::vector<DeformationStep> steps;

    bool empty() const { return steps.empty(); }
    /// Copy with step k removed (a negative control for verification).
    DeformationScript without_step(size_t k) const;
    /// Script of `this` followed by `next`; pair labels come from `this`.
    DeformationScript then(const DeformationScript &next) const;

    nlohmann::json to_json() const;
    static DeformationScript from_json(const nlohmann::json &j);
};

/// Holes punched into a surface lattice, with the logical operators of every
/// registered hole pair.
///
/// Logical operators are carried through each deformation step: a step
/// introduces new stabilizers (resumed checks, new single-qubit measurements);
/// an operator that anticommutes with one of them is multiplied by elements
/// of the previous stabilizer group until it commutes, then reduced greedily
/// modulo the new group. Generators are tried in a fixed order (checks in
/// row-major site order, then single-qubit measurements by qubit), so the
/// representative is deterministic.
class DefectLayout {
  public:
    explicit DefectLayout(SurfaceLattice lattice);

    const SurfaceLattice &lattice() const { return lat_; }
    const std::vector<Hole> &holes() const { return holes_; }
    const std::vector<HolePair> &pairs() const { return pairs_; }

    /// Creates two single-check holes and registers their logical qubit.
    /// The checks must be distinct, of the same type, active, away from the
    /// lattice edge, and share no data qubit with any existing hole.
    /// Throws std::invalid_argument otherwise.
    uint32_t create_hole_pair(uint32_t check_a, uint32_t check_b);
    /// Switches the checks of a pair back on (the holes must be unmoved
    /// single checks or otherwise restorable) and retires the pair.
    void annihilate_pair(uint32_t pair);

    /// Hole owning a check, or -1.
    int32_t hole_of(uint32_t check) const { return owner_[check]; }
    bool active(uint32_t check) const { return owner_[check] < 0; }
    std::vector<bool> active_mask() const;
    /// Data qubits inside holes: those shared by two switched-off checks of one hole.
    std::vector<uint32_t> measured_qubits() const;
    /// Active checks in index order, then one single-qubit operator per measured qubit.
    std::vector<PauliString> stabilizer_generators() const;

    /// Plans moving hole `hole` onto `target` (expand to the union, then
    /// contract). Empty when target equals the current checks. Throws
    /// std::invalid_argument when the target is empty, disconnected, does
    /// not touch the hole, mixes check types, or comes near another hole.
    DeformationScript deform_hole(uint32_t hole, std::vector<uint32_t> target) const;

    /// Applies a script, carrying every live pair's logical operators along.
    /// Throws std::logic_error if an operator cannot be carried through a step
    /// or ends up anticommuting with a stabilizer.
    void apply(const DeformationScript &script);

    /// Empty when every live pair's operators commute with all stabilizers and
    /// the logical commutation table is intact.
    std::string problem() const;

    /// Number of CNOTs in one syndrome round with the current holes.
    size_t cnots_per_round() const;

  private:
    friend DeformationScript braid_cnot(const DefectLayout &, uint32_t, uint32_t);
    void check_placement(const std::vector<uint32_t> &checks, int32_t ignore_hole) const;
    void apply_step(const DeformationStep &step, std::vector<PauliString *> &tracked);

    SurfaceLattice lat_;
    std::vector<Hole> holes_;
    std::vector<HolePair> pairs_;
    std::vector<int32_t> owner_;
};

/// Braids hole `a` of the primal `control` pair once around hole `a` of the
/// dual `target` pair along an axis-aligned rectangle of plaquette sites that
/// keeps at least one site of clearance. The moving hole steps one plaquette
/// at a time and returns to its starting site. The primal pair is always the
/// control; a dual control or two pairs of one type throw
/// std::invalid_argument, as does a path that would touch or enclose any
/// other hole.
DeformationScript braid_cnot(const DefectLayout &layout, uint32_t control, uint32_t target);

/// Logical labels of a two-pair map, as bit masks over {X_c, Z_c, X_t, Z_t}.
enum LogicalLabel : uint8_t { kXc = 1, kZc = 2, kXt = 4, kZt = 8 };

/// Image of each of X_c, Z_c, X_t, Z_t (in that order) as a label mask.
using PauliMap = std::array<uint8_t, 4>;

inline constexpr PauliMap kIdentityMap{kXc, kZc, kXt, kZt};
inline constexpr PauliMap kCnotMap{kXc | kXt, kZc, kXt, kZc | kZt};

/// Carries the control and target logical operators of `layout` through the
/// script on a copy and expresses the results in the original labels. Throws
/// std::logic_error when the layout does not end in its initial geometry or
/// a result is not a product of logicals and stabilizers.
PauliMap verify_pauli_map(const DeformationScript &script, const DefectLayout &layout);

/// Applies `second` after `first`.
PauliMap compose(const PauliMap &first, const PauliMap &second);

/// "X_c X_t" style rendering of a label mask ("I" for 0).
std::string label_string(uint8_t mask);

/// A default two-pair layout on planar(13): a primal pair along row 7 and a
/// dual pair in column 13 below it. Returns the layout with pair 0 primal and
/// pair 1 dual.
DefectLayout default_braid_layout();

/// Circuit form of a script: for each step, one layer measuring out or
/// re-preparing data qubits, then one syndrome round with the step's holes.
Circuit script_circuit(const DefectLayout &initial, const DeformationScript &script);

}  // namespace surfacelab

#endif  // SURFACELAB_DEFECTS_H
