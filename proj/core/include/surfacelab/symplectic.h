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

#ifndef SURFACELAB_SYMPLECTIC_H
#define SURFACELAB_SYMPLECTIC_H

#include <optional>
#include <span>
#include <vector>

#include "surfacelab/pauli.h"

namespace surfacelab {

// GF(2) linear algebra over the symplectic (x|z) representation. Phases are ignored.

/// Rank of the given operators as vectors in GF(2)^{2n}.
size_t symplectic_rank(std::span<const PauliString> ops);

/// Indices into `basis` whose product equals `target` up to phase, or nullopt if
/// `target` is not in the span. The chosen combination is deterministic.
std::optional<std::vector<size_t>> decompose(std::span<const PauliString> basis, const PauliString &target);

inline bool in_span(std::span<const PauliString> basis, const PauliString &target) {
    return decompose(basis, target).has_value();
}

/// For n independent pairwise-commuting stabilizers, returns n destabilizers with
/// <d_i, s_j> = delta_ij and pairwise-commuting d_i. Throws if the input is not
/// independent or not commuting.
std::vector<PauliString> find_destabilizers(std::span<const PauliString> stabilizers);

}  // namespace surfacelab

#endif  // SURFACELAB_SYMPLECTIC_H
