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

#ifndef SURFACELAB_CIRCUIT_TEXT_H
#define SURFACELAB_CIRCUIT_TEXT_H

#include <stdexcept>
#include <string>
#include <string_view>

#include "surfacelab/circuit.h"

namespace surfacelab {

/// Line-oriented circuit format, one layer per line. See docs/circuit_format.md.
///
///     circuit v1
///     qubits 5
///     roles DDDAA
///     round
///     layer RZ 3 | RZ 4 | I 0 | I 1 | I 2
///     layer CX 0 3 | CX 1 4 | I 2
///     layer MZ 3 @0 | MZ 4 @1 | I 0 | I 1 | I 2
std::string circuit_to_text(const Circuit &c);

class CircuitParseError : public std::runtime_error {
  public:
    CircuitParseError(size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    size_t line() const { return line_; }

  private:
    size_t line_;
};

/// Parses the text format. Layers are taken verbatim (no Idle padding); the
/// result is checked with check_circuit and a CircuitParseError is thrown on
/// any structural problem.
Circuit circuit_from_text(std::string_view text);

}  // namespace surfacelab

#endif  // SURFACELAB_CIRCUIT_TEXT_H
