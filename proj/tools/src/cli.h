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


#ifndef SURFACELAB_TOOLS_CLI_H
#define SURFACELAB_TOOLS_CLI_H

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfacelab/experiment.h"

namespace surfacelab::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kConfigError = 2,
    kIoError = 3,
    kBracketNotFound = 4,
};

class CliError : public std::runtime_error {
  public:
    CliError(int code, const std::string &what) : std::runtime_error(what), code_(code) {}
    int code() const { return code_; }

  private:
    int code_;
};

/// Reads and parses a JSON config. Throws CliError with kIoError when the file
/// cannot be read and kConfigError (with line and column) on bad JSON.
nlohmann::json read_config(const std::string &path);

/// Line and column (both 1-based) of a byte offset.
std::pair<size_t, size_t> line_column(const std::string &text, size_t offset);

/// Lowercase hex SHA-256 of the compact dump of a JSON value.
std::string config_hash(const nlohmann::json &config);

/// Memory experiment settings from a simulate/threshold config; unknown keys
/// and bad values throw CliError with kConfigError.
struct RunSpec {
    ExperimentConfig experiment;
    std::string output;
    std::string format = "csv";
    bool replay = false;
    double replay_p_star = 0.0;
    double replay_amplitude = 0.5;
    std::string input;
};
RunSpec parse_run_spec(const nlohmann::json &config, bool threshold_keys);

/// Provenance lines written ahead of every result ("key: value").
std::vector<std::string> provenance(const std::string &command, const nlohmann::json &config, uint64_t seed);

/// Runs the command line and returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace surfacelab::cli

#endif  // SURFACELAB_TOOLS_CLI_H
