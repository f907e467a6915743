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

#ifndef SURFACELAB_THRESHOLD_H
#define SURFACELAB_THRESHOLD_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace surfacelab {

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(uint64_t failures, uint64_t shots, double confidence = 0.95);

struct ResultRow {
    std::string preset;
    int d = 0;
    double p = 0.0;
    size_t rounds = 0;
    uint64_t shots = 0;
    uint64_t failures = 0;
    double p_l = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;

    /// Fills p_l and the 95% Wilson interval from shots and failures.
    void finish();
    bool operator==(const ResultRow &) const = default;
};

/// Memory-experiment results. CSV columns:
/// preset,d,p,rounds,shots,failures,p_l,ci_lo,ci_hi
class ResultTable {
  public:
    std::vector<ResultRow> rows;

    /// `header` lines are emitted first, each prefixed with "# ".
    std::string to_csv(const std::vector<std::string> &header = {}) const;
    nlohmann::json to_json() const;
    /// Parses the CSV form; lines starting with '#' are skipped.
    static ResultTable from_csv(const std::string &text);

    std::vector<int> distances() const;
    bool operator==(const ResultTable &) const = default;
};

class BracketNotFound : public std::runtime_error {
  public:
    explicit BracketNotFound(const std::string &what) : std::runtime_error(what) {}
};

struct Crossing {
    int d_small = 0;
    int d_large = 0;
    double p = 0.0;
    /// Grid points bracketing the crossing.
    double p_below = 0.0;
    double p_above = 0.0;
};

struct ThresholdEstimate {
    double p_th = 0.0;
    /// Half the range of the pairwise crossings.
    double spread = 0.0;
    std::vector<Crossing> crossings;

    nlohmann::json to_json() const;
};

/// For each adjacent distance pair, finds where log(p_L(d_large) / p_L(d_small))
/// changes sign from negative to positive on the shared p grid (points with
/// zero failures at either distance are skipped) and interpolates linearly in
/// log p. Throws BracketNotFound when any pair has no crossing, and
/// std::invalid_argument with fewer than two distances or three points.
ThresholdEstimate estimate_threshold(const ResultTable &table);

/// Table with failures = round(shots * min(1, A (p / p_star)^((d + 1) / 2))).
ResultTable synthetic_table(
    const std::vector<int> &distances, const std::vector<double> &ps, double p_star, double amplitude,
    uint64_t shots);

/// Least-squares slope of log p_L against log p over rows of one distance
/// (rows with zero failures are skipped).
double loglog_slope(const std::vector<ResultRow> &rows);

}  // namespace surfacelab

#endif  // SURFACELAB_THRESHOLD_H
