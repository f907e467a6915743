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

#ifndef SURFACELAB_BUDGET_H
#define SURFACELAB_BUDGET_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace surfacelab {

enum class BudgetFamily : uint8_t {
    /// C[x] = c^x (concatenated codes), threshold p_th = 1/c.
    Concatenated,
    /// C[x] = x^(c x), with 0^0 = 1.
    Polynomial,
    /// C[x] read from an explicit table; x beyond the table is an error.
    Table,
};

const char *family_name(BudgetFamily f);
BudgetFamily parse_family(const std::string &name);

/// Failure-budget model: a gadget correcting x errors fails with probability
/// C[x] p^(x+1).
struct BudgetModel {
    BudgetFamily family = BudgetFamily::Concatenated;
    double c = 1.0;
    std::vector<double> table;

    static BudgetModel concatenated(double c);
    static BudgetModel polynomial(double c);
    static BudgetModel from_table(std::vector<double> table);

    /// Throws std::invalid_argument for c <= 0 or a bad table.
    void validate() const;
    /// Natural log of C[x]; -inf when C[x] = 0.
    double log_c(int x) const;
    /// 1/c for the concatenated family, nothing otherwise.
    std::optional<double> threshold() const;
};

/// C[x] p^(x+1), clipped to [0, 1]. Uses plain floating-point products when
/// they stay finite and falls back to the log domain otherwise.
double gadget_failure(const BudgetModel &m, int x, double p);

/// min(1, T N C[x] p^(x+1)); x = 0 with C[0] = 1 is the uncorrected T N p.
double algorithm_failure(const BudgetModel &m, double T, double N, int x, double p);

inline constexpr int kMaxBudgetX = 200;
/// Relative slack when comparing a failure probability with its target, so
/// that targets hit exactly in real arithmetic are not lost to rounding.
inline constexpr double kBudgetRelTol = 1e-12;

/// Smallest x in [0, x_max] with algorithm_failure <= eps; nothing when no
/// such x exists.
std::optional<int> required_distance(
    const BudgetModel &m, double T, double N, double p, double eps, int x_max = kMaxBudgetX);

/// The x in [0, x_max] minimizing algorithm_failure (first on ties).
int argmin_failure(const BudgetModel &m, double T, double N, double p, int x_max);

}  // namespace surfacelab

#endif  // SURFACELAB_BUDGET_H
