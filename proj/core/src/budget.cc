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

#include "surfacelab/budget.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace surfacelab {

const char *family_name(BudgetFamily f) {
    switch (f) {
        case BudgetFamily::Concatenated: return "concatenated";
        case BudgetFamily::Polynomial: return "polynomial";
        case BudgetFamily::Table: return "table";
    }
    return "?";
}

BudgetFamily parse_family(const std::string &name) {
    if (name == "concatenated") return BudgetFamily::Concatenated;
    if (name == "polynomial") return BudgetFamily::Polynomial;
    if (name == "table") return BudgetFamily::Table;
    throw std::invalid_argument("unknown budget family '" + name + "'");
}

BudgetModel BudgetModel::concatenated(double c) {
    BudgetModel m{BudgetFamily::Concatenated, c, {}};
    m.validate();
    return m;
}

BudgetModel BudgetModel::polynomial(double c) {
    BudgetModel m{BudgetFamily::Polynomial, c, {}};
    m.validate();
    return m;
}

BudgetModel BudgetModel::from_table(std::vector<double> table) {
    BudgetModel m{BudgetFamily::Table, 1.0, std::move(table)};
    m.validate();
    return m;
}

void BudgetModel::validate() const {
    if (family == BudgetFamily::Table) {
        if (table.empty()) throw std::invalid_argument("budget table must not be empty");
        for (double v : table) {
            if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("budget table entries must be finite and >= 0");
        }
    } else if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("budget constant c must be positive");
    }
}

double BudgetModel::log_c(int x) const {
    if (x < 0) throw std::invalid_argument("x must be >= 0");
    switch (family) {
        case BudgetFamily::Concatenated: return x * std::log(c);
        case BudgetFamily::Polynomial: return x == 0 ? 0.0 : c * x * std::log(static_cast<double>(x));
        case BudgetFamily::Table:
            if (static_cast<size_t>(x) >= table.size()) throw std::out_of_range("x beyond the budget table");
            return table[static_cast<size_t>(x)] == 0.0 ? -std::numeric_limits<double>::infinity()
                                                        : std::log(table[static_cast<size_t>(x)]);
    }
    return 0.0;
}

std::optional<double> BudgetModel::threshold() const {
    if (family != BudgetFamily::Concatenated) return std::nullopt;
    return 1.0 / c;
}

namespace {

double direct_c(const BudgetModel &m, int x) {
    switch (m.family) {
        case BudgetFamily::Concatenated: return std::pow(m.c, x);
        case BudgetFamily::Polynomial: return x == 0 ? 1.0 : std::pow(static_cast<double>(x), m.c * x);
        case BudgetFamily::Table: return m.table.at(static_cast<size_t>(x));
    }
    return 0.0;
}

double scaled_failure(const BudgetModel &m, double scale, int x, double p) {
    if (x < 0) throw std::invalid_argument("x must be >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    m.validate();
    if (p == 0.0) return 0.0;
    double value = scale * direct_c(m, x) * std::pow(p, x + 1);
    if (!std::isfinite(value) || value == 0.0) {
        double lc = m.log_c(x);
        if (std::isinf(lc) && lc < 0) return 0.0;
        double lg = std::log(scale) + lc + (x + 1) * std::log(p);
        value = lg > 0.0 ? 1.0 : std::exp(lg);
    }
    return std::clamp(value, 0.0, 1.0);
}

}  // namespace

double gadget_failure(const BudgetModel &m, int x, double p) {
    return scaled_failure(m, 1.0, x, p);
}

double algorithm_failure(const BudgetModel &m, double T, double N, int x, double p) {
    if (!(T >= 1.0) || !(N >= 1.0)) throw std::invalid_argument("T and N must be >= 1");
    return scaled_failure(m, T * N, x, p);
}

std::optional<int> required_distance(const BudgetModel &m, double T, double N, double p, double eps, int x_max) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("target failure must lie in (0, 1]");
    for (int x = 0; x <= x_max; ++x) {
        if (m.family == BudgetFamily::Table && static_cast<size_t>(x) >= m.table.size()) break;
        if (algorithm_failure(m, T, N, x, p) <= eps * (1.0 + kBudgetRelTol)) return x;
    }
    return std::nullopt;
}

int argmin_failure(const BudgetModel &m, double T, double N, double p, int x_max) {
    int best = 0;
    double best_value = algorithm_failure(m, T, N, 0, p);
    for (int x = 1; x <= x_max; ++x) {
        if (m.family == BudgetFamily::Table && static_cast<size_t>(x) >= m.table.size()) break;
        double v = algorithm_failure(m, T, N, x, p);
        if (v < best_value) {
            best_value = v;
            best = x;
        }
    }
    return best;
}

}  // namespace surfacelab
