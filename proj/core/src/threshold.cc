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

#include "surfacelab/threshold.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

namespace surfacelab {

std::pair<double, double> wilson_interval(uint64_t failures, uint64_t shots, double confidence) {
    if (shots == 0) return {0.0, 1.0};
    if (failures > shots) throw std::invalid_argument("failures exceed shots");
    if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0, 1)");
    boost::math::normal_distribution<double> normal;
    double z = boost::math::quantile(normal, 1.0 - (1.0 - confidence) / 2.0);
    double n = static_cast<double>(shots);
    double phat = static_cast<double>(failures) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    double lo = failures == 0 ? 0.0 : std::max(0.0, center - half);
    double hi = failures == shots ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

void ResultRow::finish() {
    p_l = shots == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(shots);
    std::tie(ci_lo, ci_hi) = wilson_interval(failures, shots);
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string ResultTable::to_csv(const std::vector<std::string> &header) const {
    std::ostringstream out;
    for (const auto &line : header) out << "# " << line << "\n";
    out << "preset,d,p,rounds,shots,failures,p_l,ci_lo,ci_hi\n";
    for (const auto &r : rows) {
        out << r.preset << ',' << r.d << ',' << fmt(r.p) << ',' << r.rounds << ',' << r.shots << ','
            << r.failures << ',' << fmt(r.p_l) << ',' << fmt(r.ci_lo) << ',' << fmt(r.ci_hi) << "\n";
    }
    return out.str();
}

nlohmann::json ResultTable::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &r : rows) {
        j.push_back({{"preset", r.preset},
                     {"d", r.d},
                     {"p", r.p},
                     {"rounds", r.rounds},
                     {"shots", r.shots},
                     {"failures", r.failures},
                     {"p_l", r.p_l},
                     {"ci_lo", r.ci_lo},
                     {"ci_hi", r.ci_hi}});
    }
    return j;
}

ResultTable ResultTable::from_csv(const std::string &text) {
    ResultTable table;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "preset,d,p,rounds,shots,failures,p_l,ci_lo,ci_hi") {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": unexpected CSV header");
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 9) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 9 columns");
        try {
            ResultRow r;
            r.preset = cells[0];
            r.d = std::stoi(cells[1]);
            r.p = std::stod(cells[2]);
            r.rounds = std::stoul(cells[3]);
            r.shots = std::stoull(cells[4]);
            r.failures = std::stoull(cells[5]);
            r.p_l = std::stod(cells[6]);
            r.ci_lo = std::stod(cells[7]);
            r.ci_hi = std::stod(cells[8]);
            if (r.failures > r.shots) throw std::invalid_argument("failures exceed shots");
            table.rows.push_back(r);
        } catch (const std::exception &e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!header_seen) throw std::invalid_argument("missing CSV header");
    return table;
}

std::vector<int> ResultTable::distances() const {
    std::set<int> ds;
    for (const auto &r : rows) ds.insert(r.d);
    return {ds.begin(), ds.end()};
}

nlohmann::json ThresholdEstimate::to_json() const {
    nlohmann::json j;
    j["p_th"] = p_th;
    j["spread"] = spread;
    auto &arr = j["crossings"] = nlohmann::json::array();
    for (const auto &c : crossings) {
        arr.push_back({{"d_small", c.d_small},
                       {"d_large", c.d_large},
                       {"p", c.p},
                       {"bracket", {c.p_below, c.p_above}}});
    }
    return j;
}

ThresholdEstimate estimate_threshold(const ResultTable &table) {
    std::map<int, std::map<double, const ResultRow *>> by_d;
    for (const auto &r : table.rows) by_d[r.d][r.p] = &r;
    if (by_d.size() < 2) throw std::invalid_argument("need at least two distances");
    ThresholdEstimate est;
    for (auto it = by_d.begin(); std::next(it) != by_d.end(); ++it) {
        auto jt = std::next(it);
        std::vector<std::pair<double, double>> f;  // (log p, log ratio)
        size_t shared = 0;
        for (const auto &[p, small] : it->second) {
            auto other = jt->second.find(p);
            if (other == jt->second.end()) continue;
            ++shared;
            if (small->failures == 0 || other->second->failures == 0 || p <= 0.0) continue;
            double ratio = std::log(other->second->p_l / small->p_l);
            if (ratio != 0.0) f.emplace_back(std::log(p), ratio);
        }
        if (shared < 3) throw std::invalid_argument("need at least three shared p points per distance pair");
        bool found = false;
        for (size_t i = 0; i + 1 < f.size(); ++i) {
            if (f[i].second < 0.0 && f[i + 1].second > 0.0) {
                double x0 = f[i].first, x1 = f[i + 1].first;
                double y0 = f[i].second, y1 = f[i + 1].second;
                double x = x0 - y0 * (x1 - x0) / (y1 - y0);
                est.crossings.push_back({it->first, jt->first, std::exp(x), std::exp(x0), std::exp(x1)});
                found = true;
                break;
            }
        }
        if (!found) {
            throw BracketNotFound("bracket not found for d=" + std::to_string(it->first) + " vs d=" +
                                  std::to_string(jt->first));
        }
    }
    double lo = est.crossings.front().p, hi = lo, sum = 0.0;
    for (const auto &c : est.crossings) {
        lo = std::min(lo, c.p);
        hi = std::max(hi, c.p);
        sum += c.p;
    }
    est.p_th = sum / static_cast<double>(est.crossings.size());
    est.spread = (hi - lo) / 2.0;
    return est;
}

ResultTable synthetic_table(
    const std::vector<int> &distances, const std::vector<double> &ps, double p_star, double amplitude,
    uint64_t shots) {
    ResultTable t;
    for (int d : distances) {
        for (double p : ps) {
            ResultRow r;
            r.preset = "synthetic";
            r.d = d;
            r.p = p;
            r.rounds = static_cast<size_t>(d);
            r.shots = shots;
            double pl = std::min(1.0, amplitude * std::pow(p / p_star, (d + 1) / 2.0));
            r.failures = static_cast<uint64_t>(std::llround(pl * static_cast<double>(shots)));
            r.finish();
            t.rows.push_back(r);
        }
    }
    return t;
}

double loglog_slope(const std::vector<ResultRow> &rows) {
    std::vector<std::pair<double, double>> pts;
    for (const auto &r : rows) {
        if (r.failures > 0 && r.p > 0.0) pts.emplace_back(std::log(r.p), std::log(r.p_l));
    }
    if (pts.size() < 2) throw std::invalid_argument("need two points with failures to fit a slope");
    double mx = 0, my = 0;
    for (auto [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0, sxx = 0;
    for (auto [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxy / sxx;
}

}  // namespace surfacelab
