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


#include "surfacelab/matching.h"

#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

using namespace surfacelab;

namespace {

constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

// Minimum-weight perfect matching by DP over subsets of the augmented node
// set, where event i may also take its boundary at boundary(i).
int64_t subset_dp_weight(const MatchingGraph &g) {
    const size_t n = g.num_events();
    std::vector<int64_t> best(size_t{1} << n, kInf);
    best[0] = 0;
    for (size_t mask = 1; mask < best.size(); ++mask) {
        size_t i = 0;
        while (!((mask >> i) & 1)) ++i;
        size_t rest = mask & ~(size_t{1} << i);
        if (g.boundary(i) >= 0 && best[rest] < kInf) best[mask] = std::min(best[mask], best[rest] + g.boundary(i));
        for (size_t j = i + 1; j < n; ++j) {
            if (!((rest >> j) & 1) || g.edge(i, j) < 0) continue;
            size_t r2 = rest & ~(size_t{1} << j);
            if (best[r2] < kInf) best[mask] = std::min(best[mask], best[r2] + g.edge(i, j));
        }
    }
    return best.back();
}

MatchingGraph random_graph(std::mt19937_64 &rng, size_t n, bool boundary, double density) {
    MatchingGraph g(n);
    std::uniform_int_distribution<int32_t> w(0, 9);
    std::bernoulli_distribution keep(density);
    for (size_t u = 0; u < n; ++u) {
        for (size_t v = u + 1; v < n; ++v) {
            if (keep(rng)) g.set_edge(u, v, w(rng));
        }
        if (boundary) g.set_boundary(u, w(rng));
    }
    return g;
}

// Maximum weight over all matchings (not necessarily perfect) by subset DP.
int64_t max_matching_weight(int32_t n, const std::vector<WeightedEdge> &edges) {
    std::vector<std::vector<int64_t>> w(n, std::vector<int64_t>(n, -1));
    for (const auto &e : edges) w[e.u][e.v] = w[e.v][e.u] = std::max(w[e.u][e.v], e.weight);
    std::vector<int64_t> best(size_t{1} << n, 0);
    for (size_t mask = 1; mask < best.size(); ++mask) {
        size_t i = 0;
        while (!((mask >> i) & 1)) ++i;
        size_t rest = mask & ~(size_t{1} << i);
        best[mask] = best[rest];
        for (int32_t j = static_cast<int32_t>(i) + 1; j < n; ++j) {
            if ((rest >> j) & 1 && w[i][j] >= 0) {
                best[mask] = std::max(best[mask], best[rest & ~(size_t{1} << j)] + w[i][j]);
            }
        }
    }
    return best.back();
}

}  // namespace

TEST(Matching, EmptyGraph) {
    MatchingGraph g(0);
    auto m = mwpm(g);
    EXPECT_TRUE(m.mate.empty());
    EXPECT_EQ(m.weight, 0);
}

TEST(Matching, PairCheaperThanTwoBoundaries) {
    MatchingGraph g(2);
    g.set_edge(0, 1, 3);
    g.set_boundary(0, 10);
    g.set_boundary(1, 10);
    auto m = mwpm(g);
    EXPECT_EQ(m.weight, 3);
    EXPECT_EQ(m.mate[0], 1);
    EXPECT_EQ(m.mate[1], 0);
}

TEST(Matching, LineOfFour) {
    const int pos[4] = {0, 1, 10, 11};
    MatchingGraph g(4);
    for (int u = 0; u < 4; ++u) {
        for (int v = u + 1; v < 4; ++v) g.set_edge(u, v, std::abs(pos[u] - pos[v]));
    }
    for (auto m : {mwpm(g), brute_force_mwpm(g)}) {
        EXPECT_EQ(m.weight, 2);
        EXPECT_EQ(m.mate[0], 1);
        EXPECT_EQ(m.mate[2], 3);
    }
}

TEST(Matching, BruteForceCountsAllPairings) {
    std::mt19937_64 rng(8);
    auto g = random_graph(rng, 8, false, 1.0);
    EXPECT_EQ(brute_force_mwpm(g).enumerated, 105u);
    auto two = random_graph(rng, 2, false, 1.0);
    EXPECT_EQ(brute_force_mwpm(two).enumerated, 1u);
}

TEST(Matching, OddEventsWithoutBoundaryFail) {
    MatchingGraph g(3);
    g.set_edge(0, 1, 1);
    g.set_edge(1, 2, 1);
    g.set_edge(0, 2, 1);
    EXPECT_THROW(mwpm(g), std::invalid_argument);
    EXPECT_THROW(brute_force_mwpm(MatchingGraph(kBruteForceMaxEvents + 1)), std::invalid_argument);
}

TEST(Matching, AgreesWithSubsetDp) {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 1000; ++trial) {
        size_t n = 1 + rng() % 10;
        bool boundary = trial % 4 != 0;
        if (!boundary && n % 2) ++n;
        auto g = random_graph(rng, n, boundary, boundary ? 0.6 : 1.0);
        const int64_t want = subset_dp_weight(g);
        auto fast = mwpm(g);
        auto slow = brute_force_mwpm(g);
        ASSERT_EQ(fast.weight, want) << "trial " << trial;
        ASSERT_EQ(slow.weight, want) << "trial " << trial;
        EXPECT_EQ(matching_weight(g, fast.mate), want);
    }
}

TEST(Matching, MatchingWeightRejectsInvalidPairing) {
    MatchingGraph g(2);
    g.set_edge(0, 1, 4);
    EXPECT_EQ(matching_weight(g, {1, 0}), 4);
    EXPECT_THROW(matching_weight(g, {1, -1}), std::exception);
    EXPECT_THROW(matching_weight(g, {-1, -1}), std::invalid_argument);
}

TEST(Blossom, MaxWeightAgreesWithSubsetDp) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        int32_t n = 2 + static_cast<int32_t>(rng() % 11);
        std::vector<WeightedEdge> edges;
        for (int32_t u = 0; u < n; ++u) {
            for (int32_t v = u + 1; v < n; ++v) {
                if (rng() % 3 == 0) edges.push_back({u, v, static_cast<int64_t>(rng() % 20)});
            }
        }
        auto mate = max_weight_matching(n, edges, false);
        int64_t total = 0;
        for (const auto &e : edges) {
            if (mate[e.u] == e.v) total += e.weight;
        }
        for (int32_t v = 0; v < n; ++v) {
            if (mate[v] >= 0) ASSERT_EQ(mate[mate[v]], v);
        }
        ASSERT_EQ(total, max_matching_weight(n, edges)) << "trial " << trial;
    }
}
