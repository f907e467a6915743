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

#ifndef SURFACELAB_MATCHING_H
#define SURFACELAB_MATCHING_H

#include <cstdint>
#include <vector>

namespace surfacelab {

struct WeightedEdge {
    int32_t u = 0;
    int32_t v = 0;
    int64_t weight = 0;
};

/// Maximum-weight matching on a general graph (Edmonds' blossom algorithm with
/// dual variables, O(n^3)). Integer weights keep the dual updates exact. With
/// `max_cardinality` the result is the heaviest among maximum-cardinality
/// matchings. Returns mate[v], or -1 for unmatched vertices.
std::vector<int32_t> max_weight_matching(
    int32_t num_vertices, const std::vector<WeightedEdge> &edges, bool max_cardinality);

/// Detection-event graph. Every pair of events may be joined by an edge of
/// nonnegative integer weight; each event may also be matched to its own
/// virtual boundary node (planar codes). Boundary-boundary edges cost 0, so
/// augmenting with one boundary node per event always admits a perfect matching.
class MatchingGraph {
  public:
    MatchingGraph() = default;
    explicit MatchingGraph(size_t num_events);

    size_t num_events() const { return n_; }
    void set_edge(size_t u, size_t v, int32_t weight);
    /// -1 when there is no edge.
    int32_t edge(size_t u, size_t v) const { return w_[u * n_ + v]; }
    void set_boundary(size_t u, int32_t weight) { boundary_[u] = weight; }
    /// -1 when the event cannot reach a boundary.
    int32_t boundary(size_t u) const { return boundary_[u]; }
    bool has_boundary() const;
    /// Events plus virtual boundary nodes.
    size_t augmented_node_count() const;

  private:
    size_t n_ = 0;
    std::vector<int32_t> w_;
    std::vector<int32_t> boundary_;
};

struct Matching {
    /// Partner of each event, or -1 when matched to the boundary.
    std::vector<int32_t> mate;
    int64_t weight = 0;
    /// Number of complete matchings visited (brute force only).
    uint64_t enumerated = 0;
};

/// Exact minimum-weight perfect matching of the augmented graph. Among
/// optimal matchings, ones using fewer boundary edges are preferred.
/// Throws std::invalid_argument when no perfect matching exists (for example
/// an odd number of events with no boundary).
Matching mwpm(const MatchingGraph &g);

inline constexpr size_t kBruteForceMaxEvents = 12;

/// Exhaustive oracle over all perfect matchings of the augmented graph (each
/// event either pairs with another event or goes to its boundary).
/// Throws std::invalid_argument above kBruteForceMaxEvents events.
Matching brute_force_mwpm(const MatchingGraph &g);

/// Total weight of a proposed matching; throws if it is not a valid perfect
/// matching of the augmented graph.
int64_t matching_weight(const MatchingGraph &g, const std::vector<int32_t> &mate);

}  // namespace surfacelab

#endif  // SURFACELAB_MATCHING_H
