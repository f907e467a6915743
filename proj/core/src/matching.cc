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

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace surfacelab {

namespace {

// Edmonds' blossom algorithm in the primal-dual formulation of Galil,
// following the structure of Joris van Rantwijk's public-domain
// implementation. Vertex duals are stored doubled so all arithmetic is integral.
//
// Endpoint p of edge k is vertex edges[k].u for p = 2k and edges[k].v for
// p = 2k + 1. Labels: 0 free, 1 S (outer), 2 T (inner); bit 4 marks blossoms
// during scan_blossom.
class Blossom {
  public:
    Blossom(int32_t n, const std::vector<WeightedEdge> &edges, bool max_cardinality)
        : n_(n), edges_(edges), max_cardinality_(max_cardinality) {}

    std::vector<int32_t> solve();

  private:
    using Ids = std::vector<int32_t>;

    int64_t slack(int32_t k) const {
        const auto &e = edges_[static_cast<size_t>(k)];
        return dual_[static_cast<size_t>(e.u)] + dual_[static_cast<size_t>(e.v)] - 2 * e.weight;
    }

    template <typename F>
    void for_leaves(int32_t b, F &&f) const {
        if (b < n_) {
            f(b);
            return;
        }
        for (int32_t t : childs_[static_cast<size_t>(b)]) for_leaves(t, f);
    }

    Ids leaves(int32_t b) const {
        Ids out;
        for_leaves(b, [&](int32_t v) { out.push_back(v); });
        return out;
    }

    static int32_t wrap(int32_t j, size_t size) {
        auto n = static_cast<int32_t>(size);
        return ((j % n) + n) % n;
    }

    int32_t &lab(int32_t i) { return label_[static_cast<size_t>(i)]; }
    int32_t &labend(int32_t i) { return labelend_[static_cast<size_t>(i)]; }
    int32_t &inb(int32_t v) { return inblossom_[static_cast<size_t>(v)]; }
    int32_t ep(int32_t p) const { return endpoint_[static_cast<size_t>(p)]; }

    void assign_label(int32_t w, int32_t t, int32_t p);
    int32_t scan_blossom(int32_t v, int32_t w);
    void add_blossom(int32_t base, int32_t k);
    void expand_blossom(int32_t b, bool endstage);
    void augment_blossom(int32_t b, int32_t v);
    void augment_matching(int32_t k);

    int32_t n_;
    const std::vector<WeightedEdge> &edges_;
    bool max_cardinality_;

    Ids endpoint_;
    std::vector<Ids> neighbend_;
    Ids mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_;
    std::vector<Ids> childs_, endps_, bestedges_;
    std::vector<bool> has_bestedges_;
    Ids unused_;
    std::vector<int64_t> dual_;
    std::vector<bool> allowedge_;
    Ids queue_;
};

void Blossom::assign_label(int32_t w, int32_t t, int32_t p) {
    int32_t b = inb(w);
    lab(w) = lab(b) = t;
    labend(w) = labend(b) = p;
    bestedge_[static_cast<size_t>(w)] = bestedge_[static_cast<size_t>(b)] = -1;
    if (t == 1) {
        for_leaves(b, [&](int32_t v) { queue_.push_back(v); });
    } else if (t == 2) {
        int32_t base = blossombase_[static_cast<size_t>(b)];
        int32_t m = mate_[static_cast<size_t>(base)];
        assign_label(ep(m), 1, m ^ 1);
    }
}

int32_t Blossom::scan_blossom(int32_t v, int32_t w) {
    Ids path;
    int32_t base = -1;
    while (v != -1 || w != -1) {
        int32_t b = inb(v);
        if (lab(b) & 4) {
            base = blossombase_[static_cast<size_t>(b)];
            break;
        }
        path.push_back(b);
        lab(b) = 5;
        if (labend(b) == -1) {
            v = -1;
        } else {
            v = ep(labend(b));
            b = inb(v);
            v = ep(labend(b));
        }
        if (w != -1) std::swap(v, w);
    }
    for (int32_t b : path) lab(b) = 1;
    return base;
}

void Blossom::add_blossom(int32_t base, int32_t k) {
    const auto &e = edges_[static_cast<size_t>(k)];
    int32_t v = e.u;
    int32_t w = e.v;
    int32_t bb = inb(base);
    int32_t bv = inb(v);
    int32_t bw = inb(w);
    int32_t b = unused_.back();
    unused_.pop_back();
    auto sb = static_cast<size_t>(b);
    blossombase_[sb] = base;
    blossomparent_[sb] = -1;
    blossomparent_[static_cast<size_t>(bb)] = b;
    Ids path, endps;
    while (bv != bb) {
        blossomparent_[static_cast<size_t>(bv)] = b;
        path.push_back(bv);
        endps.push_back(labend(bv));
        v = ep(labend(bv));
        bv = inb(v);
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
        blossomparent_[static_cast<size_t>(bw)] = b;
        path.push_back(bw);
        endps.push_back(labend(bw) ^ 1);
        w = ep(labend(bw));
        bw = inb(w);
    }
    childs_[sb] = path;
    endps_[sb] = endps;
    lab(b) = 1;
    labend(b) = labend(bb);
    dual_[sb] = 0;
    for (int32_t leaf : leaves(b)) {
        if (lab(inb(leaf)) == 2) queue_.push_back(leaf);
        inb(leaf) = b;
    }
    Ids bestedgeto(static_cast<size_t>(2 * n_), -1);
    for (int32_t sub : path) {
        auto ss = static_cast<size_t>(sub);
        std::vector<Ids> lists;
        if (!has_bestedges_[ss]) {
            for (int32_t leaf : leaves(sub)) {
                Ids ks;
                for (int32_t p : neighbend_[static_cast<size_t>(leaf)]) ks.push_back(p / 2);
                lists.push_back(std::move(ks));
            }
        } else {
            lists.push_back(bestedges_[ss]);
        }
        for (const auto &list : lists) {
            for (int32_t kk : list) {
                const auto &ed = edges_[static_cast<size_t>(kk)];
                int32_t j = ed.v;
                if (inb(j) == b) j = ed.u;
                int32_t bj = inb(j);
                auto sbj = static_cast<size_t>(bj);
                if (bj != b && lab(bj) == 1 && (bestedgeto[sbj] == -1 || slack(kk) < slack(bestedgeto[sbj]))) {
                    bestedgeto[sbj] = kk;
                }
            }
        }
        bestedges_[ss].clear();
        has_bestedges_[ss] = false;
        bestedge_[ss] = -1;
    }
    bestedges_[sb].clear();
    for (int32_t kk : bestedgeto) {
        if (kk != -1) bestedges_[sb].push_back(kk);
    }
    has_bestedges_[sb] = true;
    bestedge_[sb] = -1;
    for (int32_t kk : bestedges_[sb]) {
        if (bestedge_[sb] == -1 || slack(kk) < slack(bestedge_[sb])) bestedge_[sb] = kk;
    }
}

void Blossom::expand_blossom(int32_t b, bool endstage) {
    auto sb = static_cast<size_t>(b);
    for (int32_t s : childs_[sb]) {
        blossomparent_[static_cast<size_t>(s)] = -1;
        if (s < n_) {
            inb(s) = s;
        } else if (endstage && dual_[static_cast<size_t>(s)] == 0) {
            expand_blossom(s, endstage);
        } else {
            for_leaves(s, [&](int32_t v) { inb(v) = s; });
        }
    }
    if (!endstage && lab(b) == 2) {
        const Ids &ch = childs_[sb];
        const Ids &ends = endps_[sb];
        int32_t entrychild = inb(ep(labend(b) ^ 1));
        auto j = static_cast<int32_t>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
        int32_t jstep, endptrick;
        if (j & 1) {
            j -= static_cast<int32_t>(ch.size());
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        int32_t p = labend(b);
        while (j != 0) {
            lab(ep(p ^ 1)) = 0;
            lab(ep(ends[static_cast<size_t>(wrap(j - endptrick, ends.size()))] ^ endptrick ^ 1)) = 0;
            assign_label(ep(p ^ 1), 2, p);
            allowedge_[static_cast<size_t>(ends[static_cast<size_t>(wrap(j - endptrick, ends.size()))] / 2)] = true;
            j += jstep;
            p = ends[static_cast<size_t>(wrap(j - endptrick, ends.size()))] ^ endptrick;
            allowedge_[static_cast<size_t>(p / 2)] = true;
            j += jstep;
        }
        int32_t bv = ch[static_cast<size_t>(wrap(j, ch.size()))];
        lab(ep(p ^ 1)) = lab(bv) = 2;
        labend(ep(p ^ 1)) = labend(bv) = p;
        bestedge_[static_cast<size_t>(bv)] = -1;
        j += jstep;
        while (ch[static_cast<size_t>(wrap(j, ch.size()))] != entrychild) {
            bv = ch[static_cast<size_t>(wrap(j, ch.size()))];
            if (lab(bv) == 1) {
                j += jstep;
                continue;
            }
            int32_t found = -1;
            for (int32_t v : leaves(bv)) {
                if (lab(v) != 0) {
                    found = v;
                    break;
                }
            }
            if (found != -1) {
                lab(found) = 0;
                lab(ep(mate_[static_cast<size_t>(blossombase_[static_cast<size_t>(bv)])])) = 0;
                assign_label(found, 2, labend(found));
            }
            j += jstep;
        }
    }
    lab(b) = labend(b) = -1;
    childs_[sb].clear();
    endps_[sb].clear();
    blossombase_[sb] = -1;
    bestedges_[sb].clear();
    has_bestedges_[sb] = false;
    bestedge_[sb] = -1;
    unused_.push_back(b);
}

void Blossom::augment_blossom(int32_t b, int32_t v) {
    auto sb = static_cast<size_t>(b);
    int32_t t = v;
    while (blossomparent_[static_cast<size_t>(t)] != b) t = blossomparent_[static_cast<size_t>(t)];
    if (t >= n_) augment_blossom(t, v);
    Ids &ch = childs_[sb];
    Ids &ends = endps_[sb];
    auto i = static_cast<int32_t>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int32_t j = i;
    int32_t jstep, endptrick;
    if (i & 1) {
        j -= static_cast<int32_t>(ch.size());
        jstep = 1;
        endptrick = 0;
    } else {
        jstep = -1;
        endptrick = 1;
    }
    while (j != 0) {
        j += jstep;
        t = ch[static_cast<size_t>(wrap(j, ch.size()))];
        int32_t p = ends[static_cast<size_t>(wrap(j - endptrick, ends.size()))] ^ endptrick;
        if (t >= n_) augment_blossom(t, ep(p));
        j += jstep;
        t = ch[static_cast<size_t>(wrap(j, ch.size()))];
        if (t >= n_) augment_blossom(t, ep(p ^ 1));
        mate_[static_cast<size_t>(ep(p))] = p ^ 1;
        mate_[static_cast<size_t>(ep(p ^ 1))] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ends.begin(), ends.begin() + i, ends.end());
    blossombase_[sb] = blossombase_[static_cast<size_t>(ch[0])];
}

void Blossom::augment_matching(int32_t k) {
    const auto &e = edges_[static_cast<size_t>(k)];
    const std::pair<int32_t, int32_t> starts[2] = {{e.u, 2 * k + 1}, {e.v, 2 * k}};
    for (auto [s, p] : starts) {
        while (true) {
            int32_t bs = inb(s);
            if (bs >= n_) augment_blossom(bs, s);
            mate_[static_cast<size_t>(s)] = p;
            if (labend(bs) == -1) break;
            int32_t t = ep(labend(bs));
            int32_t bt = inb(t);
            s = ep(labend(bt));
            int32_t j = ep(labend(bt) ^ 1);
            if (bt >= n_) augment_blossom(bt, j);
            mate_[static_cast<size_t>(j)] = labend(bt);
            p = labend(bt) ^ 1;
        }
    }
}

std::vector<int32_t> Blossom::solve() {
    if (edges_.empty() || n_ == 0) return Ids(static_cast<size_t>(n_), -1);
    auto nedge = static_cast<int32_t>(edges_.size());
    auto n2 = static_cast<size_t>(2 * n_);
    int64_t maxweight = 0;
    for (const auto &e : edges_) {
        if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_ || e.u == e.v) {
            throw std::invalid_argument("edge endpoint out of range or self loop");
        }
        maxweight = std::max(maxweight, e.weight);
    }
    endpoint_.resize(static_cast<size_t>(2 * nedge));
    neighbend_.assign(static_cast<size_t>(n_), {});
    for (int32_t k = 0; k < nedge; ++k) {
        const auto &e = edges_[static_cast<size_t>(k)];
        endpoint_[static_cast<size_t>(2 * k)] = e.u;
        endpoint_[static_cast<size_t>(2 * k + 1)] = e.v;
        neighbend_[static_cast<size_t>(e.u)].push_back(2 * k + 1);
        neighbend_[static_cast<size_t>(e.v)].push_back(2 * k);
    }
    mate_.assign(static_cast<size_t>(n_), -1);
    label_.assign(n2, 0);
    labelend_.assign(n2, -1);
    inblossom_.resize(static_cast<size_t>(n_));
    std::iota(inblossom_.begin(), inblossom_.end(), 0);
    blossomparent_.assign(n2, -1);
    childs_.assign(n2, {});
    endps_.assign(n2, {});
    blossombase_.assign(n2, -1);
    std::iota(blossombase_.begin(), blossombase_.begin() + n_, 0);
    bestedge_.assign(n2, -1);
    bestedges_.assign(n2, {});
    has_bestedges_.assign(n2, false);
    unused_.clear();
    for (int32_t b = 2 * n_ - 1; b >= n_; --b) unused_.push_back(b);
    std::reverse(unused_.begin(), unused_.end());
    dual_.assign(n2, 0);
    std::fill(dual_.begin(), dual_.begin() + n_, maxweight);
    allowedge_.assign(static_cast<size_t>(nedge), false);

    for (int32_t stage = 0; stage < n_; ++stage) {
        std::fill(label_.begin(), label_.end(), 0);
        std::fill(bestedge_.begin(), bestedge_.end(), -1);
        for (size_t b = static_cast<size_t>(n_); b < n2; ++b) {
            bestedges_[b].clear();
            has_bestedges_[b] = false;
        }
        std::fill(allowedge_.begin(), allowedge_.end(), false);
        queue_.clear();
        for (int32_t v = 0; v < n_; ++v) {
            if (mate_[static_cast<size_t>(v)] == -1 && lab(inb(v)) == 0) assign_label(v, 1, -1);
        }
        bool augmented = false;
        while (true) {
            while (!queue_.empty() && !augmented) {
                int32_t v = queue_.back();
                queue_.pop_back();
                for (int32_t p : neighbend_[static_cast<size_t>(v)]) {
                    int32_t k = p / 2;
                    int32_t w = ep(p);
                    if (inb(v) == inb(w)) continue;
                    int64_t kslack = 0;
                    if (!allowedge_[static_cast<size_t>(k)]) {
                        kslack = slack(k);
                        if (kslack <= 0) allowedge_[static_cast<size_t>(k)] = true;
                    }
                    if (allowedge_[static_cast<size_t>(k)]) {
                        if (lab(inb(w)) == 0) {
                            assign_label(w, 2, p ^ 1);
                        } else if (lab(inb(w)) == 1) {
                            int32_t base = scan_blossom(v, w);
                            if (base >= 0) {
                                add_blossom(base, k);
                            } else {
                                augment_matching(k);
                                augmented = true;
                                break;
                            }
                        } else if (lab(w) == 0) {
                            lab(w) = 2;
                            labend(w) = p ^ 1;
                        }
                    } else if (lab(inb(w)) == 1) {
                        int32_t b = inb(v);
                        auto sb = static_cast<size_t>(b);
                        if (bestedge_[sb] == -1 || kslack < slack(bestedge_[sb])) bestedge_[sb] = k;
                    } else if (lab(w) == 0) {
                        auto sw = static_cast<size_t>(w);
                        if (bestedge_[sw] == -1 || kslack < slack(bestedge_[sw])) bestedge_[sw] = k;
                    }
                }
            }
            if (augmented) break;

            int32_t deltatype = -1;
            int64_t delta = 0;
            int32_t deltaedge = -1;
            int32_t deltablossom = -1;
            if (!max_cardinality_) {
                deltatype = 1;
                delta = *std::min_element(dual_.begin(), dual_.begin() + n_);
            }
            for (int32_t v = 0; v < n_; ++v) {
                auto sv = static_cast<size_t>(v);
                if (lab(inb(v)) == 0 && bestedge_[sv] != -1) {
                    int64_t d = slack(bestedge_[sv]);
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 2;
                        deltaedge = bestedge_[sv];
                    }
                }
            }
            for (int32_t b = 0; b < 2 * n_; ++b) {
                auto sb = static_cast<size_t>(b);
                if (blossomparent_[sb] == -1 && lab(b) == 1 && bestedge_[sb] != -1) {
                    int64_t d = slack(bestedge_[sb]) / 2;
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 3;
                        deltaedge = bestedge_[sb];
                    }
                }
            }
            for (int32_t b = n_; b < 2 * n_; ++b) {
                auto sb = static_cast<size_t>(b);
                if (blossombase_[sb] >= 0 && blossomparent_[sb] == -1 && lab(b) == 2 &&
                    (deltatype == -1 || dual_[sb] < delta)) {
                    delta = dual_[sb];
                    deltatype = 4;
                    deltablossom = b;
                }
            }
            if (deltatype == -1) {
                deltatype = 1;
                delta = std::max<int64_t>(0, *std::min_element(dual_.begin(), dual_.begin() + n_));
            }
            for (int32_t v = 0; v < n_; ++v) {
                int32_t l = lab(inb(v));
                if (l == 1) {
                    dual_[static_cast<size_t>(v)] -= delta;
                } else if (l == 2) {
                    dual_[static_cast<size_t>(v)] += delta;
                }
            }
            for (int32_t b = n_; b < 2 * n_; ++b) {
                auto sb = static_cast<size_t>(b);
                if (blossombase_[sb] >= 0 && blossomparent_[sb] == -1) {
                    if (lab(b) == 1) {
                        dual_[sb] += delta;
                    } else if (lab(b) == 2) {
                        dual_[sb] -= delta;
                    }
                }
            }
            if (deltatype == 1) break;
            if (deltatype == 2) {
                allowedge_[static_cast<size_t>(deltaedge)] = true;
                const auto &e = edges_[static_cast<size_t>(deltaedge)];
                int32_t i = e.u;
                if (lab(inb(i)) == 0) i = e.v;
                queue_.push_back(i);
            } else if (deltatype == 3) {
                allowedge_[static_cast<size_t>(deltaedge)] = true;
                queue_.push_back(edges_[static_cast<size_t>(deltaedge)].u);
            } else {
                expand_blossom(deltablossom, false);
            }
        }
        if (!augmented) break;
        for (int32_t b = n_; b < 2 * n_; ++b) {
            auto sb = static_cast<size_t>(b);
            if (blossomparent_[sb] == -1 && blossombase_[sb] >= 0 && lab(b) == 1 && dual_[sb] == 0) {
                expand_blossom(b, true);
            }
        }
    }
    Ids result(static_cast<size_t>(n_), -1);
    for (int32_t v = 0; v < n_; ++v) {
        int32_t m = mate_[static_cast<size_t>(v)];
        if (m >= 0) result[static_cast<size_t>(v)] = ep(m);
    }
    return result;
}

}  // namespace

std::vector<int32_t> max_weight_matching(
    int32_t num_vertices, const std::vector<WeightedEdge> &edges, bool max_cardinality) {
    Blossom solver(num_vertices, edges, max_cardinality);
    return solver.solve();
}

MatchingGraph::MatchingGraph(size_t num_events)
    : n_(num_events), w_(num_events * num_events, -1), boundary_(num_events, -1) {}

void MatchingGraph::set_edge(size_t u, size_t v, int32_t weight) {
    if (u >= n_ || v >= n_ || u == v) throw std::invalid_argument("bad edge endpoints");
    if (weight < -1) throw std::invalid_argument("edge weights must be nonnegative");
    w_[u * n_ + v] = w_[v * n_ + u] = weight;
}

bool MatchingGraph::has_boundary() const {
    return std::any_of(boundary_.begin(), boundary_.end(), [](int32_t b) { return b >= 0; });
}

size_t MatchingGraph::augmented_node_count() const {
    return n_ + static_cast<size_t>(std::count_if(boundary_.begin(), boundary_.end(), [](int32_t b) {
               return b >= 0;
           }));
}

int64_t matching_weight(const MatchingGraph &g, const std::vector<int32_t> &mate) {
    size_t n = g.num_events();
    if (mate.size() != n) throw std::invalid_argument("mate vector size mismatch");
    int64_t total = 0;
    for (size_t u = 0; u < n; ++u) {
        int32_t m = mate[u];
        if (m < 0) {
            if (g.boundary(u) < 0) throw std::invalid_argument("event matched to a missing boundary");
            total += g.boundary(u);
        } else {
            auto sm = static_cast<size_t>(m);
            if (sm >= n || mate[sm] != static_cast<int32_t>(u)) throw std::invalid_argument("mate is not symmetric");
            if (g.edge(u, sm) < 0) throw std::invalid_argument("matched pair has no edge");
            if (u < sm) total += g.edge(u, sm);
        }
    }
    return total;
}

Matching mwpm(const MatchingGraph &g) {
    size_t n = g.num_events();
    Matching result;
    result.mate.assign(n, -1);
    if (n == 0) return result;

    // Drop event edges that are never better than sending both ends to the
    // boundary, then solve each connected component on its own.
    auto useful = [&](size_t u, size_t v) {
        int32_t w = g.edge(u, v);
        if (w < 0) return false;
        if (g.boundary(u) >= 0 && g.boundary(v) >= 0 && w > g.boundary(u) + g.boundary(v)) return false;
        return true;
    };
    std::vector<int32_t> comp(n, -1);
    std::vector<std::vector<size_t>> components;
    for (size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        auto id = static_cast<int32_t>(components.size());
        components.push_back({s});
        comp[s] = id;
        for (size_t head = 0; head < components.back().size(); ++head) {
            size_t u = components.back()[head];
            for (size_t v = 0; v < n; ++v) {
                if (comp[v] < 0 && v != u && useful(u, v)) {
                    comp[v] = id;
                    components.back().push_back(v);
                }
            }
        }
    }

    for (const auto &members : components) {
        size_t k = members.size();
        if (k == 1) {
            if (g.boundary(members[0]) < 0) throw std::invalid_argument("no perfect matching exists");
            continue;
        }
        // Local ids: events 0..k-1, boundary twin of event i at k + i.
        // Costs are weight * scale plus one per boundary edge, so among
        // equal-weight matchings the one with fewer boundary edges wins.
        auto scale = static_cast<int64_t>(k + 1);
        std::vector<WeightedEdge> edges;
        int64_t max_cost = 0;
        std::vector<std::tuple<int32_t, int32_t, int64_t>> costs;
        for (size_t i = 0; i < k; ++i) {
            for (size_t j = i + 1; j < k; ++j) {
                if (!useful(members[i], members[j])) continue;
                int64_t c = int64_t{g.edge(members[i], members[j])} * scale;
                costs.emplace_back(static_cast<int32_t>(i), static_cast<int32_t>(j), c);
                if (g.boundary(members[i]) >= 0 && g.boundary(members[j]) >= 0) {
                    costs.emplace_back(static_cast<int32_t>(k + i), static_cast<int32_t>(k + j), 0);
                }
            }
            if (g.boundary(members[i]) >= 0) {
                int64_t c = int64_t{g.boundary(members[i])} * scale + 1;
                costs.emplace_back(static_cast<int32_t>(i), static_cast<int32_t>(k + i), c);
            }
        }
        for (const auto &[u, v, c] : costs) max_cost = std::max(max_cost, c);
        edges.reserve(costs.size());
        for (const auto &[u, v, c] : costs) edges.push_back({u, v, max_cost + 1 - c});
        auto mate = max_weight_matching(static_cast<int32_t>(2 * k), edges, true);
        for (size_t i = 0; i < k; ++i) {
            int32_t m = mate[i];
            if (m < 0) {
                throw std::invalid_argument("no perfect matching exists");
            }
            if (static_cast<size_t>(m) >= k) {
                result.mate[members[i]] = -1;
            } else {
                result.mate[members[i]] = static_cast<int32_t>(members[static_cast<size_t>(m)]);
            }
        }
        for (size_t i = 0; i < k; ++i) {
            if (g.boundary(members[i]) >= 0 && mate[k + i] < 0) throw std::logic_error("imperfect augmented matching");
        }
    }
    result.weight = matching_weight(g, result.mate);
    return result;
}

Matching brute_force_mwpm(const MatchingGraph &g) {
    size_t n = g.num_events();
    if (n > kBruteForceMaxEvents) throw std::invalid_argument("brute-force matching is limited to 12 events");
    Matching best;
    best.weight = std::numeric_limits<int64_t>::max();
    std::vector<int32_t> mate(n, -2);
    uint64_t count = 0;
    int64_t best_boundary = 0;
    std::function<void(int64_t, int64_t)> recurse = [&](int64_t weight, int64_t boundary_edges) {
        size_t u = 0;
        while (u < n && mate[u] != -2) ++u;
        if (u == n) {
            ++count;
            if (weight < best.weight || (weight == best.weight && boundary_edges < best_boundary)) {
                best.weight = weight;
                best.mate = mate;
                best_boundary = boundary_edges;
            }
            return;
        }
        if (g.boundary(u) >= 0) {
            mate[u] = -1;
            recurse(weight + g.boundary(u), boundary_edges + 1);
            mate[u] = -2;
        }
        for (size_t v = u + 1; v < n; ++v) {
            if (mate[v] != -2 || g.edge(u, v) < 0) continue;
            mate[u] = static_cast<int32_t>(v);
            mate[v] = static_cast<int32_t>(u);
            recurse(weight + g.edge(u, v), boundary_edges);
            mate[u] = mate[v] = -2;
        }
    };
    recurse(0, 0);
    if (count == 0) throw std::invalid_argument("no perfect matching exists");
    best.enumerated = count;
    return best;
}

}  // namespace surfacelab
