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


#include "surfacelab/planner.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace surfacelab {

namespace {

constexpr double kCorner = 0.25;
constexpr std::array<double, 4> kDx{0.0, kCorner, 0.0, -kCorner};
constexpr std::array<double, 4> kDy{-kCorner, 0.0, kCorner, 0.0};

struct Segment {
    double x1, y1, x2, y2;
};

int wrap(int v, int n) { return ((v % n) + n) % n; }

Corner parse_corner(const std::string &s) {
    static const std::map<std::string, Corner> names{{"N", Corner::N}, {"E", Corner::E}, {"S", Corner::S}, {"W", Corner::W}};
    auto it = names.find(s);
    if (it == names.end()) throw std::invalid_argument("bad corner '" + s + "'");
    return it->second;
}

Segment segment_of(const Floorplan &f, const Resonator &res) {
    const PhysQubit &a = f.qubits[res.a];
    if (res.stub()) return {a.x, a.y, res.end_x, res.end_y};
    const PhysQubit &b = f.qubits[*res.b];
    double dx = b.x - a.x, dy = b.y - a.y;
    if (f.periodic()) {
        dx -= f.cols * std::round(dx / f.cols);
        dy -= f.rows * std::round(dy / f.rows);
    }
    return {a.x, a.y, a.x + dx, a.y + dy};
}

int orient(double ax, double ay, double bx, double by, double cx, double cy) {
    double v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return (v > 0) - (v < 0);
}

bool on_segment(double ax, double ay, double bx, double by, double px, double py) {
    return std::min(ax, bx) <= px && px <= std::max(ax, bx) && std::min(ay, by) <= py && py <= std::max(ay, by);
}

// Contact other than a single shared endpoint.
bool crosses(const Segment &s, const Segment &t) {
    const std::array<std::pair<double, double>, 2> se{{{s.x1, s.y1}, {s.x2, s.y2}}};
    const std::array<std::pair<double, double>, 2> te{{{t.x1, t.y1}, {t.x2, t.y2}}};
    for (size_t i = 0; i < 2; ++i) {
        for (size_t j = 0; j < 2; ++j) {
            if (se[i] != te[j]) continue;
            auto [px, py] = se[i];
            auto [sx, sy] = se[1 - i];
            auto [tx, ty] = te[1 - j];
            if (orient(px, py, sx, sy, tx, ty) != 0) return false;
            return (sx - px) * (tx - px) + (sy - py) * (ty - py) > 0;
        }
    }
    int o1 = orient(s.x1, s.y1, s.x2, s.y2, t.x1, t.y1);
    int o2 = orient(s.x1, s.y1, s.x2, s.y2, t.x2, t.y2);
    int o3 = orient(t.x1, t.y1, t.x2, t.y2, s.x1, s.y1);
    int o4 = orient(t.x1, t.y1, t.x2, t.y2, s.x2, s.y2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(s.x1, s.y1, s.x2, s.y2, t.x1, t.y1)) return true;
    if (o2 == 0 && on_segment(s.x1, s.y1, s.x2, s.y2, t.x2, t.y2)) return true;
    if (o3 == 0 && on_segment(t.x1, t.y1, t.x2, t.y2, s.x1, s.y1)) return true;
    if (o4 == 0 && on_segment(t.x1, t.y1, t.x2, t.y2, s.x2, s.y2)) return true;
    return false;
}

double midpoint_distance(const Floorplan &f, const Resonator &p, const Resonator &q) {
    Segment s = segment_of(f, p), t = segment_of(f, q);
    double dx = (s.x1 + s.x2 - t.x1 - t.x2) / 2, dy = (s.y1 + s.y2 - t.y1 - t.y2) / 2;
    if (f.periodic()) {
        dx -= f.cols * std::round(dx / f.cols);
        dy -= f.rows * std::round(dy / f.rows);
    }
    return std::hypot(dx, dy);
}

bool share_qubit(const Resonator &p, const Resonator &q) {
    auto has = [](const Resonator &r, uint32_t v) { return r.a == v || (r.b && *r.b == v); };
    return has(q, p.a) || (p.b && has(q, *p.b));
}

}  // namespace

const char *corner_name(Corner c) {
    static const char *names[4] = {"N", "E", "S", "W"};
    return names[static_cast<int>(c)];
}

int32_t Floorplan::tile_at(int r, int c) const {
    if (periodic()) {
        r = wrap(r, rows);
        c = wrap(c, cols);
    } else if (r < 0 || c < 0 || r >= rows || c >= cols) {
        return -1;
    }
    return r * cols + c;
}

double resonator_length_mm(int freq_class) { return 8.0 + 0.25 * freq_class; }

Floorplan generate_tiling(int rows, int cols, bool periodic) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("tiling needs at least one site");
    if (periodic && (rows < 2 || cols < 2)) throw std::invalid_argument("periodic tiling needs at least 2 x 2 sites");
    Floorplan f;
    f.topology = periodic ? "toric" : "planar";
    f.size = rows;
    f.rows = rows;
    f.cols = cols;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            Tile t;
            t.id = static_cast<uint32_t>(f.tiles.size());
            t.r = r;
            t.c = c;
            t.kind = "site";
            for (int k = 0; k < 4; ++k) {
                PhysQubit q;
                q.id = static_cast<uint32_t>(f.qubits.size());
                q.tile = t.id;
                q.corner = static_cast<Corner>(k);
                q.x = c + kDx[k];
                q.y = r + kDy[k];
                t.qubits[k] = q.id;
                f.qubits.push_back(q);
            }
            f.tiles.push_back(t);
        }
    }
    struct RingCorner {
        int r, c;
        Corner corner;
    };
    const int gr_end = periodic ? rows : rows + 1;
    const int gc_end = periodic ? cols : cols + 1;
    for (int gr = 0; gr < gr_end; ++gr) {
        for (int gc = 0; gc < gc_end; ++gc) {
            const std::array<RingCorner, 4> ring{{{gr, gc, Corner::N},
                                                  {gr, gc - 1, Corner::E},
                                                  {gr - 1, gc - 1, Corner::S},
                                                  {gr - 1, gc, Corner::W}}};
            for (int side = 0; side < 4; ++side) {
                const RingCorner &u = ring[side];
                const RingCorner &v = ring[(side + 1) % 4];
                int32_t tu = f.tile_at(u.r, u.c), tv = f.tile_at(v.r, v.c);
                if (tu < 0 && tv < 0) continue;
                Resonator res;
                res.id = static_cast<uint32_t>(f.resonators.size());
                res.gap_r = gr;
                res.gap_c = gc;
                res.side = side;
                if (tu >= 0 && tv >= 0) {
                    res.a = f.tiles[tu].qubits[static_cast<int>(u.corner)];
                    res.b = f.tiles[tv].qubits[static_cast<int>(v.corner)];
                    auto outside = [&](const RingCorner &p) { return p.r < 0 || p.c < 0 || p.r >= rows || p.c >= cols; };
                    res.wraps = outside(u) || outside(v);
                } else {
                    const RingCorner &have = tu >= 0 ? u : v;
                    const RingCorner &miss = tu >= 0 ? v : u;
                    res.a = f.tiles[tu >= 0 ? tu : tv].qubits[static_cast<int>(have.corner)];
                    const PhysQubit &q = f.qubits[res.a];
                    double px = miss.c + kDx[static_cast<int>(miss.corner)];
                    double py = miss.r + kDy[static_cast<int>(miss.corner)];
                    res.end_x = q.x + 0.5 * (px - q.x);
                    res.end_y = q.y + 0.5 * (py - q.y);
                }
                f.resonators.push_back(res);
            }
        }
    }
    return f;
}

Floorplan generate_tiling(const SurfaceLattice &lat) {
    const bool periodic = lat.topology() == Topology::Toric;
    Floorplan f = generate_tiling(lat.rows(), lat.cols(), periodic);
    f.size = lat.size();
    for (Tile &t : f.tiles) {
        if (lat.data_at(t.r, t.c) >= 0) {
            t.kind = "data";
        } else {
            int32_t k = lat.check_at(t.r, t.c);
            t.kind = k >= 0 && lat.check(k).type == CheckType::X ? "x_check" : "z_check";
        }
    }
    return f;
}

std::vector<std::pair<uint32_t, uint32_t>> conflict_edges(const Floorplan &f, double radius) {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    const auto &rs = f.resonators;
    for (size_t i = 0; i < rs.size(); ++i) {
        for (size_t j = i + 1; j < rs.size(); ++j) {
            if (share_qubit(rs[i], rs[j]) || midpoint_distance(f, rs[i], rs[j]) <= radius + 1e-9) {
                out.emplace_back(static_cast<uint32_t>(i), static_cast<uint32_t>(j));
            }
        }
    }
    return out;
}

double nearest_neighbor_radius(const Floorplan &f) {
    double best = 0.0;
    const auto &rs = f.resonators;
    for (size_t i = 0; i < rs.size(); ++i) {
        for (size_t j = i + 1; j < rs.size(); ++j) {
            if (share_qubit(rs[i], rs[j])) continue;
            double d = midpoint_distance(f, rs[i], rs[j]);
            if (best == 0.0 || d < best) best = d;
        }
    }
    return best;
}

Floorplan assign_frequencies(Floorplan f, double radius) {
    std::vector<std::vector<uint32_t>> adj(f.resonators.size());
    for (auto [i, j] : conflict_edges(f, radius)) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto &r : f.resonators) r.freq_class = -1;
    for (size_t i = 0; i < f.resonators.size(); ++i) {
        std::vector<bool> used(adj[i].size() + 1, false);
        for (uint32_t j : adj[i]) {
            int k = f.resonators[j].freq_class;
            if (k >= 0 && static_cast<size_t>(k) < used.size()) used[k] = true;
        }
        int k = 0;
        while (used[k]) ++k;
        f.resonators[i].freq_class = k;
    }
    f.conflict_radius = radius;
    return f;
}

size_t coloring_conflicts(const Floorplan &f) {
    size_t bad = 0;
    for (auto [i, j] : conflict_edges(f, f.conflict_radius)) {
        int a = f.resonators[i].freq_class, b = f.resonators[j].freq_class;
        if (a < 0 || b < 0 || a == b) ++bad;
    }
    return bad;
}

std::optional<std::pair<uint32_t, uint32_t>> find_crossing(const Floorplan &f) {
    struct Item {
        Segment s;
        double lo, hi;
        uint32_t id;
    };
    std::vector<Item> items;
    for (const auto &r : f.resonators) {
        if (r.wraps) continue;
        Segment s = segment_of(f, r);
        items.push_back({s, std::min(s.x1, s.x2), std::max(s.x1, s.x2), r.id});
    }
    std::sort(items.begin(), items.end(), [](const Item &a, const Item &b) { return a.lo < b.lo; });
    std::vector<const Item *> live;
    for (const Item &it : items) {
        std::erase_if(live, [&](const Item *o) { return o->hi < it.lo; });
        for (const Item *o : live) {
            if (crosses(it.s, o->s)) return std::make_pair(std::min(it.id, o->id), std::max(it.id, o->id));
        }
        live.push_back(&it);
    }
    return std::nullopt;
}

Periodicity find_period(const Floorplan &f, int max_period, int margin) {
    std::map<std::array<int, 3>, int> cls;
    int lo_r = margin, hi_r = f.rows - margin, lo_c = margin, hi_c = f.cols - margin;
    for (const auto &r : f.resonators) {
        if (r.stub()) continue;
        if (r.gap_r < lo_r || r.gap_r > hi_r || r.gap_c < lo_c || r.gap_c > hi_c) continue;
        cls[{r.gap_r, r.gap_c, r.side}] = r.freq_class;
    }
    auto works = [&](int dr, int dc) {
        size_t compared = 0;
        for (const auto &[key, k] : cls) {
            auto it = cls.find({key[0] + dr, key[1] + dc, key[2]});
            if (it == cls.end()) continue;
            if (it->second != k) return false;
            ++compared;
        }
        return compared > 0;
    };
    Periodicity out;
    for (int p = 1; p <= max_period && !out.rows; ++p) {
        if (works(p, 0)) out.rows = p;
    }
    for (int p = 1; p <= max_period && !out.cols; ++p) {
        if (works(0, p)) out.cols = p;
    }
    return out;
}

FanoutReport fanout_report(const Floorplan &f) {
    std::vector<std::set<uint32_t>> partners(f.qubits.size());
    for (const auto &r : f.resonators) {
        if (r.stub()) continue;
        partners[r.a].insert(*r.b);
        partners[*r.b].insert(r.a);
    }
    FanoutReport out;
    for (const auto &p : partners) out.qubit_qf.push_back(static_cast<uint32_t>(p.size()));
    for (const Tile &t : f.tiles) {
        std::set<uint32_t> reach;
        for (uint32_t q : t.qubits) {
            for (uint32_t p : partners[q]) {
                if (f.qubits[p].tile != t.id) reach.insert(f.qubits[p].tile);
            }
        }
        out.tile_qf.push_back(static_cast<uint32_t>(reach.size()));
        if (reach.size() < 4) out.flagged.push_back(t.id);
    }
    return out;
}

FloorplanStats floorplan_stats(const Floorplan &f) {
    FloorplanStats s;
    s.qubits = f.qubits.size();
    s.tiles = f.tiles.size();
    s.resonators = f.resonators.size();
    std::set<int> classes;
    for (const auto &r : f.resonators) {
        s.stubs += r.stub();
        if (r.freq_class >= 0) classes.insert(r.freq_class);
    }
    s.freq_classes = classes.size();
    for (uint32_t qf : fanout_report(f).qubit_qf) {
        if (s.qubit_qf.size() <= qf) s.qubit_qf.resize(qf + 1, 0);
        ++s.qubit_qf[qf];
    }
    return s;
}

std::string check_floorplan(const Floorplan &f) {
    std::vector<int> degree(f.qubits.size(), 0);
    for (const auto &r : f.resonators) {
        if (r.a >= f.qubits.size() || (r.b && *r.b >= f.qubits.size())) return "resonator " + std::to_string(r.id) + " names a missing qubit";
        ++degree[r.a];
        if (r.b) ++degree[*r.b];
    }
    for (size_t q = 0; q < degree.size(); ++q) {
        if (degree[q] != 2) return "qubit " + std::to_string(q) + " has resonator degree " + std::to_string(degree[q]);
    }
    for (const Tile &t : f.tiles) {
        std::set<uint32_t> distinct(t.qubits.begin(), t.qubits.end());
        if (distinct.size() != 4) return "tile " + std::to_string(t.id) + " does not hold 4 distinct qubits";
        for (uint32_t q : t.qubits) {
            if (q >= f.qubits.size() || f.qubits[q].tile != t.id) return "tile " + std::to_string(t.id) + " lists a foreign qubit";
        }
        std::set<Corner> phases(t.rotation.begin(), t.rotation.end());
        if (phases.size() != 4) return "tile " + std::to_string(t.id) + " role rotation skips a qubit";
    }
    if (auto x = find_crossing(f)) {
        return "resonators " + std::to_string(x->first) + " and " + std::to_string(x->second) + " cross";
    }
    const bool any = std::any_of(f.resonators.begin(), f.resonators.end(), [](const Resonator &r) { return r.freq_class >= 0; });
    if (any) {
        if (f.conflict_radius < 0) return "frequency classes without a conflict radius";
        if (size_t bad = coloring_conflicts(f)) return std::to_string(bad) + " conflicting resonator pairs share a class";
    }
    return {};
}

nlohmann::json floorplan_to_json(const Floorplan &f) {
    using nlohmann::json;
    json j;
    j["format"] = "surfacelab-floorplan";
    j["version"] = 1;
    j["topology"] = f.topology;
    j["size"] = f.size;
    j["rows"] = f.rows;
    j["cols"] = f.cols;
    j["conflict_radius"] = f.conflict_radius;
    json &tiles = j["tiles"] = json::array();
    for (const Tile &t : f.tiles) {
        json rot = json::array();
        for (Corner c : t.rotation) rot.push_back(corner_name(c));
        tiles.push_back({{"id", t.id}, {"r", t.r}, {"c", t.c}, {"kind", t.kind}, {"qubits", t.qubits}, {"rotation", rot}});
    }
    json &qubits = j["qubits"] = json::array();
    for (const PhysQubit &q : f.qubits) {
        json roles = json::array();
        for (Corner c : f.tiles[q.tile].rotation) roles.push_back(c == q.corner ? "data" : "ancilla");
        qubits.push_back({{"id", q.id}, {"tile", q.tile}, {"corner", corner_name(q.corner)}, {"x", q.x}, {"y", q.y}, {"roles", roles}});
    }
    json &res = j["resonators"] = json::array();
    for (const Resonator &r : f.resonators) {
        json e{{"id", r.id}, {"gap", {r.gap_r, r.gap_c}}, {"side", r.side}};
        e["endpoints"] = r.b ? json{r.a, *r.b} : json{r.a};
        if (r.stub()) e["stub_end"] = {r.end_x, r.end_y};
        e["wraps"] = r.wraps;
        e["class"] = r.freq_class;
        if (r.freq_class >= 0) e["length_mm"] = resonator_length_mm(r.freq_class);
        res.push_back(std::move(e));
    }
    const FloorplanStats s = floorplan_stats(f);
    j["stats"] = {{"qubits", s.qubits},   {"tiles", s.tiles},
                  {"resonators", s.resonators}, {"stubs", s.stubs},
                  {"freq_classes", s.freq_classes}, {"qubit_qf_histogram", s.qubit_qf}};
    return j;
}

Floorplan floorplan_from_json(const nlohmann::json &j) {
    try {
        if (j.at("format") != "surfacelab-floorplan" || j.at("version") != 1) {
            throw std::invalid_argument("not a version 1 floorplan");
        }
        Floorplan f;
        f.topology = j.at("topology").get<std::string>();
        if (f.topology != "planar" && f.topology != "toric") throw std::invalid_argument("bad topology");
        f.size = j.at("size").get<int>();
        f.rows = j.at("rows").get<int>();
        f.cols = j.at("cols").get<int>();
        f.conflict_radius = j.at("conflict_radius").get<double>();
        for (const auto &t : j.at("tiles")) {
            Tile tile;
            tile.id = t.at("id").get<uint32_t>();
            if (tile.id != f.tiles.size()) throw std::invalid_argument("tile ids out of order");
            tile.r = t.at("r").get<int>();
            tile.c = t.at("c").get<int>();
            tile.kind = t.at("kind").get<std::string>();
            tile.qubits = t.at("qubits").get<std::array<uint32_t, 4>>();
            auto rot = t.at("rotation").get<std::vector<std::string>>();
            if (rot.size() != 4) throw std::invalid_argument("rotation needs 4 phases");
            for (size_t k = 0; k < 4; ++k) tile.rotation[k] = parse_corner(rot[k]);
            f.tiles.push_back(std::move(tile));
        }
        for (const auto &q : j.at("qubits")) {
            PhysQubit pq;
            pq.id = q.at("id").get<uint32_t>();
            if (pq.id != f.qubits.size()) throw std::invalid_argument("qubit ids out of order");
            pq.tile = q.at("tile").get<uint32_t>();
            if (pq.tile >= f.tiles.size()) throw std::invalid_argument("qubit names a missing tile");
            pq.corner = parse_corner(q.at("corner").get<std::string>());
            pq.x = q.at("x").get<double>();
            pq.y = q.at("y").get<double>();
            f.qubits.push_back(pq);
        }
        for (const auto &r : j.at("resonators")) {
            Resonator res;
            res.id = r.at("id").get<uint32_t>();
            if (res.id != f.resonators.size()) throw std::invalid_argument("resonator ids out of order");
            auto gap = r.at("gap").get<std::array<int, 2>>();
            res.gap_r = gap[0];
            res.gap_c = gap[1];
            res.side = r.at("side").get<int>();
            auto ends = r.at("endpoints").get<std::vector<uint32_t>>();
            if (ends.empty() || ends.size() > 2) throw std::invalid_argument("resonator needs 1 or 2 endpoints");
            res.a = ends[0];
            if (ends.size() == 2) {
                res.b = ends[1];
            } else {
                auto e = r.at("stub_end").get<std::array<double, 2>>();
                res.end_x = e[0];
                res.end_y = e[1];
            }
            res.wraps = r.at("wraps").get<bool>();
            res.freq_class = r.at("class").get<int>();
            f.resonators.push_back(res);
        }
        for (const auto &q : f.qubits) {
            if (f.tiles[q.tile].qubits[static_cast<int>(q.corner)] != q.id) throw std::invalid_argument("tile and qubit disagree");
        }
        if (floorplan_to_json(f) != j) throw std::invalid_argument("derived fields (roles, lengths, stats) do not match a recount");
        return f;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("floorplan: ") + e.what());
    }
}

}  // namespace surfacelab
