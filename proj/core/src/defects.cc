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


#include "surfacelab/defects.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "surfacelab/symplectic.h"

namespace surfacelab {

namespace {

struct Generator {
    uint64_t key = 0;
    PauliString op;
};

HoleType hole_type_of(const Check &c) { return c.type == CheckType::Z ? HoleType::Primal : HoleType::Dual; }

Pauli measured_letter(HoleType t) { return t == HoleType::Primal ? Pauli::X : Pauli::Z; }

std::vector<uint32_t> sorted_unique(std::vector<uint32_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<uint32_t> set_minus(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
    std::vector<uint32_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Data qubits shared by two checks of the set.
std::vector<uint32_t> interior_qubits(const SurfaceLattice &lat, const std::vector<uint32_t> &checks) {
    std::map<uint32_t, int> seen;
    for (uint32_t c : checks) {
        for (uint32_t q : lat.check(c).support) ++seen[q];
    }
    std::vector<uint32_t> out;
    for (auto [q, n] : seen) {
        if (n >= 2) out.push_back(q);
    }
    return out;
}

bool connected(const SurfaceLattice &lat, const std::vector<uint32_t> &checks) {
    if (checks.empty()) return false;
    std::vector<bool> reached(checks.size(), false);
    std::vector<size_t> stack{0};
    reached[0] = true;
    size_t count = 1;
    while (!stack.empty()) {
        size_t i = stack.back();
        stack.pop_back();
        for (size_t j = 0; j < checks.size(); ++j) {
            if (!reached[j] && lat.check_distance(checks[i], checks[j]) == 1) {
                reached[j] = true;
                ++count;
                stack.push_back(j);
            }
        }
    }
    return count == checks.size();
}

// Solves A x = b over GF(2) for a k x m system; nothing when inconsistent.
std::optional<std::vector<uint8_t>> solve_gf2(std::vector<std::vector<uint8_t>> a, std::vector<uint8_t> b) {
    const size_t k = a.size();
    const size_t m = k == 0 ? 0 : a[0].size();
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < m && row < k; ++col) {
        size_t piv = row;
        while (piv < k && !a[piv][col]) ++piv;
        if (piv == k) continue;
        std::swap(a[piv], a[row]);
        std::swap(b[piv], b[row]);
        for (size_t r = 0; r < k; ++r) {
            if (r != row && a[r][col]) {
                for (size_t c = 0; c < m; ++c) a[r][c] ^= a[row][c];
                b[r] ^= b[row];
            }
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (size_t r = row; r < k; ++r) {
        if (b[r]) return std::nullopt;
    }
    std::vector<uint8_t> x(m, 0);
    for (size_t r = 0; r < row; ++r) x[pivot_col[r]] = b[r];
    return x;
}

// Multiplies by generators while that strictly lowers the weight.
void reduce(PauliString &op, const std::vector<Generator> &gens) {
    bool improved = true;
    while (improved) {
        improved = false;
        for (const auto &g : gens) {
            PauliString t = pauli_multiply(op, g.op);
            if (t.weight() < op.weight()) {
                op = std::move(t);
                improved = true;
            }
        }
    }
    op.set_phase(0);
}

// Carries `op` from the group generated by `before` to the one generated by `after`.
void carry(PauliString &op, const std::vector<Generator> &before, const std::vector<Generator> &after, size_t step) {
    std::set<uint64_t> old_keys;
    for (const auto &g : before) old_keys.insert(g.key);
    std::vector<const PauliString *> fresh;
    for (const auto &g : after) {
        if (!old_keys.contains(g.key)) fresh.push_back(&g.op);
    }
    std::vector<uint8_t> b;
    bool needs_fix = false;
    for (const auto *m : fresh) {
        b.push_back(!commutes(op, *m));
        needs_fix |= b.back() != 0;
    }
    if (needs_fix) {
        std::vector<const PauliString *> cand;
        for (const auto &g : before) {
            for (const auto *m : fresh) {
                if (!commutes(g.op, *m)) {
                    cand.push_back(&g.op);
                    break;
                }
            }
        }
        std::vector<std::vector<uint8_t>> a(fresh.size(), std::vector<uint8_t>(cand.size()));
        for (size_t i = 0; i < fresh.size(); ++i) {
            for (size_t j = 0; j < cand.size(); ++j) a[i][j] = !commutes(*cand[j], *fresh[i]);
        }
        auto x = solve_gf2(std::move(a), std::move(b));
        if (!x) {
            throw std::logic_error("step " + std::to_string(step) + ": logical operator cannot be carried through");
        }
        for (size_t j = 0; j < cand.size(); ++j) {
            if ((*x)[j]) op *= *cand[j];
        }
    }
    reduce(op, after);
    for (const auto &g : after) {
        if (!commutes(op, g.op)) {
            throw std::logic_error("step " + std::to_string(step) + ": logical operator anticommutes with a stabilizer");
        }
    }
}

std::vector<Generator> generators_of(const DefectLayout &layout) {
    const SurfaceLattice &lat = layout.lattice();
    std::vector<Generator> out;
    for (uint32_t i = 0; i < lat.num_checks(); ++i) {
        if (layout.active(i)) out.push_back({i, lat.check_pauli(i)});
    }
    for (const auto &h : layout.holes()) {
        Pauli letter = measured_letter(h.type);
        for (uint32_t q : interior_qubits(lat, h.checks)) {
            out.push_back({lat.num_checks() + 2 * uint64_t{q} + (letter == Pauli::Z),
                           PauliString::single(lat.num_data(), q, letter)});
        }
    }
    std::sort(out.begin(), out.end(), [](const Generator &a, const Generator &b) { return a.key < b.key; });
    return out;
}

const char *phase_name(DeformationStep::Phase p) { return p == DeformationStep::Expand ? "expand" : "contract"; }

}  // namespace

const char *hole_type_name(HoleType t) { return t == HoleType::Primal ? "primal" : "dual"; }

DeformationScript DeformationScript::without_step(size_t k) const {
    DeformationScript out = *this;
    if (k < out.steps.size()) out.steps.erase(out.steps.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

DeformationScript DeformationScript::then(const DeformationScript &next) const {
    DeformationScript out = *this;
    out.steps.insert(out.steps.end(), next.steps.begin(), next.steps.end());
    return out;
}

nlohmann::json DeformationScript::to_json() const {
    nlohmann::json j;
    j["control"] = control;
    j["target"] = target;
    auto &arr = j["steps"] = nlohmann::json::array();
    for (const auto &s : steps) {
        arr.push_back({{"phase", phase_name(s.phase)},
                       {"hole", s.hole},
                       {"checks", s.checks},
                       {"stopped", s.stopped},
                       {"resumed", s.resumed},
                       {"measured_out", s.measured_out},
                       {"reprepared", s.reprepared}});
    }
    return j;
}

DeformationScript DeformationScript::from_json(const nlohmann::json &j) {
    DeformationScript out;
    out.control = j.at("control").get<uint32_t>();
    out.target = j.at("target").get<uint32_t>();
    for (const auto &s : j.at("steps")) {
        DeformationStep step;
        std::string phase = s.at("phase").get<std::string>();
        if (phase == "expand") {
            step.phase = DeformationStep::Expand;
        } else if (phase == "contract") {
            step.phase = DeformationStep::Contract;
        } else {
            throw std::invalid_argument("unknown step phase '" + phase + "'");
        }
        step.hole = s.at("hole").get<uint32_t>();
        step.checks = s.at("checks").get<std::vector<uint32_t>>();
        step.stopped = s.at("stopped").get<std::vector<uint32_t>>();
        step.resumed = s.at("resumed").get<std::vector<uint32_t>>();
        step.measured_out = s.at("measured_out").get<std::vector<uint32_t>>();
        step.reprepared = s.at("reprepared").get<std::vector<uint32_t>>();
        out.steps.push_back(std::move(step));
    }
    return out;
}

DefectLayout::DefectLayout(SurfaceLattice lattice) : lat_(std::move(lattice)), owner_(lat_.num_checks(), -1) {}

std::vector<bool> DefectLayout::active_mask() const {
    std::vector<bool> out(owner_.size());
    for (size_t i = 0; i < owner_.size(); ++i) out[i] = owner_[i] < 0;
    return out;
}

std::vector<uint32_t> DefectLayout::measured_qubits() const {
    std::vector<uint32_t> out;
    for (const auto &h : holes_) {
        auto q = interior_qubits(lat_, h.checks);
        out.insert(out.end(), q.begin(), q.end());
    }
    return sorted_unique(std::move(out));
}

std::vector<PauliString> DefectLayout::stabilizer_generators() const {
    std::vector<PauliString> out;
    for (auto &g : generators_of(*this)) out.push_back(std::move(g.op));
    return out;
}

void DefectLayout::check_placement(const std::vector<uint32_t> &checks, int32_t ignore_hole) const {
    for (uint32_t c : checks) {
        if (c >= lat_.num_checks()) throw std::invalid_argument("check index out of range");
        const Check &ch = lat_.check(c);
        if (ch.support.size() != 4) throw std::invalid_argument("hole check is truncated by the lattice edge");
        if (lat_.topology() == Topology::Planar) {
            for (uint32_t q : ch.support) {
                const GridPos &p = lat_.data_pos(q);
                if (p.r == 0 || p.c == 0 || p.r == lat_.rows() - 1 || p.c == lat_.cols() - 1) {
                    throw std::invalid_argument("hole would touch the lattice edge");
                }
            }
        }
        for (size_t h = 0; h < holes_.size(); ++h) {
            if (static_cast<int32_t>(h) == ignore_hole) continue;
            for (uint32_t o : holes_[h].checks) {
                const auto &s = lat_.check(o).support;
                for (uint32_t q : ch.support) {
                    if (std::binary_search(s.begin(), s.end(), q)) {
                        throw std::invalid_argument("hole would touch hole " + std::to_string(h));
                    }
                }
            }
        }
    }
}

uint32_t DefectLayout::create_hole_pair(uint32_t check_a, uint32_t check_b) {
    if (check_a == check_b) throw std::invalid_argument("hole pair needs two distinct checks");
    if (check_a >= lat_.num_checks() || check_b >= lat_.num_checks()) throw std::invalid_argument("check index out of range");
    if (lat_.check(check_a).type != lat_.check(check_b).type) throw std::invalid_argument("hole pair checks differ in type");
    if (!active(check_a) || !active(check_b)) throw std::invalid_argument("check already belongs to a hole");
    check_placement({check_a}, -1);
    check_placement({check_b}, -1);
    if (lat_.check_distance(check_a, check_b) <= 1) throw std::invalid_argument("the two holes would touch");

    const HoleType type = hole_type_of(lat_.check(check_a));
    HolePair pair;
    pair.type = type;
    pair.a = static_cast<uint32_t>(holes_.size());
    pair.b = pair.a + 1;
    Pauli chain_letter = type == HoleType::Primal ? Pauli::X : Pauli::Z;
    auto chain_qubits = lat_.chain_between(check_a, check_b);
    std::vector<size_t> chain(chain_qubits.begin(), chain_qubits.end());
    PauliString chain_op = PauliString::on(lat_.num_data(), chain, chain_letter);
    PauliString loop_op = lat_.check_pauli(check_a);
    pair.x = type == HoleType::Primal ? chain_op : loop_op;
    pair.z = type == HoleType::Primal ? loop_op : chain_op;

    holes_.push_back({type, {check_a}});
    holes_.push_back({type, {check_b}});
    owner_[check_a] = static_cast<int32_t>(pair.a);
    owner_[check_b] = static_cast<int32_t>(pair.b);
    pairs_.push_back(std::move(pair));
    if (auto p = problem(); !p.empty()) {
        pairs_.pop_back();
        holes_.resize(holes_.size() - 2);
        owner_[check_a] = owner_[check_b] = -1;
        throw std::invalid_argument("cannot register hole pair: " + p);
    }
    return static_cast<uint32_t>(pairs_.size() - 1);
}

void DefectLayout::annihilate_pair(uint32_t pair) {
    if (pair >= pairs_.size() || !pairs_[pair].alive) throw std::invalid_argument("no such live pair");
    auto before = generators_of(*this);
    HolePair &hp = pairs_[pair];
    for (uint32_t h : {hp.a, hp.b}) {
        for (uint32_t c : holes_[h].checks) owner_[c] = -1;
        holes_[h].checks.clear();
    }
    hp.alive = false;
    auto after = generators_of(*this);
    for (auto &p : pairs_) {
        if (!p.alive) continue;
        carry(p.x, before, after, 0);
        carry(p.z, before, after, 0);
    }
}

DeformationScript DefectLayout::deform_hole(uint32_t hole, std::vector<uint32_t> target) const {
    if (hole >= holes_.size() || holes_[hole].checks.empty()) throw std::invalid_argument("no such hole");
    const Hole &h = holes_[hole];
    target = sorted_unique(std::move(target));
    DeformationScript script;
    for (uint32_t p = 0; p < pairs_.size(); ++p) {
        if (pairs_[p].a == hole || pairs_[p].b == hole) script.control = script.target = p;
    }
    if (target == h.checks) return script;
    if (target.empty()) throw std::invalid_argument("target region is empty");
    for (uint32_t c : target) {
        if (c >= lat_.num_checks()) throw std::invalid_argument("check index out of range");
        if (hole_type_of(lat_.check(c)) != h.type) throw std::invalid_argument("target mixes check types");
    }
    if (!connected(lat_, target)) throw std::invalid_argument("target region is not connected");
    std::vector<uint32_t> both = h.checks;
    both.insert(both.end(), target.begin(), target.end());
    both = sorted_unique(std::move(both));
    if (!connected(lat_, both)) throw std::invalid_argument("target region does not touch the hole");
    check_placement(both, static_cast<int32_t>(hole));

    const auto inside_now = interior_qubits(lat_, h.checks);
    const auto inside_both = interior_qubits(lat_, both);
    if (both != h.checks) {
        DeformationStep s;
        s.phase = DeformationStep::Expand;
        s.hole = hole;
        s.checks = both;
        s.stopped = set_minus(both, h.checks);
        s.measured_out = set_minus(inside_both, inside_now);
        script.steps.push_back(std::move(s));
    }
    if (target != both) {
        DeformationStep s;
        s.phase = DeformationStep::Contract;
        s.hole = hole;
        s.checks = target;
        s.resumed = set_minus(both, target);
        s.reprepared = set_minus(inside_both, interior_qubits(lat_, target));
        script.steps.push_back(std::move(s));
    }
    return script;
}

void DefectLayout::apply_step(const DeformationStep &step, std::vector<PauliString *> &tracked) {
    static_cast<void>(tracked);
    if (step.hole >= holes_.size() || holes_[step.hole].checks.empty()) throw std::logic_error("step names a missing hole");
    Hole &h = holes_[step.hole];
    auto next = sorted_unique(step.checks);
    if (next.empty()) throw std::logic_error("step empties a hole");
    const bool grows = std::includes(next.begin(), next.end(), h.checks.begin(), h.checks.end());
    const bool shrinks = std::includes(h.checks.begin(), h.checks.end(), next.begin(), next.end());
    if ((step.phase == DeformationStep::Expand && !grows) || (step.phase == DeformationStep::Contract && !shrinks)) {
        throw std::logic_error(std::string(phase_name(step.phase)) + " step does not match the hole geometry");
    }
    for (uint32_t c : next) {
        if (hole_type_of(lat_.check(c)) != h.type) throw std::logic_error("step mixes check types");
        if (owner_[c] >= 0 && owner_[c] != static_cast<int32_t>(step.hole)) throw std::logic_error("step overlaps another hole");
    }
    for (uint32_t c : h.checks) owner_[c] = -1;
    h.checks = next;
    for (uint32_t c : next) owner_[c] = static_cast<int32_t>(step.hole);
}

void DefectLayout::apply(const DeformationScript &script) {
    std::vector<PauliString *> tracked;
    for (auto &p : pairs_) {
        if (!p.alive) continue;
        tracked.push_back(&p.x);
        tracked.push_back(&p.z);
    }
    for (size_t k = 0; k < script.steps.size(); ++k) {
        auto before = generators_of(*this);
        apply_step(script.steps[k], tracked);
        auto after = generators_of(*this);
        for (PauliString *op : tracked) carry(*op, before, after, k);
        if (auto p = problem(); !p.empty()) throw std::logic_error("step " + std::to_string(k) + ": " + p);
    }
}

std::string DefectLayout::problem() const {
    auto gens = generators_of(*this);
    for (size_t i = 0; i < pairs_.size(); ++i) {
        const HolePair &p = pairs_[i];
        if (!p.alive) continue;
        for (const auto &g : gens) {
            if (!commutes(p.x, g.op) || !commutes(p.z, g.op)) {
                return "logical of pair " + std::to_string(i) + " anticommutes with a stabilizer";
            }
        }
        if (commutes(p.x, p.z)) return "X_L and Z_L of pair " + std::to_string(i) + " commute";
        for (size_t j = i + 1; j < pairs_.size(); ++j) {
            const HolePair &o = pairs_[j];
            if (!o.alive) continue;
            if (!commutes(p.x, o.z) || !commutes(p.z, o.x) || !commutes(p.x, o.x) || !commutes(p.z, o.z)) {
                return "logicals of pairs " + std::to_string(i) + " and " + std::to_string(j) + " do not commute";
            }
        }
    }
    return {};
}

size_t DefectLayout::cnots_per_round() const {
    SyndromeCircuitOptions opt;
    opt.active = active_mask();
    return surface_syndrome_circuit(lat_, 1, opt).circuit.count(OpKind::CNOT);
}

DeformationScript braid_cnot(const DefectLayout &layout, uint32_t control, uint32_t target) {
    const auto &pairs = layout.pairs();
    if (control >= pairs.size() || target >= pairs.size() || !pairs[control].alive || !pairs[target].alive) {
        throw std::invalid_argument("no such live pair");
    }
    if (pairs[control].type == pairs[target].type) throw std::invalid_argument("braided pairs must be of dual types");
    if (pairs[control].type != HoleType::Primal) throw std::invalid_argument("the control pair must be primal");
    const SurfaceLattice &lat = layout.lattice();
    const uint32_t moving = pairs[control].a;
    const Hole &mh = layout.holes()[moving];
    if (mh.checks.size() != 1) throw std::invalid_argument("the moving hole must be a single plaquette");
    const GridPos start = lat.check(mh.checks[0]).pos;

    const Hole &th = layout.holes()[pairs[target].a];
    int tr0 = lat.rows(), tr1 = -1, tc0 = lat.cols(), tc1 = -1;
    for (uint32_t c : th.checks) {
        const GridPos &p = lat.check(c).pos;
        tr0 = std::min(tr0, p.r), tr1 = std::max(tr1, p.r);
        tc0 = std::min(tc0, p.c), tc1 = std::max(tc1, p.c);
    }
    // Plaquette rows and columns three grid steps out leave one clear site.
    const int r0 = std::min(start.r, tr0 - 3), r1 = std::max(start.r, tr1 + 3);
    const int c0 = std::min(start.c, tc0 - 3), c1 = std::max(start.c, tc1 + 3);
    if (start.r > r0 && start.r < r1 && start.c > c0 && start.c < c1) {
        throw std::invalid_argument("moving hole is too close to the target hole");
    }
    for (uint32_t h = 0; h < layout.holes().size(); ++h) {
        if (h == moving || h == pairs[target].a) continue;
        for (uint32_t c : layout.holes()[h].checks) {
            const GridPos &p = lat.check(c).pos;
            if (p.r >= r0 - 1 && p.r <= r1 + 1 && p.c >= c0 - 1 && p.c <= c1 + 1) {
                throw std::invalid_argument("braid path would enclose hole " + std::to_string(h));
            }
        }
    }

    std::vector<GridPos> ring;
    for (int c = c0; c <= c1; c += 2) ring.push_back({r0, c});
    for (int r = r0 + 2; r <= r1; r += 2) ring.push_back({r, c1});
    for (int c = c1 - 2; c >= c0; c -= 2) ring.push_back({r1, c});
    for (int r = r1 - 2; r > r0; r -= 2) ring.push_back({r, c0});
    auto it = std::find(ring.begin(), ring.end(), start);
    if (it == ring.end()) throw std::logic_error("moving hole is not on the braid path");
    std::rotate(ring.begin(), it, ring.end());
    ring.push_back(start);

    DefectLayout plan = layout;
    DeformationScript script;
    for (size_t i = 1; i < ring.size(); ++i) {
        int32_t next = lat.check_at(ring[i].r, ring[i].c);
        if (next < 0) throw std::invalid_argument("braid path leaves the lattice");
        auto part = plan.deform_hole(moving, {static_cast<uint32_t>(next)});
        for (const auto &s : part.steps) {
            std::vector<PauliString *> none;
            plan.apply_step(s, none);
            script.steps.push_back(s);
        }
    }
    script.control = control;
    script.target = target;
    return script;
}

PauliMap verify_pauli_map(const DeformationScript &script, const DefectLayout &layout) {
    const auto &pairs = layout.pairs();
    if (script.control == script.target || script.control >= pairs.size() || script.target >= pairs.size()) {
        throw std::invalid_argument("script needs two distinct pairs");
    }
    const HolePair &c = pairs[script.control];
    const HolePair &t = pairs[script.target];
    const std::array<PauliString, 4> initial{c.x, c.z, t.x, t.z};
    DefectLayout run = layout;
    run.apply(script);
    for (size_t h = 0; h < layout.holes().size(); ++h) {
        if (run.holes()[h].checks != layout.holes()[h].checks) {
            throw std::logic_error("script does not restore the hole geometry");
        }
    }
    const HolePair &rc = run.pairs()[script.control];
    const HolePair &rt = run.pairs()[script.target];
    const std::array<const PauliString *, 4> final_ops{&rc.x, &rc.z, &rt.x, &rt.z};
    // Label k is detected by anticommutation with its conjugate partner.
    constexpr std::array<size_t, 4> partner{1, 0, 3, 2};
    auto gens = run.stabilizer_generators();
    PauliMap out{};
    for (size_t i = 0; i < 4; ++i) {
        uint8_t mask = 0;
        PauliString rest = *final_ops[i];
        for (size_t k = 0; k < 4; ++k) {
            if (!commutes(rest, initial[partner[k]])) {
                mask |= static_cast<uint8_t>(1u << k);
            }
        }
        for (size_t k = 0; k < 4; ++k) {
            if (mask & (1u << k)) rest *= initial[k];
        }
        if (!in_span(gens, rest)) {
            throw std::logic_error("image of " + label_string(static_cast<uint8_t>(1u << i)) +
                                   " is not a product of logical operators and stabilizers");
        }
        out[i] = mask;
    }
    return out;
}

PauliMap compose(const PauliMap &first, const PauliMap &second) {
    PauliMap out{};
    for (size_t i = 0; i < 4; ++i) {
        for (size_t k = 0; k < 4; ++k) {
            if (first[i] & (1u << k)) out[i] ^= second[k];
        }
    }
    return out;
}

std::string label_string(uint8_t mask) {
    static const char *names[4] = {"X_c", "Z_c", "X_t", "Z_t"};
    std::string out;
    for (size_t k = 0; k < 4; ++k) {
        if (!(mask & (1u << k))) continue;
        if (!out.empty()) out += ' ';
        out += names[k];
    }
    return out.empty() ? "I" : out;
}

DefectLayout default_braid_layout() {
    DefectLayout layout(SurfaceLattice::planar(13));
    const SurfaceLattice &lat = layout.lattice();
    auto at = [&](int r, int c) { return static_cast<uint32_t>(lat.check_at(r, c)); };
    layout.create_hole_pair(at(7, 8), at(7, 2));
    layout.create_hole_pair(at(12, 13), at(18, 13));
    return layout;
}

Circuit script_circuit(const DefectLayout &initial, const DeformationScript &script) {
    const SurfaceLattice &lat = initial.lattice();
    const size_t nd = lat.num_data();
    Circuit out(nd + lat.num_checks());
    std::vector<QubitRole> roles(nd + lat.num_checks(), QubitRole::Ancilla);
    std::fill(roles.begin(), roles.begin() + static_cast<std::ptrdiff_t>(nd), QubitRole::Data);
    out.set_roles(std::move(roles));
    DefectLayout run = initial;
    for (const auto &step : script.steps) {
        const HoleType type = run.holes().at(step.hole).type;
        Layer deltas;
        for (uint32_t q : step.measured_out) {
            uint32_t tag = out.next_tag();
            deltas.push_back(type == HoleType::Primal ? Element::measure_x(q, tag) : Element::measure_z(q, tag));
        }
        for (uint32_t q : step.reprepared) deltas.push_back(type == HoleType::Primal ? Element::prep_x(q) : Element::prep_z(q));
        out.append_layer(std::move(deltas));
        DeformationScript one;
        one.steps.push_back(step);
        run.apply(one);
        SyndromeCircuitOptions opt;
        opt.active = run.active_mask();
        auto round = surface_syndrome_circuit(lat, 1, opt);
        uint32_t offset = out.next_tag();
        out.mark_round_start();
        for (Layer layer : round.circuit.layers()) {
            for (auto &e : layer) {
                if (e.is_measurement()) e.tag += offset;
            }
            out.append_layer(std::move(layer));
        }
        out.set_next_tag(offset + static_cast<uint32_t>(round.circuit.num_measurements()));
    }
    return out;
}

}  // namespace surfacelab
