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


// Acceptance runner: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cli.h"
#include "surfacelab/budget.h"
#include "surfacelab/codes.h"
#include "surfacelab/decoder.h"
#include "surfacelab/defects.h"
#include "surfacelab/experiment.h"
#include "surfacelab/frame.h"
#include "surfacelab/matching.h"
#include "surfacelab/planner.h"
#include "surfacelab/threshold.h"

using namespace surfacelab;
using nlohmann::json;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Context {
    std::string source_dir;
    unsigned rerun_threads = 1;
    json report = json::object();
    std::optional<ResultTable> circuit_table, phenom_table;
    std::optional<double> circuit_p_th;
    ExperimentConfig circuit_cfg, phenom_cfg;
};

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(4) << v;
    return s.str();
}

size_t idle_location(const Circuit &c, uint32_t q) {
    const Layer &l = c.layers()[0];
    for (size_t i = 0; i < l.size(); ++i) {
        if (l[i].kind == OpKind::Idle && l[i].q0 == q) return i;
    }
    throw std::logic_error("no idle in the first layer");
}

Verdict steane_single_errors(Context &) {
    const CodeCircuit cc = steane7();
    std::set<uint64_t> seen;
    size_t corrected = 0;
    for (uint32_t q = 0; q < 7; ++q) {
        for (Pauli letter : {Pauli::X, Pauli::Y, Pauli::Z}) {
            FaultSet fs;
            fs.faults.push_back({idle_location(cc.circuit, q), letter, Pauli::I});
            const uint64_t s = cc.syndrome_from_flips(frame_run(cc.circuit, fs).flipped);
            if (s == 0 || !seen.insert(s).second) return {false, "syndrome of a single error is zero or repeated"};
            PauliString rest = pauli_multiply(cc.decoder.decode(s), PauliString::single(7, q, letter));
            if (cc.code.syndrome(rest) == 0 && cc.code.logical_action(rest) == 0) ++corrected;
        }
    }
    return {corrected == 21, std::to_string(seen.size()) + " distinct nonzero syndromes, " + std::to_string(corrected) +
                                 "/21 exactly corrected"};
}

Verdict steane_not_fault_tolerant(Context &) {
    const CodeCircuit cc = steane7();
    const auto survey = single_fault_survey(cc);
    const uint64_t uncleared = ~uint64_t{0};
    size_t bad = 0;
    const SingleFaultOutcome *example = nullptr;
    for (const auto &o : survey) {
        if (o.data_error.weight() >= 2 && o.logical_action != 0 && o.logical_action != uncleared) {
            ++bad;
            if (!example) example = &o;
        }
    }
    std::string detail = std::to_string(survey.size()) + " single faults tried, " + std::to_string(bad) +
                         " leave a weight>=2 data error that ideal correction turns into a logical error";
    if (example) detail += " (e.g. location " + std::to_string(example->location) + ", data error " + example->data_error.str() + ")";
    return {bad >= 1, detail};
}

Verdict thirteen_site_patch(Context &) {
    const SurfaceLattice lat = SurfaceLattice::planar(3);
    const int d = min_distance_bruteforce(code_from_lattice(lat));
    return {lat.num_data() == 13 && d == 3,
            std::to_string(lat.num_data()) + " data qubits, brute-force distance " + std::to_string(d)};
}

Verdict quarter_slices(Context &) {
    std::string detail;
    for (int L : {2, 3, 4, 5, 6}) {
        SyndromeCircuitOptions opt;
        opt.layout = RoundLayout::Staggered;
        const SyndromeCircuit sc = surface_syndrome_circuit(SurfaceLattice::toric(L), 2, opt);
        const size_t total = sc.circuit.num_qubits();
        size_t slices = 0;
        for (const auto &layer : sc.circuit.layers()) {
            size_t measured = 0;
            for (const auto &e : layer) {
                if (!e.is_measurement()) continue;
                if (e.q0 < sc.num_data) return {false, "toric(" + std::to_string(L) + ") measures a data qubit"};
                ++measured;
            }
            if (measured == 0) continue;
            ++slices;
            if (measured * 4 != total) {
                return {false, "toric(" + std::to_string(L) + ") slice measures " + std::to_string(measured) + " of " +
                                   std::to_string(total)};
            }
        }
        if (slices != 4) return {false, "expected 4 slices in 2 rounds"};
    }
    return {true, "toric(2..6): every measurement slice holds exactly 1/4 of the qubits, all ancillas"};
}

ExperimentConfig load_config(const Context &ctx, const std::string &name) {
    return cli::parse_run_spec(cli::read_config(ctx.source_dir + "/configs/" + name), true).experiment;
}

ResultTable run_logged(const ExperimentConfig &cfg) {
    return run_memory_experiment(cfg, [](const ResultRow &r) {
        std::cerr << "  " << r.preset << " d=" << r.d << " p=" << r.p << " p_L=" << r.p_l << " (" << r.failures << "/"
                  << r.shots << ")\n";
    });
}

Verdict threshold_in(Context &ctx, bool circuit, double lo, double hi) {
    ExperimentConfig cfg = load_config(ctx, circuit ? "circuit_level.json" : "phenomenological.json");
    (circuit ? ctx.circuit_cfg : ctx.phenom_cfg) = cfg;
    ResultTable table = run_logged(cfg);
    (circuit ? ctx.circuit_table : ctx.phenom_table) = table;
    ctx.report[circuit ? "circuit_level" : "phenomenological"]["table"] = table.to_json();
    try {
        ThresholdEstimate est = estimate_threshold(table);
        ctx.report[circuit ? "circuit_level" : "phenomenological"]["estimate"] = est.to_json();
        if (circuit) ctx.circuit_p_th = est.p_th;
        std::string detail = "p_th = " + fmt(est.p_th) + " +- " + fmt(est.spread) + " from crossings";
        for (const auto &c : est.crossings) detail += " d" + std::to_string(c.d_small) + "/d" + std::to_string(c.d_large) + "=" + fmt(c.p);
        detail += "; bracket [" + fmt(lo) + ", " + fmt(hi) + "]";
        return {est.p_th >= lo && est.p_th <= hi, detail};
    } catch (const std::exception &e) {
        return {false, e.what()};
    }
}

Verdict scaling_law(Context &ctx) {
    if (!ctx.circuit_p_th) return {false, "needs the circuit-level threshold estimate (criterion 5)"};
    const double pth = *ctx.circuit_p_th;
    ExperimentConfig cfg = ctx.circuit_cfg;
    cfg.distances = {3};
    cfg.ps = {pth / 8, pth / 4, pth / 3};
    cfg.shots = 1000000;
    ResultTable t = run_logged(cfg);
    ctx.report["scaling"] = t.to_json();
    const double slope = loglog_slope(t.rows);
    std::string detail = "d=3 at p_th/8, /4, /3:";
    for (const auto &r : t.rows) detail += " " + fmt(r.p_l);
    detail += "; slope " + fmt(slope) + " (want 2.0 +- 0.35)";
    return {std::abs(slope - 2.0) <= 0.35, detail};
}

Verdict braid_table(Context &) {
    std::ostringstream out, err;
    const char *argv[] = {"surfacelab", "braid-verify", "--json"};
    const int code = cli::run(3, argv, out, err);
    json j = json::parse(out.str());
    const json want{{"X_c", "X_c X_t"}, {"Z_c", "Z_c"}, {"X_t", "X_t"}, {"Z_t", "Z_c Z_t"}};
    std::string detail = "exit " + std::to_string(code);
    if (j["map"].is_object()) {
        for (const auto &[k, v] : j["map"].items()) detail += ", " + k + " -> " + v.get<std::string>();
    }
    return {code == 0 && j["map"] == want, detail};
}

Verdict decoder_exact(Context &) {
    std::mt19937_64 rng(2026);
    size_t agree = 0, total = 0;
    for (int d : {3, 5}) {
        const SurfaceLattice lat = SurfaceLattice::planar(d);
        const SurfaceDecoder dec(lat);
        for (CheckType type : {CheckType::Z, CheckType::X}) {
            const auto &checks = lat.checks_of_type(type);
            for (int trial = 0; trial < 500; ++trial) {
                std::set<std::pair<uint32_t, uint32_t>> picked;
                const size_t k = rng() % 11;
                while (picked.size() < k) {
                    picked.insert({checks[rng() % checks.size()], static_cast<uint32_t>(rng() % (d + 1))});
                }
                std::vector<DetectionEvent> ev;
                for (auto [c, r] : picked) ev.push_back({c, r});
                const MatchingGraph g = dec.graph(ev, type);
                ++total;
                agree += mwpm(g).weight == brute_force_mwpm(g).weight;
            }
        }
    }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) +
                                " instances (1000 per lattice, <= 10 events) match the brute-force weight"};
}

Verdict budget_formulas(Context &) {
    const double g = gadget_failure(BudgetModel::concatenated(1e4), 1, 1e-3);
    const double pth = *BudgetModel::concatenated(1e4).threshold();
    const BudgetModel poly = BudgetModel::polynomial(2.0);
    const int best = argmin_failure(poly, 1e6, 1e6, 1e-3, 100);
    const double floor = algorithm_failure(poly, 1e6, 1e6, best, 1e-3);
    const bool ok = g == 1e-2 && pth >= 1e-5 && pth <= 1e-4 && floor > 1e-2 && best < 100;
    return {ok, "gadget_failure(1e4, 1, 1e-3) = " + fmt(g) + ", concatenated p_th = " + fmt(pth) +
                    ", x^(2x) family at p = 1e-3, T = N = 1e6: best x = " + std::to_string(best) + " of <= 100, failure " +
                    fmt(floor)};
}

Verdict planner_invariants(Context &) {
    for (int d = 1; d <= 11; d += 2) {
        Floorplan f = generate_tiling(SurfaceLattice::planar(d));
        f = assign_frequencies(std::move(f), nearest_neighbor_radius(f));
        if (auto p = check_floorplan(f); !p.empty()) return {false, "d=" + std::to_string(d) + ": " + p};
        const FanoutReport rep = fanout_report(f);
        for (const Tile &t : f.tiles) {
            const bool bulk = t.r > 0 && t.c > 0 && t.r < f.rows - 1 && t.c < f.cols - 1;
            if (bulk && rep.tile_qf[t.id] != 4) return {false, "d=" + std::to_string(d) + ": bulk tile with QF != 4"};
        }
        if (coloring_conflicts(f) != 0) return {false, "d=" + std::to_string(d) + ": frequency conflicts"};
    }
    return {true, "d = 1..11: resonator degree 2, 4 qubits per tile, bulk QF 4, planar, 0 frequency conflicts"};
}

Verdict determinism(Context &ctx) {
    if (!ctx.circuit_table || !ctx.phenom_table) return {false, "needs the tables of criteria 5 and 6"};
    std::string detail;
    bool ok = true;
    for (bool circuit : {true, false}) {
        ExperimentConfig cfg = circuit ? ctx.circuit_cfg : ctx.phenom_cfg;
        const unsigned first = cfg.threads;
        cfg.threads = ctx.rerun_threads == first ? first + 1 : ctx.rerun_threads;
        const ResultTable again = run_logged(cfg);
        const bool same = again == (circuit ? *ctx.circuit_table : *ctx.phenom_table) &&
                          again.to_csv() == (circuit ? *ctx.circuit_table : *ctx.phenom_table).to_csv();
        ok &= same;
        detail += std::string(circuit ? "circuit_level" : "phenomenological") + " threads " + std::to_string(first) +
                  " vs " + std::to_string(cfg.threads) + ": " + (same ? "identical" : "DIFFERENT") + "; ";
    }
    detail.resize(detail.size() - 2);
    return {ok, detail};
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"surfacelab acceptance criteria"};
    Context ctx;
    ctx.source_dir = SURFACELAB_SOURCE_DIR;
    std::vector<int> only;
    std::string report_path;
    app.add_option("--only", only, "Run only these criteria (dependencies are not pulled in)");
    app.add_option("--rerun-threads", ctx.rerun_threads, "Thread budget for the determinism rerun")->capture_default_str();
    app.add_option("--report", report_path, "Write the measured tables here as JSON");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Verdict(Context &)>>> criteria{
        {"Steane single-error correction", steane_single_errors},
        {"Steane circuit is not fault tolerant", steane_not_fault_tolerant},
        {"13-site patch", thirteen_site_patch},
        {"quarter-measured slices", quarter_slices},
        {"circuit-level threshold", [](Context &c) { return threshold_in(c, true, 0.004, 0.012); }},
        {"phenomenological threshold", [](Context &c) { return threshold_in(c, false, 0.005, 0.035); }},
        {"scaling law", scaling_law},
        {"braided CNOT table", braid_table},
        {"decoder exactness", decoder_exact},
        {"budget formulas", budget_formulas},
        {"planner invariants", planner_invariants},
        {"determinism across thread budgets", determinism},
    };
    bool all = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second(ctx);
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all &= v.pass;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first << "): " << v.detail
                  << " [" << fmt(secs) << " s]" << std::endl;
        ctx.report["criteria"][std::to_string(id)] = {{"pass", v.pass}, {"detail", v.detail}, {"seconds", secs}};
    }
    if (!report_path.empty()) std::ofstream(report_path) << ctx.report.dump(2) << "\n";
    return all ? 0 : 1;
}
