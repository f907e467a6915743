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


#include "cli.h"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "surfacelab/budget.h"
#include "surfacelab/defects.h"
#include "surfacelab/planner.h"
#include "surfacelab/threshold.h"

#ifndef SURFACELAB_VERSION
#define SURFACELAB_VERSION "unknown"
#endif

namespace surfacelab::cli {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string &msg) { throw CliError(kConfigError, "config error: " + msg); }

void require_keys(const json &j, const std::set<std::string> &allowed, const std::string &where) {
    if (!j.is_object()) config_error(where + " must be an object");
    for (const auto &[key, value] : j.items()) {
        if (!allowed.contains(key)) config_error("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
T get_field(const json &j, const std::string &key, const T &fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        config_error("key '" + key + "' has the wrong type");
    }
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw CliError(kIoError, "cannot open '" + path + "' for writing");
    f << text;
    f.close();
    if (!f) throw CliError(kIoError, "write to '" + path + "' failed");
}

void emit(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_file(path, text);
    }
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

json provenance_json(const std::vector<std::string> &lines) {
    json j = json::object();
    for (const auto &line : lines) {
        auto colon = line.find(": ");
        j[line.substr(0, colon)] = line.substr(colon + 2);
    }
    return j;
}

ResultTable produce_table(const RunSpec &spec, std::ostream &err, bool verbose) {
    if (!spec.input.empty()) {
        std::ifstream f(spec.input);
        if (!f) throw CliError(kIoError, "cannot read '" + spec.input + "'");
        std::stringstream text;
        text << f.rdbuf();
        try {
            return ResultTable::from_csv(text.str());
        } catch (const std::exception &e) {
            config_error(std::string("input table: ") + e.what());
        }
    }
    if (spec.replay) {
        const auto &e = spec.experiment;
        return synthetic_table(e.distances, e.ps, spec.replay_p_star, spec.replay_amplitude, e.shots);
    }
    return run_memory_experiment(spec.experiment, [&](const ResultRow &row) {
        if (verbose) {
            err << row.preset << " d=" << row.d << " p=" << row.p << " failures=" << row.failures << "/" << row.shots
                << "\n";
        }
    });
}

int cmd_simulate(const std::string &config_path, const std::string &output_flag, bool verbose, std::ostream &out,
                 std::ostream &err) {
    json config = read_config(config_path);
    RunSpec spec = parse_run_spec(config, false);
    ResultTable table = produce_table(spec, err, verbose);
    auto prov = provenance("simulate", config, spec.experiment.seed);
    std::string text;
    if (spec.format == "json") {
        json j{{"provenance", provenance_json(prov)}, {"results", table.to_json()}};
        text = j.dump(2) + "\n";
    } else {
        text = table.to_csv(prov);
    }
    emit(output_flag.empty() ? spec.output : output_flag, text, out);
    return kOk;
}

int cmd_threshold(const std::string &config_path, const std::string &output_flag, bool verbose, std::ostream &out,
                  std::ostream &err) {
    json config = read_config(config_path);
    RunSpec spec = parse_run_spec(config, true);
    ResultTable table = produce_table(spec, err, verbose);
    json report{{"provenance", provenance_json(provenance("threshold", config, spec.experiment.seed))},
                {"results", table.to_json()}};
    int code = kOk;
    try {
        ThresholdEstimate est = estimate_threshold(table);
        report["estimate"] = est.to_json();
        err << "threshold estimate p_th = " << est.p_th << " (spread " << est.spread << ")\n";
    } catch (const BracketNotFound &e) {
        report["estimate"] = nullptr;
        report["error"] = e.what();
        err << e.what() << "\n";
        code = kBracketNotFound;
    } catch (const std::invalid_argument &e) {
        config_error(e.what());
    }
    emit(output_flag.empty() ? spec.output : output_flag, report.dump(2) + "\n", out);
    return code;
}

int cmd_braid_verify(bool as_json, int sabotage, const std::string &script_path, std::ostream &out, std::ostream &err) {
    const DefectLayout layout = default_braid_layout();
    DeformationScript script = braid_cnot(layout, 0, 1);
    if (sabotage >= 0) {
        if (static_cast<size_t>(sabotage) >= script.steps.size()) config_error("sabotage step out of range");
        script = script.without_step(static_cast<size_t>(sabotage));
    }
    if (!script_path.empty()) write_file(script_path, script.to_json().dump(2) + "\n");
    static const char *names[4] = {"X_c", "Z_c", "X_t", "Z_t"};
    json j{{"layout", layout.lattice().name()}, {"steps", script.steps.size()}, {"sabotaged", sabotage >= 0}};
    bool ok = true;
    std::ostringstream text;
    text << "braided CNOT on " << layout.lattice().name() << ": control pair 0 (primal), target pair 1 (dual), "
         << script.steps.size() << " deformation steps\n";
    try {
        PauliMap m = verify_pauli_map(script, layout);
        json rows = json::object();
        for (size_t i = 0; i < 4; ++i) {
            rows[names[i]] = label_string(m[i]);
            text << names[i] << " -> " << label_string(m[i]);
            if (m[i] != kCnotMap[i]) {
                ok = false;
                text << "   MISMATCH, expected " << label_string(kCnotMap[i]);
            }
            text << "\n";
        }
        j["map"] = rows;
    } catch (const std::exception &e) {
        ok = false;
        j["map"] = nullptr;
        j["error"] = e.what();
        text << "verification failed: " << e.what() << "\n";
    }
    text << (ok ? "PASS: map equals CNOT\n" : "FAIL: map is not CNOT\n");
    j["ok"] = ok;
    if (as_json) {
        out << j.dump(2) << "\n";
        if (!ok) err << "FAIL: map is not CNOT\n";
    } else {
        out << text.str();
    }
    return ok ? kOk : kVerifyFailed;
}

int cmd_plan(int distance, bool toric, double radius, const std::string &output, std::ostream &out, std::ostream &err) {
    Floorplan f;
    try {
        f = generate_tiling(toric ? SurfaceLattice::toric(distance) : SurfaceLattice::planar(distance));
    } catch (const std::invalid_argument &e) {
        config_error(e.what());
    }
    if (radius < 0) radius = nearest_neighbor_radius(f);
    f = assign_frequencies(std::move(f), radius);
    const std::string problem = check_floorplan(f);
    FanoutReport rep = fanout_report(f);
    FloorplanStats s = floorplan_stats(f);
    err << "floorplan: " << s.tiles << " tiles, " << s.qubits << " qubits, " << s.resonators << " resonators ("
        << s.stubs << " stubs), " << s.freq_classes << " frequency classes at radius " << radius << ", "
        << rep.flagged.size() << " boundary tiles with QF < 4\n";
    emit(output, floorplan_to_json(f).dump(2) + "\n", out);
    if (!problem.empty()) {
        err << "floorplan check failed: " << problem << "\n";
        return kVerifyFailed;
    }
    return kOk;
}

struct BudgetArgs {
    std::string family = "concatenated";
    double c = 1e4;
    std::vector<double> table;
    double p = 1e-3;
    double T = 1e6;
    double N = 1e6;
    double eps = -1;
    int x_max = 10;
    bool json = false;
};

int cmd_budget(const BudgetArgs &a, std::ostream &out) {
    BudgetModel m;
    try {
        BudgetFamily fam = parse_family(a.family);
        m = fam == BudgetFamily::Concatenated ? BudgetModel::concatenated(a.c)
            : fam == BudgetFamily::Polynomial ? BudgetModel::polynomial(a.c)
                                              : BudgetModel::from_table(a.table);
        m.validate();
    } catch (const std::invalid_argument &e) {
        config_error(e.what());
    }
    if (!(a.p >= 0 && a.p <= 1) || a.T <= 0 || a.N <= 0 || a.x_max < 0) config_error("need 0 <= p <= 1, T, N > 0, x_max >= 0");
    int x_max = a.x_max;
    if (m.family == BudgetFamily::Table) x_max = std::min<int>(x_max, static_cast<int>(m.table.size()) - 1);
    json j{{"family", family_name(m.family)}, {"c", m.c}, {"p", a.p}, {"T", a.T}, {"N", a.N}};
    json rows = json::array();
    std::ostringstream text;
    text << "family " << family_name(m.family) << ", c = " << m.c << ", p = " << a.p << ", T = " << a.T << ", N = " << a.N
         << "\n";
    text << "x,log10_C,gadget_failure,algorithm_failure\n";
    for (int x = 0; x <= x_max; ++x) {
        double g = gadget_failure(m, x, a.p), f = algorithm_failure(m, a.T, a.N, x, a.p);
        double lc = m.log_c(x) / std::log(10.0);
        rows.push_back({{"x", x}, {"log10_C", lc}, {"gadget_failure", g}, {"algorithm_failure", f}});
        text << x << "," << lc << "," << g << "," << f << "\n";
    }
    j["rows"] = rows;
    if (auto th = m.threshold()) {
        j["p_th"] = *th;
        const bool below = a.p < *th;
        j["below_threshold"] = below;
        text << "p_th = 1/c = " << *th << "; p " << (below ? "<" : ">=") << " p_th: "
             << (below ? "failure falls with x" : "unreachable, failure does not fall with x") << "\n";
    }
    const int best = argmin_failure(m, a.T, a.N, a.p, kMaxBudgetX);
    j["best_x"] = best;
    j["best_failure"] = algorithm_failure(m, a.T, a.N, best, a.p);
    text << "minimum over x <= " << kMaxBudgetX << ": x = " << best << ", failure " << algorithm_failure(m, a.T, a.N, best, a.p)
         << "\n";
    if (a.eps > 0) {
        auto need = required_distance(m, a.T, a.N, a.p, a.eps);
        j["eps"] = a.eps;
        j["required_x"] = need ? json(*need) : json(nullptr);
        text << "required x for failure <= " << a.eps << ": " << (need ? std::to_string(*need) : "unreachable") << "\n";
    }
    out << (a.json ? j.dump(2) + "\n" : text.str());
    return kOk;
}

}  // namespace

std::pair<size_t, size_t> line_column(const std::string &text, size_t offset) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json read_config(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw CliError(kIoError, "cannot read config '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw CliError(kConfigError, path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                         ": malformed JSON (" + e.what() + ")");
    }
}

std::string config_hash(const json &config) {
    const std::string text = config.dump();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    std::ostringstream hex;
    for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return hex.str();
}

RunSpec parse_run_spec(const json &config, bool threshold_keys) {
    std::set<std::string> allowed{"topology", "distances", "preset", "ps",     "rounds", "shots",
                                  "seed",     "threads",   "schedule", "layout", "output", "format"};
    if (threshold_keys) {
        allowed.insert("replay");
        allowed.insert("input");
    }
    require_keys(config, allowed, "config");
    RunSpec spec;
    ExperimentConfig &e = spec.experiment;
    const std::string topo = get_field<std::string>(config, "topology", "planar");
    if (topo == "planar") {
        e.topology = Topology::Planar;
    } else if (topo == "toric") {
        e.topology = Topology::Toric;
    } else {
        config_error("topology must be 'planar' or 'toric'");
    }
    e.distances = get_field(config, "distances", e.distances);
    try {
        e.preset = parse_preset(get_field<std::string>(config, "preset", preset_name(e.preset)));
        e.schedule = CnotSchedule::parse(get_field<std::string>(config, "schedule", e.schedule.str()));
    } catch (const std::invalid_argument &ex) {
        config_error(ex.what());
    }
    e.ps = get_field(config, "ps", e.ps);
    e.rounds = get_field<size_t>(config, "rounds", 0);
    e.shots = get_field<uint64_t>(config, "shots", e.shots);
    e.seed = get_field<uint64_t>(config, "seed", e.seed);
    e.threads = get_field<unsigned>(config, "threads", e.threads);
    const std::string layout = get_field<std::string>(config, "layout", "interleaved");
    if (layout == "interleaved") {
        e.layout = RoundLayout::Interleaved;
    } else if (layout == "staggered") {
        e.layout = RoundLayout::Staggered;
    } else {
        config_error("layout must be 'interleaved' or 'staggered'");
    }
    spec.output = get_field<std::string>(config, "output", "");
    spec.format = get_field<std::string>(config, "format", "csv");
    if (spec.format != "csv" && spec.format != "json") config_error("format must be 'csv' or 'json'");
    if (threshold_keys) {
        spec.input = get_field<std::string>(config, "input", "");
        if (config.contains("replay")) {
            const json &r = config.at("replay");
            require_keys(r, {"p_star", "amplitude"}, "replay");
            spec.replay = true;
            spec.replay_p_star = get_field<double>(r, "p_star", 0.0);
            spec.replay_amplitude = get_field<double>(r, "amplitude", spec.replay_amplitude);
            if (!(spec.replay_p_star > 0 && spec.replay_amplitude > 0)) config_error("replay needs p_star > 0 and amplitude > 0");
        }
        if (spec.replay && !spec.input.empty()) config_error("'replay' and 'input' are exclusive");
    }
    if (auto p = e.problem(); !p.empty()) config_error(p);
    return spec;
}

std::vector<std::string> provenance(const std::string &command, const json &config, uint64_t seed) {
    return {"surfacelab: " SURFACELAB_VERSION,
            "command: " + command,
            "config_sha256: " + config_hash(config),
            "seed: " + std::to_string(seed),
            "timestamp: " + utc_timestamp()};
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"surfacelab: surface-code fault-tolerance lab"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Progress on stderr");

    std::string config_path, output;
    auto *sim = app.add_subcommand("simulate", "Run a memory experiment from a JSON config and write a result table");
    sim->add_option("config", config_path, "Config file")->required();
    sim->add_option("-o,--output", output, "Output path, overrides the config ('-' for stdout)");

    auto *thr = app.add_subcommand("threshold", "Estimate the threshold crossing from a JSON config");
    thr->add_option("config", config_path, "Config file")->required();
    thr->add_option("-o,--output", output, "Output path, overrides the config ('-' for stdout)");

    bool as_json = false;
    int sabotage = -1;
    std::string script_path;
    auto *braid = app.add_subcommand("braid-verify", "Braid one hole pair around another and check the CNOT map");
    braid->add_flag("--json", as_json, "Machine-readable output");
    braid->add_option("--sabotage", sabotage, "Drop this deformation step before verifying")->expected(0, 1)->default_str("16");
    braid->add_option("--script", script_path, "Also write the deformation script here");

    int distance = 3;
    bool toric = false;
    double radius = -1;
    auto *plan = app.add_subcommand("plan", "Generate the physical floorplan for a lattice");
    plan->add_option("-d,--distance", distance, "Planar distance or toric size")->capture_default_str();
    plan->add_flag("--toric", toric, "Periodic lattice");
    plan->add_option("--radius", radius, "Conflict radius in tile pitches (default: nearest neighbour)");
    plan->add_option("-o,--output", output, "Output path ('-' for stdout)");

    BudgetArgs b;
    auto *budget = app.add_subcommand("budget", "Failure budget C[x] p^(x+1) over x");
    budget->add_option("--family", b.family, "concatenated, polynomial or table")->capture_default_str();
    budget->add_option("--c", b.c, "Family constant")->capture_default_str();
    budget->add_option("--table", b.table, "C[0], C[1], ... for the table family")->delimiter(',');
    budget->add_option("-p", b.p, "Physical error rate")->capture_default_str();
    budget->add_option("-T", b.T, "Time steps")->capture_default_str();
    budget->add_option("-N", b.N, "Logical qubits")->capture_default_str();
    budget->add_option("--eps", b.eps, "Target algorithm failure");
    budget->add_option("--x-max", b.x_max, "Largest x in the table")->capture_default_str();
    budget->add_flag("--json", b.json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kConfigError;
    }
    try {
        if (*sim) return cmd_simulate(config_path, output, verbose, out, err);
        if (*thr) return cmd_threshold(config_path, output, verbose, out, err);
        if (*braid) {
            if (braid->count("--sabotage") && sabotage < 0) sabotage = 16;
            return cmd_braid_verify(as_json, sabotage, script_path, out, err);
        }
        if (*plan) return cmd_plan(distance, toric, radius, output, out, err);
        if (*budget) return cmd_budget(b, out);
    } catch (const CliError &e) {
        err << e.what() << "\n";
        return e.code();
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
    return kOk;
}

}  // namespace surfacelab::cli
